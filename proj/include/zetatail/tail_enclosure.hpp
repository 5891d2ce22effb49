#ifndef ZETATAIL_TAIL_ENCLOSURE_HPP
#define ZETATAIL_TAIL_ENCLOSURE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "zetatail/numeric.hpp"

namespace zetatail {

/// The tail S(n, s) = sum_{k >= n} k^-s.
struct TailQuery {
  long s = 2;
  long n = 1;

  /// Throws InvalidArgument unless s >= 2 and n >= 1.
  void validate() const;
};

/// Exact rational bounds lo < value < hi (strict for infinite tails).
struct Enclosure {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  /// True when this enclosure lies inside `outer`.
  bool within(const Enclosure& outer) const { return outer.lo <= lo && hi <= outer.hi; }
};

/// Intersection of two enclosures of the same quantity.
Enclosure intersect(const Enclosure& a, const Enclosure& b);

/// Controls how hard reciprocal_floor refines before giving up.
///
/// The tail is split at `initial_cut` (0 means max(2n, 64)); the cut doubles
/// until `max_cut` (0 means 4 * initial cut), after which the Euler-Maclaurin
/// order grows from `em_order` to `em_order_cap`. Past the cap, the order keeps
/// growing only while the reciprocal is not yet pinned within
/// `integer_proximity_guard` of an integer.
struct PrecisionPolicy {
  long initial_cut = 0;
  int em_order = 4;
  long max_cut = 0;
  int em_order_cap = 8;
  Rational integer_proximity_guard = pow10(-40);

  long resolved_initial_cut(long n) const;
  long resolved_max_cut(long n) const;

  /// Stable textual form, used for cache keys.
  std::string canonical() const;
  /// Hex digest of canonical().
  std::string digest() const;

  /// Overrides from a "key=value,key=value" string; keys are initial_cut,
  /// em_order, max_cut, em_order_cap, guard.
  static PrecisionPolicy parse(std::string_view spec, PrecisionPolicy base);
  static PrecisionPolicy parse(std::string_view spec);
  /// Defaults, overridden by the ZETATAIL_POLICY environment variable when set.
  static PrecisionPolicy from_environment();
};

/// The floor could not be pinned: 1/S sits too close to an integer.
class AmbiguousFloor : public Error {
 public:
  AmbiguousFloor(TailQuery query, Enclosure reciprocal, bool within_guard);

  const TailQuery& query() const { return query_; }
  /// Enclosure of 1/S at the last refinement level.
  const Enclosure& reciprocal() const { return reciprocal_; }
  /// True when 1/S was proven within the proximity guard of an integer.
  bool within_guard() const { return within_guard_; }

 private:
  TailQuery query_;
  Enclosure reciprocal_;
  bool within_guard_;
};

/// Exact sum_{k=n}^{N-1} k^-s in lowest terms; 0 for n == N.
Rational partial_sum_exact(long n, long N, long s);

/// B_2, B_4, ..., B_{2 count}, exact. Results are cached process-wide.
std::vector<Rational> bernoulli_numbers(std::size_t count);

/// Enclosure of sum_{k >= N} k^-s.
///
/// J == 0 gives the integral sandwich [N^{1-s}/(s-1), N^{1-s}/(s-1) + N^-s].
/// J >= 1 uses the enveloping Euler-Maclaurin expansion: the truncations with J
/// and J+1 correction terms bracket the tail, returned in sorted order.
Enclosure em_tail_bounds(long N, long s, int J);

/// partial_sum_exact(n, N, s) + em_tail_bounds(N, s, J) at the policy's first level.
Enclosure tail_enclosure(const TailQuery& q, const PrecisionPolicy& policy = {});

/// One level of the refinement schedule.
struct RefinementStep {
  long cut = 0;
  int em_order = 0;
  /// Intersected with every earlier level, so consecutive steps are nested.
  Enclosure enclosure;
};

struct FloorComputation {
  Integer floor;
  std::vector<RefinementStep> steps;
};

/// floor(1 / S(n, s)) with the full refinement trace.
FloorComputation reciprocal_floor_traced(const TailQuery& q, const PrecisionPolicy& policy = {});

/// floor(1 / S(n, s)). Throws AmbiguousFloor rather than guessing.
Integer reciprocal_floor(const TailQuery& q, const PrecisionPolicy& policy = {});

}  // namespace zetatail

#endif  // ZETATAIL_TAIL_ENCLOSURE_HPP
