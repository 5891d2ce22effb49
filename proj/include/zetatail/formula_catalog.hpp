#ifndef ZETATAIL_FORMULA_CATALOG_HPP
#define ZETATAIL_FORMULA_CATALOG_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zetatail/numeric.hpp"
#include "zetatail/polynomial.hpp"
#include "zetatail/tail_enclosure.hpp"

namespace zetatail {

/// a*m + b*r + c, where m is the branch variable and r = n mod residue_modulus.
struct AffineTerm {
  Rational m_coefficient;
  Rational residue_coefficient;
  Rational constant;

  Rational operator()(const Rational& m, const Rational& r) const {
    return m_coefficient * m + residue_coefficient * r + constant;
  }
};

/// coefficient * floor(argument)
struct FloorTerm {
  Rational coefficient;
  AffineTerm argument;
};

/// One case of a closed form: n = step*m - offset for n = selector_residue
/// (mod the form's selector modulus), value = polynomial(m) +
/// residue_coefficient * r + sum of floor terms.
struct ClosedFormBranch {
  std::string label;
  long selector_residue = 0;
  long step = 1;
  long offset = 0;
  RatPolynomial polynomial;
  Rational residue_coefficient;
  std::vector<FloorTerm> floors;

  /// The branch variable m for a given n; n must belong to this branch.
  long m_of(long n) const { return (n + offset) / step; }
};

/// A published closed form for floor(1/S(n, s)), kept as structured data so
/// the residue-class expansion can reason about its period.
struct ClosedForm {
  long s = 0;
  /// Branch chosen by n mod selector_modulus.
  long selector_modulus = 1;
  /// Modulus of the residue variable r inside the branches (0: unused).
  long residue_modulus = 0;
  /// Published validity threshold; nullopt when the source does not state one.
  std::optional<long> n_min;
  /// Smallest modulus on whose classes the form is a polynomial in m.
  long natural_period = 1;
  /// Variable name the published display uses ("n" or "m").
  std::string variable = "m";
  std::vector<ClosedFormBranch> branches;
  /// Comparison constant c used when certifying class b (indexed b mod natural_period).
  std::vector<Rational> class_constants;

  const ClosedFormBranch& branch_for(long n) const;
  /// Exact value at n >= 1. Throws if the value is not an integer.
  Integer evaluate(long n) const;
  Rational constant_for_class(long b) const;
};

/// The catalog entry for s in {2, 3, 4, 5, 6}; throws InvalidArgument otherwise.
const ClosedForm& closed_form(long s);
std::vector<long> catalog_exponents();

/// eval_closed_form(s, n): the published formula, evaluated exactly.
Integer eval_closed_form(long s, long n);

/// f(M m + b) = p(m) for m >= k0, with certifying constant c.
struct ResidueClassFormula {
  long s = 0;
  long modulus = 1;
  long residue = 0;
  IntPolynomial polynomial;
  long k0 = 1;
  Rational c;

  /// First n this class formula claims.
  long first_n() const { return modulus * k0 + residue; }
};

/// The closed form is not polynomial on some residue class of the requested modulus.
class PeriodMismatch : public Error {
 public:
  PeriodMismatch(long s, long modulus, long residue, const std::string& why);
  long residue() const { return residue_; }

 private:
  long residue_;
};

/// Expands the closed form for s onto the residue classes mod M by exact
/// interpolation at s points and verification at s further points.
std::vector<ResidueClassFormula> expand_to_residue_classes(long s, long M);

/// p_b(m) for modulus factor*M: class b + t*M of the finer modulus gets
/// p_b(factor*m + t).
std::vector<ResidueClassFormula> refine_modulus(const std::vector<ResidueClassFormula>& classes, long factor);

/// floor(1/S(n, s)) provider; lets callers put a cache in front of the oracle.
using FloorOracle = std::function<Integer(long s, long n)>;

/// Direct oracle: reciprocal_floor under `policy`.
FloorOracle direct_oracle(PrecisionPolicy policy);

struct RangeMismatch {
  long n = 0;
  Integer formula;
  Integer oracle;
};

struct VerificationReport {
  long s = 0;
  long n_from = 0;
  long n_to = 0;
  std::vector<RangeMismatch> mismatches;
  /// Largest n in the range where formula and oracle agree.
  std::optional<long> largest_verified_n;
  /// Smallest n0 such that every n in [n0, n_to] agrees.
  std::optional<long> agreement_from;

  bool clean() const { return mismatches.empty(); }
};

/// Compares eval_closed_form with the oracle for every n in [n_from, n_to].
/// AmbiguousFloor propagates, carrying the offending n.
VerificationReport verify_range(long s, long n_from, long n_to, const FloorOracle& oracle, unsigned threads = 0);
VerificationReport verify_range(long s, long n_from, long n_to, const PrecisionPolicy& policy = {},
                                unsigned threads = 0);

}  // namespace zetatail

#endif  // ZETATAIL_FORMULA_CATALOG_HPP
