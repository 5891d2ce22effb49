#ifndef ZETATAIL_DISCOVERY_HPP
#define ZETATAIL_DISCOVERY_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zetatail/formula_catalog.hpp"
#include "zetatail/telescope.hpp"

namespace zetatail {

using FloorSample = std::pair<long, Integer>;

/// (m, floor(1/S(M m + b, s))) for m in [m_from, m_to]; empty when m_to < m_from.
std::vector<FloorSample> sample_floors(long s, long M, long b, long m_from, long m_to, const FloorOracle& oracle);
std::vector<FloorSample> sample_floors(long s, long M, long b, long m_from, long m_to,
                                       const PrecisionPolicy& policy = {});

class NotPolynomialOnClass : public Error {
 public:
  using Error::Error;
};

/// Minimal-degree interpolant of the samples with integer coefficients.
/// Throws NotPolynomialOnClass if its coefficients are not integers or its
/// degree exceeds max_degree; InvalidArgument for fewer than two samples or
/// repeated m.
IntPolynomial fit_polynomial(const std::vector<FloorSample>& samples, std::optional<long> max_degree = std::nullopt);

struct DiscoveryConfig {
  long s = 5;
  long l_max = 4;
  /// Samples per class; the first s fit, the rest are held out. 0 means max(2s, s + 3).
  long m_samples = 0;
  long m_start = 20;
  PrecisionPolicy policy;
  /// Search every M in [1, l_max] instead of the multiples of s - 2.
  bool any_modulus = false;
  long spot_checks = 100;
  std::uint64_t seed = 0x5eed;
  SearchOptions certification;
  unsigned threads = 0;
  /// Replaces reciprocal_floor under `policy`, e.g. to put a cache in front.
  FloorOracle oracle;

  void validate() const;
  long samples() const { return m_samples > 0 ? m_samples : std::max(2 * s, s + 3); }
  long modulus_step() const { return (any_modulus || s == 2) ? 1 : s - 2; }
};

/// What happened at one modulus of the search.
struct ModulusAttempt {
  long modulus = 0;
  bool fitted = false;
  bool certified = false;
  /// Lowest failing residue and reason; empty when everything passed.
  std::optional<long> residue;
  std::string detail;
};

struct DiscoveredClass {
  ResidueClassFormula formula;
  Certificate certificate;
};

struct FailedClass {
  long residue = 0;
  IntPolynomial polynomial;
  CertificationFailure failure;
};

struct SpotCheck {
  long n = 0;
  Integer formula;
  Integer oracle;
};

struct DiscoveryResult {
  long s = 0;
  long modulus = 0;
  std::vector<DiscoveredClass> classes;
  std::vector<FailedClass> failures;
  std::vector<ModulusAttempt> attempts;
  /// Every n >= certified_from_n is covered by a certificate.
  long certified_from_n = 0;
  /// Smallest n0 with oracle agreement on [n0, certified_from_n).
  long verified_from_n = 0;
  long spot_checks_run = 0;
  std::vector<SpotCheck> spot_check_failures;

  bool complete() const { return failures.empty() && spot_check_failures.empty(); }
  /// The class formula for n, with m = (n - b)/M.
  Integer evaluate(long n) const;
};

class NoModulusFound : public Error {
 public:
  NoModulusFound(long s, std::vector<ModulusAttempt> attempts);
  const std::vector<ModulusAttempt>& attempts() const { return attempts_; }

 private:
  std::vector<ModulusAttempt> attempts_;
};

/// Tries M = l * step for l = 1..l_max. The first M on which every class fits
/// and certifies is returned with its certificates and spot checks. Moduli
/// whose fits certify only partly are recorded and the search goes on; if no
/// modulus certifies in full, the last partially certified one is returned
/// with its failures, and NoModulusFound is thrown when none even fitted.
DiscoveryResult discover(const DiscoveryConfig& config);

}  // namespace zetatail

#endif  // ZETATAIL_DISCOVERY_HPP
