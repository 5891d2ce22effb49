#include "zetatail/discovery.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "zetatail/parallel.hpp"

namespace zetatail {

std::vector<FloorSample> sample_floors(long s, long M, long b, long m_from, long m_to, const FloorOracle& oracle) {
  if (M < 1 || b < 0 || b >= M) throw InvalidArgument("sample_floors: need 0 <= b < M");
  std::vector<FloorSample> out;
  for (long m = m_from; m <= m_to; ++m) {
    const long n = M * m + b;
    if (n < 1) throw InvalidArgument("sample_floors: n = M m + b must be >= 1");
    out.emplace_back(m, oracle(s, n));
  }
  return out;
}

std::vector<FloorSample> sample_floors(long s, long M, long b, long m_from, long m_to,
                                       const PrecisionPolicy& policy) {
  return sample_floors(s, M, b, m_from, m_to, direct_oracle(policy));
}

IntPolynomial fit_polynomial(const std::vector<FloorSample>& samples, std::optional<long> max_degree) {
  if (samples.size() < 2) throw InvalidArgument("fit_polynomial: need at least two samples");
  std::vector<std::pair<Integer, Integer>> points;
  for (const auto& [m, v] : samples) points.emplace_back(Integer(m), v);
  RatPolynomial fit = interpolate(points);
  std::optional<IntPolynomial> p = to_integer(fit);
  if (!p) throw NotPolynomialOnClass("interpolant has non-integral coefficients: " + to_string(fit, "m"));
  if (max_degree && p->degree() > *max_degree) {
    throw NotPolynomialOnClass("interpolant has degree " + std::to_string(p->degree()) + " > " +
                               std::to_string(*max_degree));
  }
  return *p;
}

void DiscoveryConfig::validate() const {
  if (s < 2) throw InvalidArgument("discover: s must be >= 2");
  if (l_max < 1) throw InvalidArgument("discover: l_max must be >= 1");
  if (samples() < s + 3) throw InvalidArgument("discover: need at least s + 3 samples per class");
  if (m_start < 1) throw InvalidArgument("discover: m_start must be >= 1");
  if (spot_checks < 0) throw InvalidArgument("discover: spot_checks must be >= 0");
}

Integer DiscoveryResult::evaluate(long n) const {
  if (modulus < 1) throw Error("discovery result has no modulus");
  const long b = ((n % modulus) + modulus) % modulus;
  const Integer m((n - b) / modulus);
  for (const auto& c : classes) {
    if (c.formula.residue == b) return c.formula.polynomial(m);
  }
  for (const auto& f : failures) {
    if (f.residue == b) return f.polynomial(m);
  }
  throw Error("discovery result has no formula for residue " + std::to_string(b));
}

NoModulusFound::NoModulusFound(long s, std::vector<ModulusAttempt> attempts)
    : Error("no modulus fitted every residue class for s = " + std::to_string(s) + " (" +
            std::to_string(attempts.size()) + " moduli tried)"),
      attempts_(std::move(attempts)) {}

namespace {

struct ClassFit {
  std::optional<IntPolynomial> polynomial;
  std::string detail;
};

ClassFit fit_class(const DiscoveryConfig& cfg, const FloorOracle& oracle, long M, long b) {
  const long first = cfg.m_start;
  const long last = cfg.m_start + cfg.samples() - 1;
  std::vector<FloorSample> samples = sample_floors(cfg.s, M, b, first, last, oracle);
  std::vector<FloorSample> head(samples.begin(), samples.begin() + cfg.s);
  IntPolynomial p;
  try {
    p = fit_polynomial(head, cfg.s - 1);
  } catch (const NotPolynomialOnClass& e) {
    return {std::nullopt, e.what()};
  }
  for (std::size_t i = static_cast<std::size_t>(cfg.s); i < samples.size(); ++i) {
    if (p(Integer(samples[i].first)) != samples[i].second) {
      return {std::nullopt, "held-out sample m = " + std::to_string(samples[i].first) + " disagrees"};
    }
  }
  return {std::move(p), {}};
}

// Runs fn over residues in chunks of the worker count and stops after the
// first chunk holding a failure, so the reported residue does not depend on
// scheduling.
template <typename Fn>
auto chunked(long M, unsigned threads, Fn fn, bool (*failed)(const decltype(fn(0L))&)) {
  using Result = decltype(fn(0L));
  std::vector<Result> out;
  const long chunk = static_cast<long>(resolve_threads(threads));
  for (long lo = 0; lo < M; lo += chunk) {
    const long hi = std::min(M, lo + chunk);
    auto part = parallel_map(static_cast<std::size_t>(hi - lo), threads,
                             [&](std::size_t i) { return fn(lo + static_cast<long>(i)); });
    bool stop = false;
    for (auto& r : part) {
      stop = stop || failed(r);
      out.push_back(std::move(r));
    }
    if (stop) break;
  }
  return out;
}

void finish(const DiscoveryConfig& cfg, const FloorOracle& oracle, DiscoveryResult& result) {
  const long M = result.modulus;
  long certified_from = 1;
  for (const auto& c : result.classes) certified_from = std::max(certified_from, c.formula.first_n());
  result.certified_from_n = certified_from;

  long verified_from = certified_from;
  while (verified_from > 1 && result.evaluate(verified_from - 1) == oracle(cfg.s, verified_from - 1)) {
    --verified_from;
  }
  result.verified_from_n = verified_from;

  std::mt19937_64 rng(cfg.seed ^ static_cast<std::uint64_t>(cfg.s * 1000003 + M));
  std::uniform_int_distribution<long> pick(certified_from, certified_from + std::max(2000L, 20 * M));
  std::vector<long> ns;
  for (long i = 0; i < cfg.spot_checks; ++i) ns.push_back(pick(rng));
  auto checks = parallel_map(ns.size(), cfg.threads, [&](std::size_t i) {
    return SpotCheck{ns[i], result.evaluate(ns[i]), oracle(cfg.s, ns[i])};
  });
  result.spot_checks_run = static_cast<long>(checks.size());
  for (auto& c : checks) {
    if (c.formula != c.oracle) result.spot_check_failures.push_back(std::move(c));
  }
}

}  // namespace

DiscoveryResult discover(const DiscoveryConfig& cfg) {
  cfg.validate();
  const FloorOracle oracle = cfg.oracle ? cfg.oracle : direct_oracle(cfg.policy);
  std::vector<ModulusAttempt> attempts;
  std::optional<DiscoveryResult> partial;

  for (long l = 1; l <= cfg.l_max; ++l) {
    const long M = l * cfg.modulus_step();
    ModulusAttempt attempt;
    attempt.modulus = M;

    auto fits = chunked(
        M, cfg.threads, [&](long b) { return fit_class(cfg, oracle, M, b); },
        +[](const ClassFit& f) { return !f.polynomial.has_value(); });
    auto bad = std::find_if(fits.begin(), fits.end(), [](const ClassFit& f) { return !f.polynomial; });
    if (bad != fits.end()) {
      attempt.residue = static_cast<long>(bad - fits.begin());
      attempt.detail = bad->detail;
      attempts.push_back(attempt);
      continue;
    }
    attempt.fitted = true;

    auto outcomes = parallel_map(static_cast<std::size_t>(M), cfg.threads, [&](std::size_t b) {
      return search_certificate(cfg.s, M, static_cast<long>(b), *fits[b].polynomial, 1, cfg.certification);
    });
    DiscoveryResult result;
    result.s = cfg.s;
    result.modulus = M;
    for (long b = 0; b < M; ++b) {
      auto& outcome = outcomes[static_cast<std::size_t>(b)];
      const IntPolynomial& p = *fits[static_cast<std::size_t>(b)].polynomial;
      if (auto* cert = std::get_if<Certificate>(&outcome)) {
        ResidueClassFormula f{cfg.s, M, b, p, cert->candidate.k0, cert->candidate.c};
        result.classes.push_back({std::move(f), std::move(*cert)});
      } else {
        auto& failure = std::get<CertificationFailure>(outcome);
        if (!attempt.residue) {
          attempt.residue = b;
          attempt.detail = to_string(failure.stage) + ": " + failure.detail;
        }
        result.failures.push_back({b, p, std::move(failure)});
      }
    }
    attempt.certified = result.failures.empty();
    attempts.push_back(attempt);
    if (attempt.certified) {
      result.attempts = std::move(attempts);
      finish(cfg, oracle, result);
      return result;
    }
    partial = std::move(result);
  }
  if (partial) {
    partial->attempts = std::move(attempts);
    return std::move(*partial);
  }
  throw NoModulusFound(cfg.s, std::move(attempts));
}

}  // namespace zetatail
