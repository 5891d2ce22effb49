#ifndef ZETATAIL_TELESCOPE_HPP
#define ZETATAIL_TELESCOPE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zetatail/formula_catalog.hpp"
#include "zetatail/numeric.hpp"
#include "zetatail/polynomial.hpp"
#include "zetatail/sign_certificate.hpp"
#include "zetatail/tail_enclosure.hpp"

namespace zetatail {

/// Claim: floor(1/S(M m + b, s)) = p(m) for every m >= k0, with
/// p(m) < 1/S < p(m) + c as the witnessing sandwich.
struct TelescopeCandidate {
  long s = 2;
  long modulus = 1;
  long residue = 0;
  IntPolynomial p;
  Rational c;
  long k0 = 1;

  /// Throws InvalidArgument unless s >= 2, 0 <= b < M, deg p = s - 1,
  /// 0 < c < 1 and k0 >= 1.
  void validate() const;
  long first_n() const { return modulus * k0 + residue; }
};

TelescopeCandidate make_candidate(const ResidueClassFormula& formula);

/// block(x) - scale/current(x) + scale/next(x), where block(x) is
/// sum_{j<M} (Mx+b+j)^-s and next(x) = current(x+1). For g, current = p and
/// scale = 1; for h with c = C/D, current = D p + C and scale = D.
struct ComparisonFunction {
  RationalFunctionPair value;
  IntPolynomial current;
  IntPolynomial next;
  Integer scale;
  /// Mx + b + j for j in [0, M); each appears to the power s in the denominator.
  std::vector<IntPolynomial> linear_factors;
  long power = 1;

  /// Direct evaluation of the defining sum of fractions, for cross-checks.
  Rational defining_expression(const Rational& x) const;
};

ComparisonFunction build_g_numerator(const TelescopeCandidate& cand);
ComparisonFunction build_h_numerator(const TelescopeCandidate& cand);

/// All four sub-certificates hold on [k0, +inf), so the floor formula holds
/// for every m >= k0. Only certify() creates these.
struct Certificate {
  TelescopeCandidate candidate;
  /// Signs are certified on the primitive part of each numerator.
  SignCertificate g_sign;
  SignCertificate h_sign;
  SignCertificate p_positivity;
  SignCertificate pc_positivity;
};

struct CertificationFailure {
  enum class Stage { candidate, p_positivity, pc_positivity, denominator, g_numerator, h_numerator };

  Stage stage = Stage::candidate;
  std::string detail;
  /// A point on the ray where the failing inequality is violated, when known.
  std::optional<Rational> witness;
  /// A larger k0 worth retrying with, when the failure suggests one.
  std::optional<long> advised_k0;
};

std::string to_string(CertificationFailure::Stage stage);

using CertificationOutcome = std::variant<Certificate, CertificationFailure>;

CertificationOutcome certify(const TelescopeCandidate& cand);

/// One sub-certificate of certify(): sign `want` for p on [k0, +inf). A zero
/// p fails (the inequalities are strict); a root at k0 advises k0 + 1.
std::variant<SignCertificate, CertificationFailure> certify_stage(CertificationFailure::Stage stage,
                                                                  const IntPolynomial& p, long k0, Sign want);

/// Re-verifies a certificate from its candidate alone: rebuilds the four
/// polynomials, compares shifted-coefficient digests and re-checks signs.
/// Returns nullopt when it holds, otherwise the first discrepancy.
std::optional<std::string> recheck(const Certificate& cert);

/// Result of certifying every residue class of one modulus, in residue order.
struct ClassCertification {
  long residue = 0;
  CertificationOutcome outcome;
};

/// One formula per residue class 0..M-1 (in any order); classes run in
/// parallel and come back sorted by residue. Throws InvalidArgument for an
/// empty list or a list that does not cover each class exactly once.
std::vector<ClassCertification> certify_all_classes(long s, long M, const std::vector<ResidueClassFormula>& formulas,
                                                    unsigned threads = 0);

/// The comparison constants tried in order when searching for a certificate.
std::vector<Rational> default_c_ladder();

struct SearchOptions {
  std::vector<Rational> c_ladder = default_c_ladder();
  /// k0 is never raised above max(k0_limit, starting k0).
  long k0_limit = 64;
};

/// Certifies the class (s, M, b, p), raising k0 from `k0_start` past boundary
/// roots and witnesses for each c on the ladder. The certificate with the
/// smallest k0 wins, earlier ladder entries breaking ties. Returns the last
/// failure when nothing on the ladder certifies.
CertificationOutcome search_certificate(long s, long M, long b, const IntPolynomial& p, long k0_start,
                                        const SearchOptions& options = {});

/// Numerical sandwich 1/(p(m)+c) < S(Mm+b, s) < 1/p(m) checked with a tail
/// enclosure; false when the enclosure is not inside the open interval.
bool sandwich_holds(const TelescopeCandidate& cand, long m, const PrecisionPolicy& policy = {});

}  // namespace zetatail

#endif  // ZETATAIL_TELESCOPE_HPP
