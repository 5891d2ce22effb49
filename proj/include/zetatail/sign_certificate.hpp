#ifndef ZETATAIL_SIGN_CERTIFICATE_HPP
#define ZETATAIL_SIGN_CERTIFICATE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "zetatail/numeric.hpp"
#include "zetatail/polynomial.hpp"
#include "zetatail/sturm.hpp"

namespace zetatail {

enum class Sign { negative = -1, positive = 1 };

inline int to_int(Sign s) { return static_cast<int>(s); }
std::string to_string(Sign s);

/// Evidence that a polynomial keeps one strict sign on the ray [x0, +inf).
struct SignCertificate {
  enum class Method {
    /// Every coefficient of p(t + x0) has the wanted sign or is zero.
    shifted_coefficients,
    /// p(x0) has the wanted sign and Sturm counts no root on [x0, +inf).
    sturm_count,
  };

  Method method = Method::shifted_coefficients;
  Integer x0;
  Sign want = Sign::positive;
  long degree = 0;
  /// FNV-1a digest of the decimal coefficients of p(t + x0), lowest first.
  std::string shifted_digest;
  /// Shifted coefficients of the wrong sign (only nonzero for sturm_count).
  long wrong_sign_coefficients = 0;
};

std::string to_string(SignCertificate::Method m);

/// Why a ray sign could not be certified.
struct SignFailure {
  /// A point x >= x0 where sign(p(x)) differs from the wanted strict sign, when one was found.
  std::optional<Rational> witness;
  std::string detail;
};

using SignOutcome = std::variant<SignCertificate, SignFailure>;

/// Raised when p(x0) == 0: the ray sign is undetermined at its left end and the
/// caller must move x0.
class BoundaryRootError : public Error {
 public:
  explicit BoundaryRootError(Integer x0);
  const Integer& x0() const { return x0_; }

 private:
  Integer x0_;
};

/// Fast path only; nullopt when some shifted coefficient has the wrong sign.
std::optional<SignCertificate> try_shifted_coefficients(const IntPolynomial& p, const Integer& x0, Sign want);

/// Sturm route only; nullopt when p(x0) has the wrong sign or a root lies on the ray.
std::optional<SignCertificate> try_sturm_count(const IntPolynomial& p, const Integer& x0, Sign want,
                                               const SturmChain* chain = nullptr);

/// Certifies sign(p(x)) == want for every real x >= x0: shifted-coefficient
/// test first, Sturm count as the complete fallback. On failure a witness of
/// the wrong sign is searched for. A precomputed chain for p may be passed to
/// avoid rebuilding it across several x0.
SignOutcome certify_sign_on_ray(const IntPolynomial& p, const Integer& x0, Sign want,
                                const SturmChain* chain = nullptr);

/// Hex FNV-1a 64 digest over the decimal coefficients, comma separated.
std::string coefficient_digest(const IntPolynomial& p);

}  // namespace zetatail

#endif  // ZETATAIL_SIGN_CERTIFICATE_HPP
