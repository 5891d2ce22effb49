#ifndef ZETATAIL_SERIALIZE_HPP
#define ZETATAIL_SERIALIZE_HPP

// JSON forms of the library's results. Every number that can outgrow 64 bits
// is a decimal string; rationals are "p/q" or "p". Polynomial coefficients
// are listed lowest degree first. Field order is fixed.

#include <json.hpp>

#include "zetatail/discovery.hpp"
#include "zetatail/formula_catalog.hpp"
#include "zetatail/telescope.hpp"

namespace zetatail::json {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json integer(const Integer& v);
Json rational(const Rational& v);
Json polynomial(const IntPolynomial& p);
Json polynomial(const RatPolynomial& p);

Integer parse_integer(const Json& j);
Rational parse_rational(const Json& j);
IntPolynomial parse_polynomial(const Json& j);

Json closed_form(const ClosedForm& form);
Json catalog();
Json residue_classes(long s, long M, const std::vector<ResidueClassFormula>& classes);

Json sign_certificate(const SignCertificate& cert);
Json candidate(const TelescopeCandidate& cand);
Json certificate(const Certificate& cert);
Json failure(const CertificationFailure& failure);
Json class_certifications(long s, long M, const std::vector<ClassCertification>& results);

Json verification(const VerificationReport& report);
Json discovery(const DiscoveryResult& result);
Json modulus_attempt(const ModulusAttempt& attempt);

SignCertificate parse_sign_certificate(const Json& j);
TelescopeCandidate parse_candidate(const Json& j);
Certificate parse_certificate(const Json& j);

}  // namespace zetatail::json

#endif  // ZETATAIL_SERIALIZE_HPP
