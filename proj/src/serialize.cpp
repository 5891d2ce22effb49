#include "zetatail/serialize.hpp"

#include <algorithm>

namespace zetatail::json {

namespace {

Json optional_long(const std::optional<long>& v) { return v ? Json(*v) : Json(nullptr); }

Json affine(const AffineTerm& t) {
  return Json{{"m", rational(t.m_coefficient)}, {"r", rational(t.residue_coefficient)}, {"constant", rational(t.constant)}};
}

Json schema(const char* name) { return std::string("zetatail.") + name + "/" + std::to_string(kSchemaVersion); }

}  // namespace

Json integer(const Integer& v) { return v.get_str(10); }

Json rational(const Rational& v) { return to_string(v); }

Json polynomial(const IntPolynomial& p) {
  Json out = Json::array();
  for (const auto& c : p.coefficients()) out.push_back(integer(c));
  return out;
}

Json polynomial(const RatPolynomial& p) {
  Json out = Json::array();
  for (const auto& c : p.coefficients()) out.push_back(rational(c));
  return out;
}

Integer parse_integer(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  return zetatail::parse_integer(j.get<std::string>());
}

Rational parse_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return zetatail::parse_rational(j.get<std::string>());
}

IntPolynomial parse_polynomial(const Json& j) {
  std::vector<Integer> coefficients;
  for (const auto& c : j) coefficients.push_back(parse_integer(c));
  std::reverse(coefficients.begin(), coefficients.end());
  return IntPolynomial::from_descending(std::move(coefficients));
}

Json closed_form(const ClosedForm& form) {
  Json branches = Json::array();
  for (const auto& b : form.branches) {
    Json floors = Json::array();
    for (const auto& f : b.floors) floors.push_back(Json{{"coefficient", rational(f.coefficient)}, {"argument", affine(f.argument)}});
    branches.push_back(Json{{"label", b.label},
                            {"selector_residue", b.selector_residue},
                            {"step", b.step},
                            {"offset", b.offset},
                            {"polynomial", polynomial(b.polynomial)},
                            {"residue_coefficient", rational(b.residue_coefficient)},
                            {"floors", floors}});
  }
  Json constants = Json::array();
  for (const auto& c : form.class_constants) constants.push_back(rational(c));
  return Json{{"s", form.s},
              {"variable", form.variable},
              {"selector_modulus", form.selector_modulus},
              {"residue_modulus", form.residue_modulus},
              {"n_min", optional_long(form.n_min)},
              {"natural_period", form.natural_period},
              {"branches", branches},
              {"class_constants", constants}};
}

Json catalog() {
  Json forms = Json::array();
  for (long s : catalog_exponents()) forms.push_back(closed_form(zetatail::closed_form(s)));
  return Json{{"schema", schema("catalog")}, {"forms", forms}};
}

Json residue_classes(long s, long M, const std::vector<ResidueClassFormula>& classes) {
  Json list = Json::array();
  for (const auto& c : classes) {
    list.push_back(Json{{"residue", c.residue},
                        {"polynomial", polynomial(c.polynomial)},
                        {"k0", c.k0},
                        {"c", rational(c.c)},
                        {"first_n", c.first_n()}});
  }
  return Json{{"schema", schema("expansion")}, {"s", s}, {"modulus", M}, {"classes", list}};
}

Json sign_certificate(const SignCertificate& cert) {
  return Json{{"method", to_string(cert.method)},
              {"x0", integer(cert.x0)},
              {"want", to_string(cert.want)},
              {"degree", cert.degree},
              {"shifted_digest", cert.shifted_digest},
              {"wrong_sign_coefficients", cert.wrong_sign_coefficients}};
}

Json candidate(const TelescopeCandidate& cand) {
  return Json{{"s", cand.s},         {"modulus", cand.modulus}, {"residue", cand.residue},
              {"p", polynomial(cand.p)}, {"c", rational(cand.c)},   {"k0", cand.k0}};
}

Json certificate(const Certificate& cert) {
  return Json{{"candidate", candidate(cert.candidate)},
              {"first_n", cert.candidate.first_n()},
              {"g_sign", sign_certificate(cert.g_sign)},
              {"h_sign", sign_certificate(cert.h_sign)},
              {"p_positivity", sign_certificate(cert.p_positivity)},
              {"pc_positivity", sign_certificate(cert.pc_positivity)}};
}

Json failure(const CertificationFailure& f) {
  return Json{{"stage", to_string(f.stage)},
              {"detail", f.detail},
              {"witness", f.witness ? rational(*f.witness) : Json(nullptr)},
              {"advised_k0", optional_long(f.advised_k0)}};
}

Json class_certifications(long s, long M, const std::vector<ClassCertification>& results) {
  Json certified = Json::array();
  Json failed = Json::array();
  for (const auto& r : results) {
    if (const auto* cert = std::get_if<Certificate>(&r.outcome)) {
      certified.push_back(certificate(*cert));
    } else {
      Json f = failure(std::get<CertificationFailure>(r.outcome));
      failed.push_back(Json{{"residue", r.residue}, {"failure", f}});
    }
  }
  return Json{{"schema", schema("certificates")}, {"s", s}, {"modulus", M}, {"certificates", certified}, {"failures", failed}};
}

Json verification(const VerificationReport& report) {
  Json mismatches = Json::array();
  for (const auto& m : report.mismatches) {
    mismatches.push_back(Json{{"n", m.n}, {"formula", integer(m.formula)}, {"oracle", integer(m.oracle)}});
  }
  return Json{{"schema", schema("verification")},
              {"s", report.s},
              {"from", report.n_from},
              {"to", report.n_to},
              {"mismatch_count", report.mismatches.size()},
              {"mismatches", mismatches},
              {"largest_verified_n", optional_long(report.largest_verified_n)},
              {"agreement_from", optional_long(report.agreement_from)}};
}

Json modulus_attempt(const ModulusAttempt& a) {
  return Json{{"modulus", a.modulus},
              {"fitted", a.fitted},
              {"certified", a.certified},
              {"residue", optional_long(a.residue)},
              {"detail", a.detail}};
}

Json discovery(const DiscoveryResult& r) {
  Json classes = Json::array();
  for (const auto& c : r.classes) classes.push_back(certificate(c.certificate));
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back(Json{{"residue", f.residue}, {"polynomial", polynomial(f.polynomial)}, {"failure", failure(f.failure)}});
  }
  Json attempts = Json::array();
  for (const auto& a : r.attempts) attempts.push_back(modulus_attempt(a));
  Json spot_failures = Json::array();
  for (const auto& c : r.spot_check_failures) {
    spot_failures.push_back(Json{{"n", c.n}, {"formula", integer(c.formula)}, {"oracle", integer(c.oracle)}});
  }
  return Json{{"schema", schema("discovery")},
              {"s", r.s},
              {"modulus", r.modulus},
              {"complete", r.complete()},
              {"certified_from_n", r.certified_from_n},
              {"verified_from_n", r.verified_from_n},
              {"spot_checks_run", r.spot_checks_run},
              {"spot_check_failures", spot_failures},
              {"attempts", attempts},
              {"classes", classes},
              {"failures", failures}};
}

SignCertificate parse_sign_certificate(const Json& j) {
  SignCertificate cert;
  const std::string method = j.at("method").get<std::string>();
  if (method == "shifted_coefficients") {
    cert.method = SignCertificate::Method::shifted_coefficients;
  } else if (method == "sturm_count") {
    cert.method = SignCertificate::Method::sturm_count;
  } else {
    throw InvalidArgument("unknown sign certificate method: " + method);
  }
  cert.x0 = parse_integer(j.at("x0"));
  const std::string want = j.at("want").get<std::string>();
  if (want != "positive" && want != "negative") throw InvalidArgument("unknown sign: " + want);
  cert.want = want == "positive" ? Sign::positive : Sign::negative;
  cert.degree = j.at("degree").get<long>();
  cert.shifted_digest = j.at("shifted_digest").get<std::string>();
  cert.wrong_sign_coefficients = j.at("wrong_sign_coefficients").get<long>();
  return cert;
}

TelescopeCandidate parse_candidate(const Json& j) {
  return TelescopeCandidate{j.at("s").get<long>(),        j.at("modulus").get<long>(),
                            j.at("residue").get<long>(),  parse_polynomial(j.at("p")),
                            parse_rational(j.at("c")),    j.at("k0").get<long>()};
}

Certificate parse_certificate(const Json& j) {
  return Certificate{parse_candidate(j.at("candidate")), parse_sign_certificate(j.at("g_sign")),
                     parse_sign_certificate(j.at("h_sign")), parse_sign_certificate(j.at("p_positivity")),
                     parse_sign_certificate(j.at("pc_positivity"))};
}

}  // namespace zetatail::json
