#include "zetatail/telescope.hpp"

#include <algorithm>
#include <set>

#include "zetatail/parallel.hpp"

namespace zetatail {

namespace {

IntPolynomial product(const std::vector<IntPolynomial>& factors, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return factors[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return product(factors, lo, mid) * product(factors, mid, hi);
}

// Pi = prod_j (Mx+b+j)^s and B = sum_j Pi / (Mx+b+j)^s, so block = B / Pi.
struct Block {
  std::vector<IntPolynomial> factors;
  IntPolynomial pi;
  IntPolynomial b;
};

Block build_block(const TelescopeCandidate& cand) {
  Block out;
  for (long j = 0; j < cand.modulus; ++j) {
    out.factors.push_back(IntPolynomial::linear(Integer(cand.modulus), Integer(cand.residue + j)));
  }
  const IntPolynomial q = product(out.factors, 0, out.factors.size());
  const unsigned e = static_cast<unsigned>(cand.s);
  out.pi = power(q, e);
  for (long j = 0; j < cand.modulus; ++j) {
    out.b = out.b + power(divide_exact_linear(q, Integer(cand.modulus), Integer(cand.residue + j)), e);
  }
  return out;
}

ComparisonFunction assemble(const TelescopeCandidate& cand, const Block& block, IntPolynomial current,
                            const Integer& scale) {
  IntPolynomial next = poly_shift(current, Integer(1));
  IntPolynomial numerator =
      block.b * current * next + IntPolynomial::constant(scale) * block.pi * (current - next);
  IntPolynomial denominator = block.pi * current * next;
  if (numerator.degree() >= denominator.degree()) {
    throw Error("comparison function does not vanish at infinity");
  }
  return ComparisonFunction{RationalFunctionPair(std::move(numerator), std::move(denominator)),
                            std::move(current),
                            std::move(next),
                            scale,
                            block.factors,
                            cand.s};
}

ComparisonFunction build_g(const TelescopeCandidate& cand, const Block& block) {
  return assemble(cand, block, cand.p, Integer(1));
}

ComparisonFunction build_h(const TelescopeCandidate& cand, const Block& block) {
  const Integer C = cand.c.get_num();
  const Integer D = cand.c.get_den();
  return assemble(cand, block, IntPolynomial::constant(D) * cand.p + IntPolynomial::constant(C), D);
}

// Sign certification of one polynomial at several ray starts; the Sturm chain
// is built only if the shifted-coefficient test ever fails.
class RaySigner {
 public:
  RaySigner(IntPolynomial p, Sign want) : p_(std::move(p)), want_(want) {}

  const IntPolynomial& polynomial() const { return p_; }

  SignOutcome certify(long x0) {
    const Integer start(x0);
    if (p_(start) * to_int(want_) < 0) {
      // Walk to the last integer of the wrong-sign run so callers can jump past it.
      Integer x = start;
      for (int i = 0; i < 4096 && p_(Integer(x + 1)) * to_int(want_) < 0; ++i) x += 1;
      return SignFailure{Rational(x), "wrong sign at the ray start"};
    }
    if (auto cert = try_shifted_coefficients(p_, start, want_)) return *cert;
    if (!chain_) chain_.emplace(p_);
    return certify_sign_on_ray(p_, start, want_, &*chain_);
  }

 private:
  IntPolynomial p_;
  Sign want_;
  std::optional<SturmChain> chain_;
};

struct Prepared {
  RaySigner p_sign;
  RaySigner pc_sign;
  RaySigner g_sign;
  RaySigner h_sign;
};

std::optional<long> advise_past(const Rational& witness, long k0) {
  const Integer next = zetatail::floor(witness) + 1;
  if (!next.fits_slong_p()) return std::nullopt;
  return std::max(next.get_si(), k0 + 1);
}

std::variant<SignCertificate, CertificationFailure> sign_stage(CertificationFailure::Stage stage, RaySigner& signer,
                                                               long k0) {
  if (signer.polynomial().is_zero()) {
    return CertificationFailure{stage, "identically zero, strict inequality fails", std::nullopt, std::nullopt};
  }
  SignOutcome outcome;
  try {
    outcome = signer.certify(k0);
  } catch (const BoundaryRootError&) {
    return CertificationFailure{stage, "vanishes at k0", Rational(k0), k0 + 1};
  }
  if (auto* failure = std::get_if<SignFailure>(&outcome)) {
    CertificationFailure out{stage, failure->detail, failure->witness, std::nullopt};
    if (failure->witness) out.advised_k0 = advise_past(*failure->witness, k0);
    return out;
  }
  return std::get<SignCertificate>(outcome);
}

CertificationOutcome run(const TelescopeCandidate& cand, Prepared& prep) {
  using Stage = CertificationFailure::Stage;
  if (cand.modulus * cand.k0 + cand.residue < 1) {
    return CertificationFailure{Stage::denominator, "linear factor Mx+b vanishes on the ray", std::nullopt,
                                std::nullopt};
  }
  SignCertificate certs[4];
  struct Step {
    RaySigner* signer;
    Stage stage;
  };
  const Step steps[4] = {{&prep.p_sign, Stage::p_positivity},
                         {&prep.pc_sign, Stage::pc_positivity},
                         {&prep.g_sign, Stage::g_numerator},
                         {&prep.h_sign, Stage::h_numerator}};
  for (int i = 0; i < 4; ++i) {
    auto outcome = sign_stage(steps[i].stage, *steps[i].signer, cand.k0);
    if (auto* failure = std::get_if<CertificationFailure>(&outcome)) return *failure;
    certs[i] = std::get<SignCertificate>(outcome);
  }
  return Certificate{cand, certs[2], certs[3], certs[0], certs[1]};
}

Prepared prepare(const TelescopeCandidate& cand, const Block& block) {
  ComparisonFunction g = build_g(cand, block);
  ComparisonFunction h = build_h(cand, block);
  return Prepared{RaySigner(cand.p, Sign::positive), RaySigner(h.current, Sign::positive),
                  RaySigner(primitive_part(g.value.numerator), Sign::negative),
                  RaySigner(primitive_part(h.value.numerator), Sign::positive)};
}

}  // namespace

void TelescopeCandidate::validate() const {
  if (s < 2) throw InvalidArgument("candidate: s must be >= 2");
  if (modulus < 1) throw InvalidArgument("candidate: modulus must be >= 1");
  if (residue < 0 || residue >= modulus) throw InvalidArgument("candidate: residue must lie in [0, M)");
  if (p.degree() != s - 1) throw InvalidArgument("candidate: deg p must be s - 1");
  if (c <= 0 || c >= 1) throw InvalidArgument("candidate: c must lie strictly between 0 and 1");
  if (k0 < 1) throw InvalidArgument("candidate: k0 must be >= 1");
}

TelescopeCandidate make_candidate(const ResidueClassFormula& f) {
  return TelescopeCandidate{f.s, f.modulus, f.residue, f.polynomial, f.c, f.k0};
}

Rational ComparisonFunction::defining_expression(const Rational& x) const {
  Rational block(0);
  for (const auto& f : linear_factors) {
    Rational v = eval_rational(f, x);
    if (v == 0) throw Error("block term has a pole");
    block += 1 / ipow(v, power);
  }
  const Rational a = eval_rational(current, x);
  const Rational b = eval_rational(next, x);
  if (a == 0 || b == 0) throw Error("comparison term has a pole");
  Rational out = block - Rational(scale) / a + Rational(scale) / b;
  out.canonicalize();
  return out;
}

std::variant<SignCertificate, CertificationFailure> certify_stage(CertificationFailure::Stage stage,
                                                                  const IntPolynomial& p, long k0, Sign want) {
  RaySigner signer(p, want);
  return sign_stage(stage, signer, k0);
}

ComparisonFunction build_g_numerator(const TelescopeCandidate& cand) {
  cand.validate();
  return build_g(cand, build_block(cand));
}

ComparisonFunction build_h_numerator(const TelescopeCandidate& cand) {
  cand.validate();
  return build_h(cand, build_block(cand));
}

std::string to_string(CertificationFailure::Stage stage) {
  switch (stage) {
    case CertificationFailure::Stage::candidate: return "candidate";
    case CertificationFailure::Stage::p_positivity: return "p_positivity";
    case CertificationFailure::Stage::pc_positivity: return "pc_positivity";
    case CertificationFailure::Stage::denominator: return "denominator";
    case CertificationFailure::Stage::g_numerator: return "g_numerator";
    case CertificationFailure::Stage::h_numerator: return "h_numerator";
  }
  return "unknown";
}

CertificationOutcome certify(const TelescopeCandidate& cand) {
  try {
    cand.validate();
  } catch (const InvalidArgument& e) {
    return CertificationFailure{CertificationFailure::Stage::candidate, e.what(), std::nullopt, std::nullopt};
  }
  Prepared prep = prepare(cand, build_block(cand));
  return run(cand, prep);
}

std::optional<std::string> recheck(const Certificate& cert) {
  const TelescopeCandidate& cand = cert.candidate;
  try {
    cand.validate();
  } catch (const InvalidArgument& e) {
    return std::string(e.what());
  }
  const Block block = build_block(cand);
  const ComparisonFunction g = build_g(cand, block);
  const ComparisonFunction h = build_h(cand, block);
  struct Item {
    const char* name;
    const SignCertificate& cert;
    IntPolynomial p;
    Sign want;
  };
  const Item items[] = {{"p_positivity", cert.p_positivity, cand.p, Sign::positive},
                        {"pc_positivity", cert.pc_positivity, h.current, Sign::positive},
                        {"g_sign", cert.g_sign, primitive_part(g.value.numerator), Sign::negative},
                        {"h_sign", cert.h_sign, primitive_part(h.value.numerator), Sign::positive}};
  const Integer x0(cand.k0);
  for (const Item& it : items) {
    const std::string name(it.name);
    if (it.cert.x0 != x0 || it.cert.want != it.want || it.cert.degree != it.p.degree()) {
      return name + ": ray, sign or degree differs from the candidate";
    }
    if (it.p.is_zero()) return name + ": polynomial is identically zero";
    const IntPolynomial shifted = poly_shift(it.p, x0);
    if (coefficient_digest(shifted) != it.cert.shifted_digest) return name + ": shifted digest mismatch";
    if (it.cert.method == SignCertificate::Method::shifted_coefficients) {
      if (sgn(shifted[0]) != to_int(it.want)) return name + ": wrong sign at x0";
      for (const auto& c : shifted.coefficients()) {
        if (sgn(c) == -to_int(it.want)) return name + ": shifted coefficient of the wrong sign";
      }
    } else if (!try_sturm_count(it.p, x0, it.want)) {
      return name + ": Sturm count does not confirm the sign";
    }
  }
  return std::nullopt;
}

std::vector<ClassCertification> certify_all_classes(long s, long M, const std::vector<ResidueClassFormula>& formulas,
                                                    unsigned threads) {
  if (formulas.empty()) throw InvalidArgument("certify_all_classes: no formulas given");
  if (static_cast<long>(formulas.size()) != M) {
    throw InvalidArgument("certify_all_classes: expected one formula per residue class");
  }
  std::vector<const ResidueClassFormula*> by_residue(static_cast<std::size_t>(M), nullptr);
  for (const auto& f : formulas) {
    if (f.s != s || f.modulus != M) throw InvalidArgument("certify_all_classes: formula for a different (s, M)");
    if (f.residue < 0 || f.residue >= M) throw InvalidArgument("certify_all_classes: residue out of range");
    auto& slot = by_residue[static_cast<std::size_t>(f.residue)];
    if (slot != nullptr) throw InvalidArgument("certify_all_classes: residue given twice");
    slot = &f;
  }
  return parallel_map(by_residue.size(), threads, [&](std::size_t b) {
    return ClassCertification{static_cast<long>(b), certify(make_candidate(*by_residue[b]))};
  });
}

std::vector<Rational> default_c_ladder() {
  return {Rational(9, 10), Rational(99, 100), Rational(1) - pow10(-18)};
}

CertificationOutcome search_certificate(long s, long M, long b, const IntPolynomial& p, long k0_start,
                                        const SearchOptions& options) {
  using Stage = CertificationFailure::Stage;
  if (options.c_ladder.empty()) throw InvalidArgument("search_certificate: empty c ladder");
  const long limit = std::max(options.k0_limit, k0_start);
  TelescopeCandidate cand{s, M, b, p, options.c_ladder.front(), std::max(1L, k0_start)};
  try {
    cand.validate();
  } catch (const InvalidArgument& e) {
    return CertificationFailure{Stage::candidate, e.what(), std::nullopt, std::nullopt};
  }
  const Block block = build_block(cand);
  std::optional<RaySigner> g_sign;
  std::optional<RaySigner> p_sign;
  std::optional<Certificate> best;
  CertificationFailure last;
  for (const Rational& c : options.c_ladder) {
    cand.c = c;
    cand.k0 = std::max(1L, k0_start);
    try {
      cand.validate();
    } catch (const InvalidArgument& e) {
      return CertificationFailure{Stage::candidate, e.what(), std::nullopt, std::nullopt};
    }
    const long ceiling = best ? best->candidate.k0 - 1 : limit;
    ComparisonFunction h = build_h(cand, block);
    if (!g_sign) {
      g_sign.emplace(primitive_part(build_g(cand, block).value.numerator), Sign::negative);
      p_sign.emplace(cand.p, Sign::positive);
    }
    Prepared prep{std::move(*p_sign), RaySigner(h.current, Sign::positive), std::move(*g_sign),
                  RaySigner(primitive_part(h.value.numerator), Sign::positive)};
    bool escalate = false;
    while (cand.k0 <= ceiling) {
      CertificationOutcome outcome = run(cand, prep);
      if (auto* cert = std::get_if<Certificate>(&outcome)) {
        best = std::move(*cert);
        break;
      }
      last = std::get<CertificationFailure>(outcome);
      escalate = last.stage == Stage::h_numerator || last.stage == Stage::pc_positivity;
      if (!last.advised_k0 || *last.advised_k0 <= cand.k0) break;
      cand.k0 = *last.advised_k0;
    }
    g_sign.emplace(std::move(prep.g_sign));
    p_sign.emplace(std::move(prep.p_sign));
    // A larger c only loosens h; nothing beats a certificate at the starting k0.
    if (best && best->candidate.k0 == std::max(1L, k0_start)) break;
    if (!best && !escalate) break;
  }
  if (best) return *best;
  return last;
}

bool sandwich_holds(const TelescopeCandidate& cand, long m, const PrecisionPolicy& policy) {
  const Rational pm(cand.p(Integer(m)));
  if (pm <= 0) return false;
  const Enclosure tail = tail_enclosure(TailQuery{cand.s, cand.modulus * m + cand.residue}, policy);
  return Rational(1) / (pm + cand.c) < tail.lo && tail.hi < Rational(1) / pm;
}

}  // namespace zetatail
