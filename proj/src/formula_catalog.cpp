#include "zetatail/formula_catalog.hpp"

#include <map>

#include "zetatail/parallel.hpp"

namespace zetatail {

namespace {

Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

RatPolynomial rat_descending(std::vector<Rational> coefficients) {
  return RatPolynomial::from_descending(std::move(coefficients));
}

long floor_div(long a, long b) {
  long d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}

long mod(long a, long b) { return a - b * floor_div(a, b); }

ClosedForm make_s2() {
  ClosedForm f;
  f.s = 2;
  f.n_min = 1;
  f.natural_period = 1;
  f.variable = "n";
  f.branches.push_back({"all n", 0, 1, 0, rat_descending({q(1), q(-1)}), q(0), {}});
  f.class_constants = {q(9, 10)};
  return f;
}

ClosedForm make_s3() {
  ClosedForm f;
  f.s = 3;
  f.n_min = 1;
  f.natural_period = 1;
  f.variable = "n";
  f.branches.push_back({"all n", 0, 1, 0, rat_descending({q(2), q(-2), q(0)}), q(0), {}});
  f.class_constants = {q(9, 10)};
  return f;
}

ClosedForm make_s4() {
  ClosedForm f;
  f.s = 4;
  f.selector_modulus = 2;
  f.natural_period = 4;
  f.variable = "m";
  // n = 2m: 24m^3 - 18m^2 + [3(5m-1)/2]
  f.branches.push_back({"n = 2m", 0, 2, 0, rat_descending({q(24), q(-18), q(0), q(0)}), q(0),
                        {FloorTerm{q(1), AffineTerm{q(15, 2), q(0), q(-3, 2)}}}});
  // n = 2m - 1: 24m^3 - 54m^2 + [3(58m-17)/4]
  f.branches.push_back({"n = 2m - 1", 1, 2, 1, rat_descending({q(24), q(-54), q(0), q(0)}), q(0),
                        {FloorTerm{q(1), AffineTerm{q(87, 2), q(0), q(-51, 4)}}}});
  f.class_constants = {q(9, 10)};
  return f;
}

ClosedForm make_s5() {
  ClosedForm f;
  f.s = 5;
  f.selector_modulus = 3;
  f.n_min = 4;
  f.natural_period = 3;
  f.variable = "m";
  f.branches.push_back({"n = 3m", 0, 3, 0, rat_descending({q(324), q(-216), q(84), q(-16), q(-1)}), q(0), {}});
  f.branches.push_back({"n = 3m + 1", 1, 3, -1, rat_descending({q(324), q(216), q(84), q(16), q(-1)}), q(0), {}});
  f.branches.push_back({"n = 3m + 2", 2, 3, -2, rat_descending({q(324), q(648), q(516), q(192), q(26)}), q(0), {}});
  f.class_constants = {q(9, 10), q(99, 100), q(9, 10)};
  return f;
}

ClosedForm make_s6() {
  ClosedForm f;
  f.s = 6;
  f.selector_modulus = 2;
  f.residue_modulus = 48;
  f.n_min = 829;
  f.natural_period = 48;
  f.variable = "n";
  RatPolynomial main = rat_descending({q(5), q(-25, 2), q(75, 4), q(-125, 8), q(185, 48), q(0)});
  // even: - 5 r/48 - [(35 - 5 r)/48]
  f.branches.push_back({"n even", 0, 1, 0, main, q(-5, 48), {FloorTerm{q(-1), AffineTerm{q(0), q(-5, 48), q(35, 48)}}}});
  // odd: - (5 r + 18)/48 - [(17 - 5 r)/48]
  ClosedFormBranch odd{"n odd", 1, 1, 0, main + RatPolynomial::constant(q(-18, 48)), q(-5, 48),
                       {FloorTerm{q(-1), AffineTerm{q(0), q(-5, 48), q(17, 48)}}}};
  f.branches.push_back(odd);
  f.class_constants = {Rational(1) - pow10(-18)};
  return f;
}

const std::map<long, ClosedForm>& catalog() {
  static const std::map<long, ClosedForm> forms = [] {
    std::map<long, ClosedForm> m;
    for (ClosedForm f : {make_s2(), make_s3(), make_s4(), make_s5(), make_s6()}) m.emplace(f.s, std::move(f));
    return m;
  }();
  return forms;
}

}  // namespace

const ClosedFormBranch& ClosedForm::branch_for(long n) const {
  const long r = mod(n, selector_modulus);
  for (const auto& b : branches) {
    if (b.selector_residue == r) return b;
  }
  throw Error("closed form for s = " + std::to_string(s) + " has no branch for n = " + std::to_string(n));
}

Integer ClosedForm::evaluate(long n) const {
  const ClosedFormBranch& b = branch_for(n);
  if ((n + b.offset) % b.step != 0) throw Error("branch selector inconsistent with its substitution");
  const Rational m(b.m_of(n));
  const Rational r(residue_modulus > 0 ? mod(n, residue_modulus) : 0);
  Rational value = b.polynomial(m) + b.residue_coefficient * r;
  for (const auto& term : b.floors) value += term.coefficient * Rational(zetatail::floor(term.argument(m, r)));
  value.canonicalize();
  if (value.get_den() != 1) {
    throw Error("closed form for s = " + std::to_string(s) + " is not integral at n = " + std::to_string(n));
  }
  return value.get_num();
}

Rational ClosedForm::constant_for_class(long b) const {
  return class_constants[static_cast<std::size_t>(mod(b, static_cast<long>(class_constants.size())))];
}

const ClosedForm& closed_form(long s) {
  const auto& forms = catalog();
  auto it = forms.find(s);
  if (it == forms.end()) throw InvalidArgument("no published closed form for s = " + std::to_string(s));
  return it->second;
}

std::vector<long> catalog_exponents() {
  std::vector<long> out;
  for (const auto& [s, form] : catalog()) out.push_back(s);
  return out;
}

Integer eval_closed_form(long s, long n) {
  if (n < 1) throw InvalidArgument("eval_closed_form: n must be >= 1");
  return closed_form(s).evaluate(n);
}

PeriodMismatch::PeriodMismatch(long s, long modulus, long residue, const std::string& why)
    : Error("closed form for s = " + std::to_string(s) + " is not a polynomial on n = " + std::to_string(modulus) +
            "m + " + std::to_string(residue) + ": " + why),
      residue_(residue) {}

std::vector<ResidueClassFormula> expand_to_residue_classes(long s, long M) {
  const ClosedForm& form = closed_form(s);
  if (M < 1) throw InvalidArgument("modulus must be positive");
  std::vector<ResidueClassFormula> out;
  out.reserve(static_cast<std::size_t>(M));
  for (long b = 0; b < M; ++b) {
    std::vector<std::pair<Integer, Integer>> fit;
    for (long m = 1; m <= s; ++m) fit.emplace_back(Integer(m), form.evaluate(M * m + b));
    std::optional<IntPolynomial> p = to_integer(interpolate(fit));
    if (!p) throw PeriodMismatch(s, M, b, "interpolant has non-integral coefficients");
    for (long m = s + 1; m <= 2 * s; ++m) {
      if ((*p)(Integer(m)) != form.evaluate(M * m + b)) {
        throw PeriodMismatch(s, M, b, "interpolant disagrees at m = " + std::to_string(m));
      }
    }
    ResidueClassFormula cls;
    cls.s = s;
    cls.modulus = M;
    cls.residue = b;
    cls.polynomial = std::move(*p);
    cls.k0 = 1;
    if (form.n_min) cls.k0 = std::max(1L, floor_div(*form.n_min - b + M - 1, M));
    cls.c = form.constant_for_class(b);
    out.push_back(std::move(cls));
  }
  return out;
}

std::vector<ResidueClassFormula> refine_modulus(const std::vector<ResidueClassFormula>& classes, long factor) {
  if (factor < 1) throw InvalidArgument("refinement factor must be positive");
  if (classes.empty()) return {};
  const long M = classes.front().modulus;
  std::vector<ResidueClassFormula> out(static_cast<std::size_t>(M * factor));
  for (const auto& cls : classes) {
    for (long t = 0; t < factor; ++t) {
      ResidueClassFormula fine = cls;
      fine.modulus = M * factor;
      fine.residue = cls.residue + t * M;
      fine.polynomial = poly_compose_affine(cls.polynomial, Integer(factor), Integer(t));
      fine.k0 = std::max(1L, floor_div(cls.k0 - t + factor - 1, factor));
      out[static_cast<std::size_t>(fine.residue)] = std::move(fine);
    }
  }
  return out;
}

FloorOracle direct_oracle(PrecisionPolicy policy) {
  return [policy = std::move(policy)](long s, long n) { return reciprocal_floor(TailQuery{s, n}, policy); };
}

VerificationReport verify_range(long s, long n_from, long n_to, const FloorOracle& oracle, unsigned threads) {
  const ClosedForm& form = closed_form(s);
  if (n_from < 1 || n_to < n_from) throw InvalidArgument("verify_range: need 1 <= from <= to");
  VerificationReport report;
  report.s = s;
  report.n_from = n_from;
  report.n_to = n_to;

  struct Row {
    Integer formula;
    Integer oracle;
  };
  const std::size_t count = static_cast<std::size_t>(n_to - n_from + 1);
  std::vector<Row> rows = parallel_map(count, threads, [&](std::size_t i) {
    const long n = n_from + static_cast<long>(i);
    return Row{form.evaluate(n), oracle(s, n)};
  });

  for (std::size_t i = 0; i < count; ++i) {
    const long n = n_from + static_cast<long>(i);
    if (rows[i].formula == rows[i].oracle) {
      report.largest_verified_n = n;
    } else {
      report.mismatches.push_back({n, rows[i].formula, rows[i].oracle});
    }
  }
  const long last_bad = report.mismatches.empty() ? n_from - 1 : report.mismatches.back().n;
  if (last_bad < n_to) report.agreement_from = last_bad + 1;
  return report;
}

VerificationReport verify_range(long s, long n_from, long n_to, const PrecisionPolicy& policy, unsigned threads) {
  return verify_range(s, n_from, n_to, direct_oracle(policy), threads);
}

}  // namespace zetatail
