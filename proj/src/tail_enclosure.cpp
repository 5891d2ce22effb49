#include "zetatail/tail_enclosure.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <utility>

namespace zetatail {

namespace {

// Past em_order_cap the order keeps growing only while the guard is not met;
// this bounds that phase.
constexpr int kHardEmOrderLimit = 96;

struct Fraction {
  Integer num;
  Integer den;
};

// sum_{k=a}^{b-1} k^-s as an unreduced fraction, by binary splitting.
Fraction split_sum(long a, long b, unsigned long s) {
  if (b - a == 1) {
    Fraction f{Integer(1), Integer()};
    mpz_ui_pow_ui(f.den.get_mpz_t(), static_cast<unsigned long>(a), s);
    return f;
  }
  const long mid = a + (b - a) / 2;
  Fraction left = split_sum(a, mid, s);
  Fraction right = split_sum(mid, b, s);
  Fraction out;
  out.num = left.num * right.den;
  mpz_addmul(out.num.get_mpz_t(), right.num.get_mpz_t(), left.den.get_mpz_t());
  out.den = left.den * right.den;
  return out;
}

Rational reciprocal(const Rational& v) {
  Rational r(v.get_den(), v.get_num());
  r.canonicalize();
  return r;
}

}  // namespace

void TailQuery::validate() const {
  if (s < 2) throw InvalidArgument("tail exponent s must be >= 2, got " + std::to_string(s));
  if (n < 1) throw InvalidArgument("tail start n must be >= 1, got " + std::to_string(n));
}

Enclosure intersect(const Enclosure& a, const Enclosure& b) {
  Enclosure e{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (e.hi < e.lo) throw Error("disjoint enclosures of the same tail: an enclosure is unsound");
  return e;
}

long PrecisionPolicy::resolved_initial_cut(long n) const {
  long cut = initial_cut > 0 ? initial_cut : std::max(2 * n, 64L);
  return std::max(cut, n);
}

long PrecisionPolicy::resolved_max_cut(long n) const {
  long first = resolved_initial_cut(n);
  return std::max(max_cut > 0 ? max_cut : 4 * first, first);
}

std::string PrecisionPolicy::canonical() const {
  std::ostringstream os;
  os << "initial_cut=" << initial_cut << ",em_order=" << em_order << ",max_cut=" << max_cut
     << ",em_order_cap=" << em_order_cap << ",guard=" << to_string(integer_proximity_guard);
  return os.str();
}

std::string PrecisionPolicy::digest() const { return fnv1a_hex(canonical()); }

PrecisionPolicy PrecisionPolicy::parse(std::string_view spec, PrecisionPolicy base) {
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string_view::npos) comma = spec.size();
    std::string_view item = spec.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw InvalidArgument("policy item without '=': " + std::string(item));
    std::string_view key = item.substr(0, eq);
    std::string_view value = item.substr(eq + 1);
    auto as_long = [&](std::string_view v) {
      Integer i = parse_integer(v);
      if (!i.fits_slong_p() || i < 0) throw InvalidArgument("policy value out of range: " + std::string(item));
      return i.get_si();
    };
    if (key == "initial_cut") {
      base.initial_cut = as_long(value);
    } else if (key == "em_order") {
      base.em_order = static_cast<int>(as_long(value));
    } else if (key == "max_cut") {
      base.max_cut = as_long(value);
    } else if (key == "em_order_cap") {
      base.em_order_cap = static_cast<int>(as_long(value));
    } else if (key == "guard") {
      base.integer_proximity_guard = parse_rational(value);
      if (base.integer_proximity_guard <= 0) throw InvalidArgument("policy guard must be positive");
    } else {
      throw InvalidArgument("unknown policy key: " + std::string(key));
    }
  }
  if (base.em_order_cap < base.em_order) base.em_order_cap = base.em_order;
  return base;
}

PrecisionPolicy PrecisionPolicy::parse(std::string_view spec) { return parse(spec, PrecisionPolicy{}); }

PrecisionPolicy PrecisionPolicy::from_environment() {
  const char* env = std::getenv("ZETATAIL_POLICY");
  if (env == nullptr) return {};
  return parse(env);
}

AmbiguousFloor::AmbiguousFloor(TailQuery query, Enclosure reciprocal, bool within_guard)
    : Error("floor of 1/S(n=" + std::to_string(query.n) + ", s=" + std::to_string(query.s) +
            ") is ambiguous: reciprocal in [" + approx_string(reciprocal.lo, 30) + ", " +
            approx_string(reciprocal.hi, 30) + "]" +
            (within_guard ? " within the integer-proximity guard" : " at the refinement cap")),
      query_(query),
      reciprocal_(std::move(reciprocal)),
      within_guard_(within_guard) {}

Rational partial_sum_exact(long n, long N, long s) {
  if (s < 2) throw InvalidArgument("partial_sum_exact: s must be >= 2");
  if (n < 1) throw InvalidArgument("partial_sum_exact: n must be >= 1");
  if (n > N) throw InvalidArgument("partial_sum_exact: empty range needs n <= N");
  if (n == N) return Rational(0);
  Fraction f = split_sum(n, N, static_cast<unsigned long>(s));
  Rational r(f.num, f.den);
  r.canonicalize();
  return r;
}

std::vector<Rational> bernoulli_numbers(std::size_t count) {
  static std::mutex mutex;
  // all[i] = B_i for i = 0, 1, 2, ...
  static std::vector<Rational> all{Rational(1)};
  std::lock_guard lock(mutex);
  const std::size_t need = 2 * count + 1;
  while (all.size() < need) {
    // sum_{k=0}^{m} C(m+1, k) B_k = 0.
    const std::size_t m = all.size();
    Rational acc(0);
    Integer binom(1);
    for (std::size_t k = 0; k < m; ++k) {
      acc += Rational(binom) * all[k];
      binom = binom * static_cast<unsigned long>(m + 1 - k) / static_cast<unsigned long>(k + 1);
    }
    Rational b = -acc / Rational(static_cast<long>(m + 1));
    b.canonicalize();
    all.push_back(b);
  }
  std::vector<Rational> even;
  even.reserve(count);
  for (std::size_t j = 1; j <= count; ++j) even.push_back(all[2 * j]);
  return even;
}

Enclosure em_tail_bounds(long N, long s, int J) {
  if (N < 2) throw InvalidArgument("em_tail_bounds: N must be >= 2");
  if (s < 2) throw InvalidArgument("em_tail_bounds: s must be >= 2");
  if (J < 0) throw InvalidArgument("em_tail_bounds: J must be >= 0");

  const Integer big_n(N);
  const unsigned long us = static_cast<unsigned long>(s);
  // N^{1-s} / (s-1)
  Rational integral(Integer(1), ipow(big_n, us - 1) * (s - 1));
  integral.canonicalize();
  Rational first_term(Integer(1), ipow(big_n, us));
  first_term.canonicalize();
  if (J == 0) return Enclosure{integral, integral + first_term};

  std::vector<Rational> bern = bernoulli_numbers(static_cast<std::size_t>(J) + 1);
  Rational total = integral + first_term / 2;
  Rational previous;
  Integer rising(s);  // s (s+1) ... (s+2j-2)
  Integer factorial(2);
  Integer n_power = ipow(big_n, us + 1);  // N^{s+2j-1}
  for (int j = 1; j <= J + 1; ++j) {
    if (j > 1) {
      rising *= (s + 2 * j - 3);
      rising *= (s + 2 * j - 2);
      factorial *= (2 * j - 1);
      factorial *= (2 * j);
      n_power *= big_n;
      n_power *= big_n;
    }
    previous = total;
    Rational term = bern[static_cast<std::size_t>(j - 1)] * Rational(rising) / Rational(factorial * n_power);
    total += term;
  }
  // previous = T_J, total = T_{J+1}
  if (previous <= total) return Enclosure{previous, total};
  return Enclosure{total, previous};
}

Enclosure tail_enclosure(const TailQuery& q, const PrecisionPolicy& policy) {
  q.validate();
  const long cut = policy.resolved_initial_cut(q.n);
  Rational head = partial_sum_exact(q.n, cut, q.s);
  Enclosure tail = em_tail_bounds(cut, q.s, policy.em_order);
  return Enclosure{head + tail.lo, head + tail.hi};
}

FloorComputation reciprocal_floor_traced(const TailQuery& q, const PrecisionPolicy& policy) {
  q.validate();
  long cut = policy.resolved_initial_cut(q.n);
  const long max_cut = policy.resolved_max_cut(q.n);
  int order = policy.em_order;

  FloorComputation out;
  Rational head = partial_sum_exact(q.n, cut, q.s);
  Enclosure current;
  {
    Enclosure tail = em_tail_bounds(cut, q.s, order);
    current = Enclosure{head + tail.lo, head + tail.hi};
  }
  out.steps.push_back({cut, order, current});

  for (;;) {
    // lo < S < hi, so 1/S lies in the open interval (1/hi, 1/lo).
    Rational recip_lo = reciprocal(current.hi);
    Rational recip_hi = reciprocal(current.lo);
    Integer candidate = zetatail::floor(recip_lo);
    if (recip_hi <= Rational(candidate + 1)) {
      out.floor = candidate;
      return out;
    }
    const bool capped = 2 * cut > max_cut && order >= policy.em_order_cap;
    if (capped && (recip_hi - recip_lo < policy.integer_proximity_guard)) {
      throw AmbiguousFloor(q, Enclosure{recip_lo, recip_hi}, true);
    }
    if (2 * cut <= max_cut) {
      head += partial_sum_exact(cut, 2 * cut, q.s);
      cut *= 2;
    } else if (order < kHardEmOrderLimit) {
      ++order;
    } else {
      throw AmbiguousFloor(q, Enclosure{recip_lo, recip_hi}, false);
    }
    Enclosure tail = em_tail_bounds(cut, q.s, order);
    current = intersect(current, Enclosure{head + tail.lo, head + tail.hi});
    out.steps.push_back({cut, order, current});
  }
}

Integer reciprocal_floor(const TailQuery& q, const PrecisionPolicy& policy) {
  return reciprocal_floor_traced(q, policy).floor;
}

}  // namespace zetatail
