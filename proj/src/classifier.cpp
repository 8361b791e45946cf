#include "padic_beta/classifier.hpp"

#include <algorithm>
#include <stdexcept>

namespace padic_beta {

MinPoly::MinPoly(Prime p, std::vector<QRational> a)
    : p_(p), a_(std::move(a)) {
  if (a_.empty()) throw std::invalid_argument("minimal polynomial of degree 0");
  if (a_.back() == 0) {
    throw std::invalid_argument("a_n must be nonzero");
  }
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!in_ap(a_[i], p_)) {
      throw std::invalid_argument("a_" + std::to_string(i + 1) + " = " +
                                  to_string(a_[i]) +
                                  " has a denominator that is not a power of " +
                                  std::to_string(p_.value()));
    }
  }
}

Polynomial MinPoly::polynomial() const {
  const std::size_t n = a_.size();
  std::vector<QRational> c(n + 1);
  c[n] = 1;
  for (std::size_t i = 1; i <= n; ++i) c[n - i] = -a_[i - 1];
  return Polynomial(std::move(c));
}

ValuatedPolynomial MinPoly::valuated() const {
  return {p_, polynomial().coeffs()};
}

std::vector<QRational> MinPoly::negated_reversed() const {
  std::vector<QRational> r(a_.rbegin(), a_.rend());
  for (auto& x : r) x = -x;
  return r;
}

std::string to_string(PcClass c) {
  switch (c) {
    case PcClass::pc:
      return "PC";
    case PcClass::sc:
      return "SC";
    case PcClass::neither:
      return "neither";
  }
  return "?";
}

namespace {

constexpr unsigned long kTrialDivisionBound = 1000000;

// Prime factorisation of |n| by trial division; nullopt if a composite
// cofactor without small factors remains.
std::optional<std::vector<std::pair<Integer, unsigned>>> factor(Integer n) {
  n = abs(n);
  std::vector<std::pair<Integer, unsigned>> out;
  for (unsigned long d = 2; d <= kTrialDivisionBound && Integer(d) * d <= n;
       ++d) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
      ++e;
    }
    if (e > 0) out.emplace_back(Integer(d), e);
  }
  if (n > 1) {
    if (Integer(kTrialDivisionBound) * kTrialDivisionBound < n &&
        mpz_probab_prime_p(n.get_mpz_t(), 40) == 0) {
      return std::nullopt;
    }
    out.emplace_back(n, 1);
  }
  return out;
}

std::vector<Integer> divisors(
    const std::vector<std::pair<Integer, unsigned>>& f) {
  std::vector<Integer> out{1};
  for (const auto& [q, e] : f) {
    const std::size_t base = out.size();
    Integer pw = 1;
    for (unsigned i = 0; i < e; ++i) {
      pw *= q;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pw);
    }
  }
  return out;
}

// Searches for a rational root; returns false when the search could not be
// completed.
bool rational_root_search(const Polynomial& f, std::optional<QRational>& root) {
  Integer l = 1;
  for (const auto& c : f.coeffs()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  const QRational c0 = f.coeff(0) * l;
  const QRational cn = f.leading() * l;
  if (c0 == 0) {
    root = QRational(0);
    return true;
  }
  const auto fa = factor(c0.get_num());
  const auto fb = factor(cn.get_num());
  if (!fa || !fb) return false;
  for (const Integer& u : divisors(*fa)) {
    for (const Integer& v : divisors(*fb)) {
      for (int s : {1, -1}) {
        const QRational cand = make_rational(Integer(u * s), v);
        if (f(cand) == 0) {
          root = cand;
          return true;
        }
      }
    }
  }
  return true;
}

struct ValuationShape {
  bool dominant;  // ν(a_1) < 0 and ν(a_1) ≤ ν(a_j)
  std::optional<long> v1;
};

ValuationShape valuation_shape(const MinPoly& m) {
  const Valuation v1 = vp(m.a(1), m.prime());
  if (v1.is_infinite()) return {false, std::nullopt};
  bool ok = v1 < 0L;
  for (std::size_t j = 2; j <= m.degree(); ++j) {
    if (vp(m.a(j), m.prime()) < v1) ok = false;
  }
  return {ok, v1.value()};
}

// a_1 + a_2/α + … + a_n/α^{n−1}, exact.
QRational recurrence_step(const MinPoly& m, const QRational& alpha) {
  QRational next = m.a(1);
  QRational inv_pow = 1;
  const QRational inv = QRational(1) / alpha;
  for (std::size_t j = 2; j <= m.degree(); ++j) {
    inv_pow *= inv;
    next += m.a(j) * inv_pow;
  }
  return next;
}

}  // namespace

PcVerdict classify(const MinPoly& m) {
  const Polynomial f = m.polynomial();
  PcVerdict out{PcClass::neither, std::nullopt, Region::exterior, true,
                "attested", {}};

  if (m.degree() == 1) {
    out.irreducibility = "certified";
  } else {
    if (gcd(f, f.derivative()).degree() >= 1) {
      throw std::invalid_argument("reducible: repeated factor in " +
                                  f.to_string());
    }
    std::optional<QRational> root;
    const bool complete = rational_root_search(f, root);
    if (root) {
      throw std::invalid_argument("reducible: rational root " +
                                  to_string(*root) + " of " + f.to_string());
    }
    if (!complete) {
      out.notes.emplace_back(
          "rational root search skipped: coefficient too hard to factor");
    } else if (m.degree() <= 3) {
      out.irreducibility = "certified";
    }
  }

  const ValuationShape shape = valuation_shape(m);
  out.vp_beta = shape.v1;
  const StabilityVerdict sv = schur_cohn(m.negated_reversed());
  out.region = sv.region;
  out.certified = sv.certified;

  if (!shape.dominant) {
    out.notes.emplace_back(
        "valuation condition fails: need v(a_1) < 0 and v(a_1) <= v(a_j)");
    return out;
  }
  if (sv.region == Region::interior) {
    out.cls = PcClass::pc;
  } else if (sv.region == Region::boundary) {
    if (is_self_reciprocal(f)) {
      out.cls = PcClass::sc;
    } else {
      out.notes.emplace_back(
          "boundary polynomial is not self-reciprocal; not SC");
    }
  } else {
    out.notes.emplace_back("an archimedean root lies outside the unit circle");
  }

  if (out.cls != PcClass::neither) {
    const DominantRootReport rep = dominant_root_report(m.valuated());
    if (!rep.unique_negative_root || rep.valuation != shape.v1) {
      throw std::logic_error(
          "Newton polygon disagrees with the valuation conditions");
    }
  }
  return out;
}

std::vector<QRational> recurrence_iterates(const MinPoly& m,
                                           long work_precision,
                                           std::size_t steps) {
  const ValuationShape shape = valuation_shape(m);
  if (!shape.dominant) {
    throw std::invalid_argument(
        "recurrence needs v(a_1) < 0 and v(a_1) <= v(a_j)");
  }
  const Prime& p = m.prime();
  std::vector<QRational> out;
  QRational alpha = reduce_mod_power(m.a(1), p, work_precision);
  out.push_back(alpha);
  for (std::size_t k = 0; k < steps; ++k) {
    alpha = reduce_mod_power(recurrence_step(m, alpha), p, work_precision);
    out.push_back(alpha);
  }
  return out;
}

QRational dominant_root_truncation(const MinPoly& m, long precision) {
  const ValuationShape shape = valuation_shape(m);
  if (!shape.dominant) {
    throw std::invalid_argument(
        "dominant root needs v(a_1) < 0 and v(a_1) <= v(a_j)");
  }
  if (m.degree() == 1) return m.a(1);

  const Prime& p = m.prime();
  const long e = -*shape.v1;
  const long n = static_cast<long>(m.degree());
  const long work = std::max(precision, 1L) + e * n + 1;

  // Each step gains at least one digit, so the truncated orbit reaches its
  // fixed point after at most work + e steps.
  const std::size_t max_steps = static_cast<std::size_t>(4 * (work + e) + 16);
  QRational alpha = reduce_mod_power(m.a(1), p, work);
  for (std::size_t k = 0; k < max_steps; ++k) {
    QRational next = reduce_mod_power(recurrence_step(m, alpha), p, work);
    if (vp(next, p) != Valuation::finite(-e)) {
      throw std::logic_error("recurrence iterate left the valuation shell");
    }
    if (next == alpha) return reduce_mod_power(alpha, p, precision);
    alpha = std::move(next);
  }
  throw std::logic_error("dominant root recurrence did not stabilise");
}

QRational beta_digits(const MinPoly& m, long precision) {
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
  const PcVerdict v = classify(m);
  if (v.cls == PcClass::neither) {
    throw std::invalid_argument("base is neither PC nor SC");
  }
  return dominant_root_truncation(m, precision);
}

PcConstruction construct_pc(const std::vector<Integer>& lower, const Prime& p) {
  if (lower.empty()) throw std::invalid_argument("empty polynomial");
  const std::size_t n = lower.size();
  if (lower.front() == 0 || lower.back() == 0) {
    throw std::invalid_argument("a_0 and a_{n-1} must be nonzero");
  }
  const Valuation top = vp(QRational(lower.back()), p);
  for (const auto& c : lower) {
    if (vp(QRational(c), p) < top) {
      throw std::invalid_argument(
          "valuation precondition violated: v(a_{n-1}) must be minimal");
    }
  }
  constexpr unsigned long kMaxScale = 4096;
  for (unsigned long k = 0; k <= kMaxScale; ++k) {
    if (top.value() - static_cast<long>(k) >= 0) continue;
    const Integer pk = p.power(k);
    std::vector<QRational> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = make_rational(lower[i], pk);
    if (schur_cohn(r).region != Region::interior) continue;
    std::vector<QRational> a(n);
    for (std::size_t j = 1; j <= n; ++j) a[j - 1] = -r[n - j];
    return {k, MinPoly(p, std::move(a))};
  }
  throw std::logic_error("construct_pc: no admissible scaling found");
}

}  // namespace padic_beta
