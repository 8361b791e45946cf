#include "padic_beta/beta.hpp"

#include <algorithm>
#include <stdexcept>

namespace padic_beta {

// ---------------------------------------------------------------- context --

std::shared_ptr<const BetaContext> BetaContext::create(const MinPoly& m) {
  const PcVerdict v = classify(m);
  if (v.cls == PcClass::neither) {
    throw std::invalid_argument("base is neither PC nor SC");
  }
  return std::shared_ptr<const BetaContext>(
      new BetaContext(m, v.cls, -*v.vp_beta));
}

BetaContext::BetaContext(MinPoly m, PcClass cls, long e)
    : m_(std::move(m)),
      cls_(cls),
      e_(e),
      digit_den_(m_.prime().power(static_cast<unsigned long>(e))) {}

std::vector<QRational> BetaContext::digit_set() const {
  std::vector<QRational> out;
  for (Integer j = 0; j < digit_den_; ++j) {
    out.push_back(make_rational(j, digit_den_));
  }
  return out;
}

QRational BetaContext::beta_truncation(long precision) const {
  long key = 16;
  while (key < precision) key *= 2;
  {
    std::lock_guard lock(cache_mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  // Computed outside the lock; concurrent fills store the same value.
  QRational value = dominant_root_truncation(m_, key);
  std::lock_guard lock(cache_mu_);
  return cache_.emplace(key, std::move(value)).first->second;
}

// ---------------------------------------------------------------- element --

BetaElement BetaElement::zero(ContextPtr ctx) {
  const std::size_t n = ctx->degree();
  return {std::move(ctx), std::vector<QRational>(n, QRational(0))};
}

BetaElement BetaElement::scalar(ContextPtr ctx, const QRational& q) {
  BetaElement z = zero(std::move(ctx));
  z.coords[0] = q;
  return z;
}

BetaElement BetaElement::from_coords(ContextPtr ctx, std::vector<QRational> c) {
  if (c.size() != ctx->degree()) {
    throw std::invalid_argument("element needs " +
                                std::to_string(ctx->degree()) +
                                " coordinates, got " + std::to_string(c.size()));
  }
  return {std::move(ctx), std::move(c)};
}

BetaElement BetaElement::beta_power(ContextPtr ctx, long k) {
  BetaElement z = scalar(std::move(ctx), QRational(1));
  for (long i = 0; i < k; ++i) z = mul_by_beta(z);
  for (long i = 0; i > k; --i) z = div_by_beta(z);
  return z;
}

bool BetaElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(),
                     [](const QRational& c) { return c == 0; });
}

std::string BetaElement::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ",";
    out += padic_beta::to_string(coords[i]);
  }
  return out + ")";
}

BetaElement BetaElement::operator+(const BetaElement& o) const {
  BetaElement r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
  return r;
}

BetaElement BetaElement::operator-(const BetaElement& o) const {
  BetaElement r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
  return r;
}

BetaElement BetaElement::operator*(const QRational& s) const {
  BetaElement r = *this;
  for (auto& c : r.coords) c *= s;
  return r;
}

BetaElement BetaElement::operator*(const BetaElement& o) const {
  BetaElement acc = zero(ctx);
  BetaElement term = *this;
  for (std::size_t i = 0; i < o.coords.size(); ++i) {
    if (o.coords[i] != 0) acc = acc + term * o.coords[i];
    if (i + 1 < o.coords.size()) term = mul_by_beta(term);
  }
  return acc;
}

BetaElement mul_by_beta(const BetaElement& z) {
  const MinPoly& m = z.ctx->minpoly();
  const std::size_t n = m.degree();
  const QRational top = z.coords[n - 1];
  BetaElement r = BetaElement::zero(z.ctx);
  r.coords[0] = top * m.a(n);
  for (std::size_t j = 1; j < n; ++j) {
    r.coords[j] = z.coords[j - 1] + top * m.a(n - j);
  }
  return r;
}

BetaElement div_by_beta(const BetaElement& z) {
  const MinPoly& m = z.ctx->minpoly();
  const std::size_t n = m.degree();
  BetaElement r = BetaElement::zero(z.ctx);
  const QRational top = z.coords[0] / m.a(n);
  r.coords[n - 1] = top;
  for (std::size_t j = 1; j < n; ++j) {
    r.coords[j - 1] = z.coords[j] - top * m.a(n - j);
  }
  return r;
}

// ------------------------------------------------------------- valuations --

QRational evaluate(const BetaElement& z, long precision) {
  const QRational b = z.ctx->beta_truncation(precision);
  QRational acc = 0;
  for (auto it = z.coords.rbegin(); it != z.coords.rend(); ++it) {
    acc = acc * b + *it;
  }
  return acc;
}

long frac_precision(const BetaElement& z) {
  // ν(c_i(β^i − β̂^i)) ≥ ν(c_i) + M − (i−1)e must be ≥ 1 for every i ≥ 1.
  const Prime& p = z.ctx->prime();
  const long e = z.ctx->e();
  long need = 1;
  for (std::size_t i = 1; i < z.coords.size(); ++i) {
    if (z.coords[i] == 0) continue;
    const long v = vp(z.coords[i], p).value();
    need = std::max(need, 1 + (static_cast<long>(i) - 1) * e - v);
  }
  return need;
}

QRational frac_p_elem(const BetaElement& z) {
  return frac_p_elem(z, frac_precision(z));
}

QRational frac_p_elem(const BetaElement& z, long precision) {
  if (precision < frac_precision(z)) {
    throw std::invalid_argument("precision too low for an exact fractional part");
  }
  return padic_frac(evaluate(z, precision), z.ctx->prime());
}

Valuation elem_vp(const BetaElement& z) {
  if (z.is_zero()) return Valuation::infinity();
  const Prime& p = z.ctx->prime();
  const long e = z.ctx->e();

  // Error bound at precision M: min over nonzero c_i (i ≥ 1) of
  // ν(c_i) + M − (i−1)e. Only c_0 nonzero means z is rational.
  std::optional<long> slack;
  for (std::size_t i = 1; i < z.coords.size(); ++i) {
    if (z.coords[i] == 0) continue;
    const long s = vp(z.coords[i], p).value() - (static_cast<long>(i) - 1) * e;
    slack = slack ? std::min(*slack, s) : s;
  }
  if (!slack) return vp(z.coords[0], p);

  long precision = std::max(16L, frac_precision(z));
  for (int attempt = 0; attempt < 24; ++attempt) {
    const QRational approx = evaluate(z, precision);
    const long bound = *slack + precision;
    const Valuation v = vp(approx, p);
    if (v < Valuation::finite(bound)) return v;
    precision *= 2;
  }
  throw std::logic_error("elem_vp did not stabilise; is the polynomial reducible?");
}

// -------------------------------------------------------------- dynamics --

namespace {

TStep advance(const BetaElement& z) {
  BetaElement w = mul_by_beta(z);
  QRational d = frac_p_elem(w);
  w.coords[0] -= d;
  return {std::move(d), std::move(w)};
}

}  // namespace

TStep t_step(const BetaElement& z) {
  if (elem_vp(z) < 0L) {
    throw std::invalid_argument(
        "t_step needs a p-adic integer; expand() rescales by a power of beta "
        "automatically");
  }
  return advance(z);
}

std::string to_string(ExpansionVerdict v) {
  switch (v) {
    case ExpansionVerdict::finite:
      return "finite";
    case ExpansionVerdict::eventually_periodic:
      return "eventually_periodic";
    case ExpansionVerdict::budget_exceeded:
      return "budget_exceeded";
  }
  return "?";
}

std::optional<QRational> ExpansionRecord::digit_after_point(
    std::size_t i) const {
  if (i == 0) throw std::invalid_argument("digits are indexed from 1");
  if (i <= digits.size()) return digits[i - 1];
  switch (verdict) {
    case ExpansionVerdict::finite:
      return QRational(0);
    case ExpansionVerdict::eventually_periodic: {
      const std::size_t j = preperiod + (i - preperiod - 1) % period;
      return digits[j];
    }
    case ExpansionVerdict::budget_exceeded:
      break;
  }
  return std::nullopt;
}

std::optional<QRational> ExpansionRecord::scaled_digit(std::size_t i) const {
  if (i == 0) throw std::invalid_argument("digits are indexed from 1");
  if (i <= prepoint_digits.size()) return prepoint_digits[i - 1];
  return digit_after_point(i - prepoint_digits.size());
}

ExpansionRecord expand(const BetaElement& z, std::size_t max_steps) {
  ExpansionRecord rec;
  BetaElement state = z;
  const Valuation v = elem_vp(z);
  if (v.is_finite() && v.value() < 0) {
    const long e = z.ctx->e();
    rec.scale = (-v.value() + e - 1) / e;
    for (long i = 0; i < rec.scale; ++i) state = div_by_beta(state);
  }
  const auto scale = static_cast<std::size_t>(rec.scale);

  std::vector<QRational> all;
  std::map<std::vector<QRational>, std::size_t> seen;
  seen.emplace(state.coords, 0);
  std::size_t cycle_start = 0;
  std::size_t cycle_len = 0;
  if (state.is_zero()) {
    rec.verdict = ExpansionVerdict::finite;
  }
  for (std::size_t step = 1;
       rec.verdict == ExpansionVerdict::budget_exceeded && step <= max_steps;
       ++step) {
    TStep s = advance(state);
    all.push_back(std::move(s.digit));
    rec.steps = step;
    if (s.next.is_zero()) {
      rec.verdict = ExpansionVerdict::finite;
      break;
    }
    auto [it, inserted] = seen.emplace(s.next.coords, step);
    if (!inserted) {
      rec.verdict = ExpansionVerdict::eventually_periodic;
      cycle_start = it->second;
      cycle_len = step - it->second;
      break;
    }
    state = std::move(s.next);
  }
  rec.orbit_states_seen = seen.size();

  switch (rec.verdict) {
    case ExpansionVerdict::finite:
      if (all.size() < scale) all.resize(scale, QRational(0));
      rec.preperiod = all.size() - scale;
      break;
    case ExpansionVerdict::eventually_periodic: {
      // Keep at least one full period after the point.
      const std::size_t pre = cycle_start > scale ? cycle_start - scale : 0;
      while (all.size() < scale + pre + cycle_len) {
        all.push_back(all[all.size() - cycle_len]);
      }
      rec.preperiod = pre;
      rec.period = cycle_len;
      break;
    }
    case ExpansionVerdict::budget_exceeded:
      break;
  }
  const std::size_t cut = std::min(scale, all.size());
  rec.prepoint_digits.assign(all.begin(), all.begin() + cut);
  rec.digits.assign(all.begin() + cut, all.end());
  return rec;
}

VerifyResult verify_expansion(const BetaElement& z, const ExpansionRecord& rec,
                              std::size_t k_max) {
  const long e = z.ctx->e();
  BetaElement residual = z;
  for (long i = 0; i < rec.scale; ++i) residual = div_by_beta(residual);
  BetaElement inv_pow = BetaElement::scalar(z.ctx, QRational(1));
  const std::size_t total = rec.prepoint_digits.size() + rec.digits.size();

  for (std::size_t k = 1; k <= k_max; ++k) {
    const auto d = rec.scaled_digit(k);
    if (!d) break;
    inv_pow = div_by_beta(inv_pow);
    if (*d != 0) residual = residual - inv_pow * *d;
    if (rec.verdict == ExpansionVerdict::finite && k >= total) {
      if (!residual.is_zero()) return {false, k};
      continue;
    }
    const Valuation v = elem_vp(residual);
    if (v < Valuation::finite(static_cast<long>(k) * e)) return {false, k};
  }
  return {true, std::nullopt};
}

bool shift_conjugacy_check(const BetaElement& z, std::size_t k,
                           std::size_t max_steps) {
  if (elem_vp(z) < 0L) {
    throw std::invalid_argument("shift conjugacy needs a p-adic integer");
  }
  const ExpansionRecord whole = expand(z, max_steps);
  BetaElement w = z;
  for (std::size_t i = 0; i < k; ++i) w = advance(w).next;
  const ExpansionRecord shifted = expand(w, max_steps);

  const std::size_t window = max_steps > k ? max_steps - k : 1;
  for (std::size_t i = 1; i <= window; ++i) {
    const auto a = shifted.digit_after_point(i);
    const auto b = whole.digit_after_point(i + k);
    if (!a || !b) break;
    if (*a != *b) return false;
  }
  return true;
}

// ------------------------------------------------------------- V basis --

std::vector<BetaElement> v_basis(const ContextPtr& ctx) {
  const MinPoly& m = ctx->minpoly();
  const std::size_t n = m.degree();
  std::vector<BetaElement> out;
  for (std::size_t j = 1; j <= n; ++j) {
    BetaElement v = BetaElement::zero(ctx);
    v.coords[n - j] = 1;
    for (std::size_t i = 1; i <= n - j; ++i) v.coords[n - j - i] = -m.a(i);

    BetaElement lhs = v;
    for (std::size_t k = 0; k < j; ++k) lhs = mul_by_beta(lhs);
    BetaElement rhs = BetaElement::zero(ctx);
    for (std::size_t i = 1; i <= j; ++i) rhs.coords[j - i] = m.a(n - j + i);
    if (!(lhs == rhs)) {
      throw std::logic_error("v_basis: the two forms of v_" +
                             std::to_string(j) + " disagree");
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<QRational> to_v_coords(const BetaElement& z) {
  const auto basis = v_basis(z.ctx);
  const std::size_t n = basis.size();
  std::vector<QRational> w(n);
  BetaElement rest = z;
  // v_j is monic of degree n − j in β, so peel off the top power first.
  for (std::size_t j = 1; j <= n; ++j) {
    w[j - 1] = rest.coords[n - j];
    if (w[j - 1] != 0) rest = rest - basis[j - 1] * w[j - 1];
  }
  if (!rest.is_zero()) throw std::logic_error("to_v_coords: nonzero residue");
  return w;
}

BetaElement from_v_coords(const ContextPtr& ctx,
                          const std::vector<QRational>& w) {
  const auto basis = v_basis(ctx);
  if (w.size() != basis.size()) {
    throw std::invalid_argument("V-coordinate vector has the wrong length");
  }
  BetaElement z = BetaElement::zero(ctx);
  for (std::size_t j = 0; j < w.size(); ++j) z = z + basis[j] * w[j];
  return z;
}

SigmaStep sigma_step(const std::vector<QRational>& w, const ContextPtr& ctx) {
  const MinPoly& m = ctx->minpoly();
  const std::size_t n = m.degree();
  if (w.size() != n) {
    throw std::invalid_argument("V-coordinate vector has the wrong length");
  }
  const auto basis = v_basis(ctx);
  QRational u = 0;
  for (std::size_t i = 1; i <= n; ++i) u += m.a(n - i + 1) * w[i - 1];
  BetaElement sum = BetaElement::scalar(ctx, u);
  for (std::size_t i = 1; i < n; ++i) sum = sum + basis[i - 1] * w[i];

  SigmaStep out;
  out.digit = frac_p_elem(sum);
  out.next.assign(w.begin() + 1, w.end());
  out.next.push_back(u - out.digit);
  return out;
}

Polynomial period_polynomial(const ExpansionRecord& rec, const ContextPtr& ctx) {
  if (rec.scale != 0) {
    throw std::invalid_argument("period_polynomial expects the expansion of 1");
  }
  // x^k − d_1 x^{k−1} − … − d_k
  const auto head = [&](std::size_t k) {
    std::vector<QRational> c(k + 1, QRational(0));
    c[k] = 1;
    for (std::size_t i = 1; i <= k; ++i) c[k - i] = -rec.digits[i - 1];
    return Polynomial(std::move(c));
  };

  Polynomial poly;
  switch (rec.verdict) {
    case ExpansionVerdict::finite:
      poly = head(rec.preperiod);
      break;
    case ExpansionVerdict::eventually_periodic: {
      const std::size_t k = rec.preperiod;
      const std::size_t l = rec.period;
      const Polynomial shift =
          Polynomial::monomial(QRational(1), l) - Polynomial({QRational(1)});
      std::vector<QRational> tail(l, QRational(0));
      for (std::size_t i = 1; i <= l; ++i) tail[l - i] = rec.digits[k + i - 1];
      poly = shift * head(k) - Polynomial(std::move(tail));
      break;
    }
    case ExpansionVerdict::budget_exceeded:
      throw std::invalid_argument(
          "period_polynomial needs a finite or eventually periodic expansion");
  }

  const long e = ctx->e();
  const long precision = 2 * poly.degree() * e + 32;
  const QRational b = ctx->beta_truncation(precision);
  const Valuation v = vp(poly(b), ctx->prime());
  if (v < Valuation::finite(precision - poly.degree() * e)) {
    throw std::logic_error("period polynomial does not vanish at beta");
  }
  return poly;
}

}  // namespace padic_beta
