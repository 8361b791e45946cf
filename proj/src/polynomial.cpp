#include "padic_beta/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace padic_beta {

Polynomial::Polynomial(std::vector<QRational> coeffs) : c_(std::move(coeffs)) {
  trim();
}

Polynomial Polynomial::monomial(const QRational& c, std::size_t degree) {
  std::vector<QRational> v(degree + 1, QRational(0));
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QRational Polynomial::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : QRational(0);
}

QRational Polynomial::leading() const {
  return c_.empty() ? QRational(0) : c_.back();
}

QRational Polynomial::operator()(const QRational& x) const {
  QRational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<QRational> v(std::max(c_.size(), o.c_.size()), QRational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-() const {
  std::vector<QRational> v = c_;
  for (auto& x : v) x = -x;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + (-o);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<QRational> v(c_.size() + o.c_.size() - 1, QRational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const QRational& s) const {
  std::vector<QRational> v = c_;
  for (auto& x : v) x *= s;
  return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(
    const Polynomial& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (degree() < d.degree()) return {Polynomial(), *this};
  std::vector<QRational> rem = c_;
  std::vector<QRational> quo(c_.size() - d.c_.size() + 1, QRational(0));
  const QRational lead = d.leading();
  for (std::size_t k = quo.size(); k-- > 0;) {
    const QRational q = rem[k + d.c_.size() - 1] / lead;
    quo[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= q * d.c_[j];
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<QRational> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    v[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  return *this * (QRational(1) / leading());
}

Polynomial Polynomial::reversed() const {
  std::vector<QRational> v(c_.rbegin(), c_.rend());
  return Polynomial(std::move(v));
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    QRational c = c_[i];
    if (!out.empty()) {
      out += c < 0 ? " - " : " + ";
      c = abs(c);
    } else if (c < 0 && i > 0) {
      out += "-";
      c = abs(c);
    }
    const bool unit = c == 1 && i > 0;
    if (!unit) out += padic_beta::to_string(c);
    if (i > 0) {
      if (!unit) out += "*";
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

Polynomial squarefree_part(const Polynomial& f) {
  if (f.degree() <= 0) return f.monic();
  return f.divmod(gcd(f, f.derivative())).first.monic();
}

namespace {

int sign(const QRational& x) { return sgn(x); }

std::size_t sign_changes(const std::vector<Polynomial>& seq,
                         const QRational& x) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    const int s = sign(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

std::size_t count_real_roots(const Polynomial& f, const QRational& lo,
                             const QRational& hi) {
  if (f.is_zero()) throw std::domain_error("count_real_roots of zero");
  if (lo > hi) return 0;
  Polynomial g = squarefree_part(f);
  std::size_t endpoint_roots = 0;
  // Strip endpoint roots so the Sturm count below sees neither endpoint.
  for (const QRational& x : {lo, hi}) {
    if (g.degree() >= 1 && g(x) == 0) {
      ++endpoint_roots;
      g = g.divmod(Polynomial({QRational(-x), QRational(1)})).first;
    }
    if (lo == hi) break;
  }
  if (g.degree() <= 0) return endpoint_roots;

  std::vector<Polynomial> seq{g, g.derivative()};
  while (seq.back().degree() > 0) {
    Polynomial r = seq[seq.size() - 2].divmod(seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return endpoint_roots + sign_changes(seq, lo) - sign_changes(seq, hi);
}

}  // namespace padic_beta
