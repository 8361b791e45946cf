#include "padic_beta/stability.hpp"

#include <stdexcept>

namespace padic_beta {

std::string to_string(Region r) {
  switch (r) {
    case Region::interior:
      return "interior";
    case Region::boundary:
      return "boundary";
    case Region::exterior:
      return "exterior";
  }
  return "?";
}

Polynomial companion_polynomial(const std::vector<QRational>& r) {
  if (r.empty()) throw std::invalid_argument("empty coefficient vector");
  std::vector<QRational> c = r;
  c.emplace_back(1);
  return Polynomial(std::move(c));
}

bool schur_stable(const Polynomial& f) {
  if (f.is_zero()) throw std::domain_error("schur_stable of zero");
  std::vector<QRational> c = f.coeffs();
  while (c.size() > 1) {
    const std::size_t d = c.size() - 1;
    const QRational c0 = c.front();
    const QRational cd = c.back();
    if (abs(c0) >= abs(cd)) return false;
    // (cd·f − c0·f*) / x has degree d − 1 and the same stability.
    std::vector<QRational> next(d);
    for (std::size_t k = 0; k < d; ++k) {
      next[k] = cd * c[k + 1] - c0 * c[d - 1 - k];
    }
    const QRational lead = next.back();
    for (auto& x : next) x /= lead;
    c = std::move(next);
  }
  return true;
}

bool is_self_reciprocal(const Polynomial& f) {
  if (f.is_zero()) return false;
  const Polynomial rev = f.reversed();
  return rev.degree() == f.degree() && (rev == f || rev == -f);
}

namespace {

Polynomial strip_root(Polynomial f, const QRational& root) {
  const Polynomial lin({QRational(-root), QRational(1)});
  while (f.degree() >= 1 && f(root) == 0) f = f.divmod(lin).first;
  return f;
}

// Every root of a reciprocal polynomial lies on the unit circle.
bool reciprocal_roots_on_circle(Polynomial g) {
  g = strip_root(strip_root(g, QRational(1)), QRational(-1));
  if (g.degree() <= 0) return true;
  g = g.monic();
  if (g.degree() % 2 != 0 || g.reversed().monic() != g) {
    throw std::logic_error("reciprocal factor lost its symmetry");
  }
  const std::size_t m = static_cast<std::size_t>(g.degree()) / 2;
  const auto& c = g.coeffs();

  // g(z)/z^m = c_m + Σ c_{m+k}(z^k + z^{−k}) rewritten in w = z + 1/z.
  Polynomial q({c[m]});
  Polynomial prev({QRational(2)});
  Polynomial cur({QRational(0), QRational(1)});
  const Polynomial w = cur;
  for (std::size_t k = 1; k <= m; ++k) {
    q = q + cur * c[m + k];
    Polynomial nxt = w * cur - prev;
    prev = std::move(cur);
    cur = std::move(nxt);
  }
  const Polynomial sf = squarefree_part(q);
  return count_real_roots(sf, QRational(-2), QRational(2)) ==
         static_cast<std::size_t>(sf.degree());
}

}  // namespace

bool no_root_outside_unit_disk(const Polynomial& f) {
  if (f.degree() < 1) return true;
  const Polynomial g = gcd(f, f.reversed());
  const Polynomial h = f.divmod(g).first;
  return schur_stable(h) && reciprocal_roots_on_circle(g);
}

StabilityVerdict schur_cohn(const std::vector<QRational>& r) {
  const Polynomial f = companion_polynomial(r);
  if (schur_stable(f)) return {Region::interior, true};
  if (no_root_outside_unit_disk(f)) return {Region::boundary, true};
  return {Region::exterior, true};
}

}  // namespace padic_beta
