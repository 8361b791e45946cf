#include "padic_beta/newton.hpp"

#include <stdexcept>

namespace padic_beta {

bool ValuatedPolynomial::is_integral_over_ap() const {
  if (coeffs.empty() || coeffs.back() == 0) return false;
  const QRational& lead = coeffs.back();
  return lead == power_of(p, vp(lead, p).value());
}

namespace {

// Cross product sign of (b - a) x (c - a); ≤ 0 means b is not strictly below
// the chord a→c.
Integer cross(const PolygonVertex& a, const PolygonVertex& b,
              const PolygonVertex& c) {
  return Integer(b.x - a.x) * Integer(c.y - a.y) -
         Integer(b.y - a.y) * Integer(c.x - a.x);
}

}  // namespace

NewtonPolygon newton_polygon(const ValuatedPolynomial& f) {
  const auto& c = f.coeffs;
  if (c.size() < 2) {
    throw std::invalid_argument("newton_polygon: degree must be at least 1");
  }
  if (c.front() == 0 || c.back() == 0) {
    throw std::invalid_argument(
        "newton_polygon: constant and leading coefficients must be nonzero");
  }

  // Monotone chain; points already sorted by x.
  std::vector<PolygonVertex> hull;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    const PolygonVertex pt{static_cast<long>(i), vp(c[i], f.p).value()};
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull.back(), pt) <= 0) {
      hull.pop_back();
    }
    hull.push_back(pt);
  }

  NewtonPolygon out;
  out.vertices = hull;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const long dx = hull[i].x - hull[i - 1].x;
    const long dy = hull[i].y - hull[i - 1].y;
    out.segments.push_back({make_rational(dy, dx), dx});
  }
  return out;
}

std::vector<RootValuation> root_valuations(const ValuatedPolynomial& f) {
  std::vector<RootValuation> out;
  for (const auto& seg : newton_polygon(f).segments) {
    out.push_back({QRational(-seg.slope), seg.length});
  }
  return out;
}

DominantRootReport dominant_root_report(const ValuatedPolynomial& f) {
  long negative = 0;
  QRational val = 0;
  for (const auto& rv : root_valuations(f)) {
    if (rv.valuation < 0) {
      negative += rv.multiplicity;
      val = rv.valuation;
    }
  }
  if (negative != 1 || val.get_den() != 1) return {false, std::nullopt};
  return {true, val.get_num().get_si()};
}

}  // namespace padic_beta
