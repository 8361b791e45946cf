#pragma once

#include <optional>
#include <vector>

#include "padic_beta/padic.hpp"

namespace padic_beta {

/// Polynomial c_0 + c_1 x + … + c_m x^m together with the prime it is
/// valuated at.
struct ValuatedPolynomial {
  Prime p;
  std::vector<QRational> coeffs;

  /// Leading coefficient is a power of p (an algebraic integer over Z[1/p]).
  bool is_integral_over_ap() const;
};

struct PolygonVertex {
  long x;
  long y;  // ν_p of the coefficient at x
};

struct PolygonSegment {
  QRational slope;
  long length;  // horizontal
};

struct NewtonPolygon {
  std::vector<PolygonVertex> vertices;
  std::vector<PolygonSegment> segments;
};

struct RootValuation {
  QRational valuation;
  long multiplicity;
};

/// Lower convex hull of the points (i, ν_p(c_i)) with c_i ≠ 0. Requires
/// c_0 ≠ 0 and c_m ≠ 0, m ≥ 1; throws std::invalid_argument otherwise.
NewtonPolygon newton_polygon(const ValuatedPolynomial& f);

/// A segment of slope s and length L contributes L roots of valuation −s.
/// Emitted in segment order (left to right).
std::vector<RootValuation> root_valuations(const ValuatedPolynomial& f);

struct DominantRootReport {
  bool unique_negative_root;
  std::optional<long> valuation;
};

/// Whether exactly one root (with multiplicity) has negative valuation, that
/// valuation being an integer. Such a root lies in Q_p.
DominantRootReport dominant_root_report(const ValuatedPolynomial& f);

}  // namespace padic_beta
