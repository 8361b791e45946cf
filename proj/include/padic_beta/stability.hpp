#pragma once

#include <string>
#include <vector>

#include "padic_beta/polynomial.hpp"

namespace padic_beta {

enum class Region { interior, boundary, exterior };

std::string to_string(Region r);

struct StabilityVerdict {
  Region region;
  bool certified;
};

/// x^n + r_n x^{n−1} + … + r_1 for r = (r_1, …, r_n).
Polynomial companion_polynomial(const std::vector<QRational>& r);

/// All complex roots strictly inside the unit circle (Schur–Cohn reduction).
bool schur_stable(const Polynomial& f);

/// No complex root strictly outside the closed unit disk.
bool no_root_outside_unit_disk(const Polynomial& f);

/// f(x) = ± x^deg f(1/x).
bool is_self_reciprocal(const Polynomial& f);

/// Location of (r_1, …, r_n) relative to the open set of coefficient vectors
/// whose companion polynomial has every root strictly inside the unit circle.
/// Exact over Q: interior via Schur–Cohn, and the boundary/exterior split via
/// gcd(f, f*) plus a Sturm count on the trace polynomial of the reciprocal
/// factor. Every verdict is certified.
StabilityVerdict schur_cohn(const std::vector<QRational>& r);

}  // namespace padic_beta
