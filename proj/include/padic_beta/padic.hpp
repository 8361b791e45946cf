#pragma once

#include <string>
#include <vector>

#include "padic_beta/rational.hpp"

namespace padic_beta {

/// Multiplicity of p in a nonzero integer.
unsigned long multiplicity(const Integer& n, const Prime& p);

/// p^k for any integer k, as an exact rational.
QRational power_of(const Prime& p, long k);

/// ν_p(x); infinity exactly for x = 0.
Valuation vp(const QRational& x, const Prime& p);

/// Exponent t with |x|_p = p^t, i.e. −ν_p(x). For x = 0 the norm is zero and
/// the infinite valuation is returned as the zero-norm marker.
Valuation padic_abs_exponent(const QRational& x, const Prime& p);

/// True iff the denominator of x is a power of p (x ∈ Z[1/p]).
bool in_ap(const QRational& x, const Prime& p);

struct ArtinParts {
  QRational integer_part;     // ν_p ≥ 0
  QRational fractional_part;  // in Z[1/p] ∩ [0,1)
};

/// x = ⌊x⌋_p + {x}_p. Total on Q.
ArtinParts artin_decompose(const QRational& x, const Prime& p);

QRational padic_frac(const QRational& x, const Prime& p);
QRational padic_floor(const QRational& x, const Prime& p);

/// The unique y ∈ Z[1/p] ∩ [0, p^n) with ν_p(x − y) ≥ n.
QRational reduce_mod_power(const QRational& x, const Prime& p, long n);

/// Digits x_lo..x_hi of the canonical p-adic expansion, index 0 ↔ position lo.
std::vector<unsigned> padic_digits(const QRational& x, const Prime& p, long lo,
                                   long hi);

/// Renders digits most significant first with "•" before position −1 and a
/// leading "…" marking the truncation. Positions lo..hi as in padic_digits.
/// Digits ≥ 10 are rendered in brackets.
std::string format_digit_window(const std::vector<unsigned>& digits, long lo);

}  // namespace padic_beta
