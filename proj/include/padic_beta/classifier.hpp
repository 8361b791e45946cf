#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padic_beta/newton.hpp"
#include "padic_beta/polynomial.hpp"
#include "padic_beta/stability.hpp"

namespace padic_beta {

/// The monic polynomial x^n − a_1 x^{n−1} − … − a_n with every a_i ∈ Z[1/p]
/// and a_n ≠ 0. Note the sign convention: `a` holds a_1..a_n as they appear
/// after the minus signs, not the raw polynomial coefficients.
class MinPoly {
 public:
  /// Throws std::invalid_argument if a is empty, a_n = 0, or some a_i has a
  /// denominator that is not a power of p.
  MinPoly(Prime p, std::vector<QRational> a);

  const Prime& prime() const { return p_; }
  std::size_t degree() const { return a_.size(); }
  /// a_i for i = 1..n.
  const QRational& a(std::size_t i) const { return a_.at(i - 1); }
  const std::vector<QRational>& coefficients() const { return a_; }

  Polynomial polynomial() const;
  ValuatedPolynomial valuated() const;
  /// (−a_n, …, −a_1): both the archimedean stability vector of the
  /// polynomial and the shift radix parameter attached to it.
  std::vector<QRational> negated_reversed() const;

 private:
  Prime p_;
  std::vector<QRational> a_;
};

enum class PcClass { pc, sc, neither };

std::string to_string(PcClass c);

struct PcVerdict {
  PcClass cls;
  /// ν_p(a_1); equals ν_p(β) when cls is pc or sc. Empty when a_1 = 0.
  std::optional<long> vp_beta;
  Region region;
  bool certified;
  /// "certified" when the cheap checks decide irreducibility (degree ≤ 3 and
  /// a complete rational root search), "attested" when the caller is trusted.
  std::string irreducibility;
  std::vector<std::string> notes;
};

/// Decides PC / SC / neither. Throws std::invalid_argument when the
/// polynomial is detectably reducible (rational root, repeated factor).
PcVerdict classify(const MinPoly& m);

/// Iterates α ↦ a_1 + a_2/α + … + a_n/α^{n−1} from α = a_1 in Z[1/p] modulo
/// p^work_precision and returns the first `steps` + 1 iterates. Requires
/// ν(a_1) < 0 and ν(a_1) ≤ ν(a_j) for all j.
std::vector<QRational> recurrence_iterates(const MinPoly& m,
                                           long work_precision,
                                           std::size_t steps);

/// β̂ ∈ Z[1/p] with ν_p(β − β̂) ≥ precision, β the dominant root. The value is
/// reduced into [0, p^precision) for degree ≥ 2 and is β itself for degree 1.
/// Throws std::invalid_argument unless classify(m) is PC or SC.
QRational beta_digits(const MinPoly& m, long precision);

/// Same as beta_digits but skips classification; only the p-adic valuation
/// conditions that make the recurrence contract are checked.
QRational dominant_root_truncation(const MinPoly& m, long precision);

struct PcConstruction {
  unsigned long k;
  MinPoly minpoly;
};

/// Given integer a_0..a_{n−1} of p^k x^n + a_{n−1}x^{n−1} + … + a_0 with
/// ν_p(a_{n−1}) ≤ ν_p(a_j), returns the least k making the scaled vector
/// stable and ν_p(a_{n−1}/p^k) < 0, with the resulting monic polynomial.
PcConstruction construct_pc(const std::vector<Integer>& lower, const Prime& p);

}  // namespace padic_beta
