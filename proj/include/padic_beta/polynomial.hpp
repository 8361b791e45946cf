#pragma once

#include <string>
#include <utility>
#include <vector>

#include "padic_beta/rational.hpp"

namespace padic_beta {

/// Dense univariate polynomial over Q, coefficients lowest degree first.
/// Trailing zeros are stripped, so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<QRational> coeffs);

  static Polynomial monomial(const QRational& c, std::size_t degree);

  bool is_zero() const { return c_.empty(); }
  /// −1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<QRational>& coeffs() const { return c_; }
  QRational coeff(std::size_t i) const;
  QRational leading() const;

  QRational operator()(const QRational& x) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const QRational& s) const;
  Polynomial operator-() const;
  bool operator==(const Polynomial& o) const = default;

  /// Quotient and remainder; throws std::domain_error on a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

  Polynomial derivative() const;
  Polynomial monic() const;
  /// x^deg · f(1/x) taken at the stored degree.
  Polynomial reversed() const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<QRational> c_;
};

/// Monic gcd (zero only when both inputs are zero).
Polynomial gcd(Polynomial a, Polynomial b);

/// f / gcd(f, f').
Polynomial squarefree_part(const Polynomial& f);

/// Number of distinct real roots of f in the closed interval [lo, hi],
/// exact via Sturm sequences.
std::size_t count_real_roots(const Polynomial& f, const QRational& lo,
                             const QRational& hi);

}  // namespace padic_beta
