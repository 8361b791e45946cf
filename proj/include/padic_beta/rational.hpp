#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace padic_beta {

/// Exact rational in canonical form (reduced, positive denominator, 0 = 0/1).
///
/// GMP arithmetic results are always canonical; anything built from a raw
/// numerator/denominator pair must go through make_rational().
using QRational = mpq_class;
using Integer = mpz_class;

QRational make_rational(const Integer& num, const Integer& den);

/// Parses "a/b" or "a" with an optional leading '-' (surrounding blanks
/// ignored). Throws std::invalid_argument on malformed input or b = 0.
QRational parse_rational(std::string_view text);

/// Comma separated list of rationals; an empty string yields an empty list.
std::vector<QRational> parse_rational_list(std::string_view text);

/// "a/b", or "a" when the denominator is 1.
std::string to_string(const QRational& x);
std::string to_string(const Integer& x);

Integer floor(const QRational& x);
Integer ceil(const QRational& x);

/// A prime number, validated on construction.
class Prime {
 public:
  explicit Prime(std::uint64_t p);

  std::uint64_t value() const { return p_; }
  Integer as_integer() const { return Integer(static_cast<unsigned long>(p_)); }
  Integer power(unsigned long k) const;

  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  std::uint64_t p_;
};

/// An element of Z ∪ {+∞}. Infinity is a separate state, never a sentinel.
class Valuation {
 public:
  static Valuation infinity() { return Valuation(); }
  static Valuation finite(long v) { return Valuation(v); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Throws std::logic_error on infinity.
  long value() const;

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.v_ == b.v_);
  }
  friend std::strong_ordering operator<=>(const Valuation& a,
                                          const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.v_ <=> b.v_;
  }
  friend bool operator==(const Valuation& a, long b) {
    return a.is_finite() && a.v_ == b;
  }
  friend std::strong_ordering operator<=>(const Valuation& a, long b) {
    return a <=> Valuation::finite(b);
  }

  Valuation operator+(const Valuation& o) const;

  std::string to_string() const;

 private:
  Valuation() : infinite_(true), v_(0) {}
  explicit Valuation(long v) : infinite_(false), v_(v) {}

  bool infinite_;
  long v_;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

}  // namespace padic_beta
