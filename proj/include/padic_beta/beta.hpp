#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "padic_beta/classifier.hpp"

namespace padic_beta {

/// A Pisot–Chabauty (or Salem–Chabauty) base β given by its minimal
/// polynomial, with the derived constants the expansion needs.
///
/// Immutable after construction apart from the cache of β truncations, which
/// is a thread-safe memo.
class BetaContext {
 public:
  /// Throws std::invalid_argument unless the polynomial classifies as PC or
  /// SC. SC bases are accepted but carry no termination guarantee.
  static std::shared_ptr<const BetaContext> create(const MinPoly& m);

  const MinPoly& minpoly() const { return m_; }
  const Prime& prime() const { return m_.prime(); }
  std::size_t degree() const { return m_.degree(); }
  /// −ν_p(β) ≥ 1.
  long e() const { return e_; }
  PcClass base_class() const { return cls_; }
  /// p^e; also the number of digits.
  const Integer& digit_denominator() const { return digit_den_; }
  /// {0, 1/p^e, …, (p^e − 1)/p^e}.
  std::vector<QRational> digit_set() const;

  /// β̂ ∈ Z[1/p] with ν_p(β − β̂) ≥ precision. Values are memoised at
  /// geometrically growing precisions.
  QRational beta_truncation(long precision) const;

 private:
  BetaContext(MinPoly m, PcClass cls, long e);

  MinPoly m_;
  PcClass cls_;
  long e_;
  Integer digit_den_;
  mutable std::mutex cache_mu_;
  mutable std::map<long, QRational> cache_;
};

using ContextPtr = std::shared_ptr<const BetaContext>;

/// z = Σ c_i β^i in the power basis {1, β, …, β^{n−1}}.
struct BetaElement {
  ContextPtr ctx;
  std::vector<QRational> coords;

  static BetaElement zero(ContextPtr ctx);
  static BetaElement scalar(ContextPtr ctx, const QRational& q);
  /// Throws std::invalid_argument on a dimension mismatch.
  static BetaElement from_coords(ContextPtr ctx, std::vector<QRational> c);
  /// β^k for any integer k.
  static BetaElement beta_power(ContextPtr ctx, long k);

  bool is_zero() const;
  std::string to_string() const;

  BetaElement operator+(const BetaElement& o) const;
  BetaElement operator-(const BetaElement& o) const;
  BetaElement operator*(const QRational& s) const;
  BetaElement operator*(const BetaElement& o) const;
  bool operator==(const BetaElement& o) const { return coords == o.coords; }
};

BetaElement mul_by_beta(const BetaElement& z);
BetaElement div_by_beta(const BetaElement& z);

/// Σ c_i β̂^i with β̂ = beta_truncation(precision).
QRational evaluate(const BetaElement& z, long precision);

/// Smallest truncation precision for which evaluating z and taking the
/// p-adic fractional part is exact.
long frac_precision(const BetaElement& z);

/// {z}_p, exact. The second overload evaluates at a caller-chosen precision,
/// which must be at least frac_precision(z).
QRational frac_p_elem(const BetaElement& z);
QRational frac_p_elem(const BetaElement& z, long precision);

/// ν_p(z); infinity iff z = 0.
Valuation elem_vp(const BetaElement& z);

struct TStep {
  QRational digit;
  BetaElement next;
};

/// One step of the beta-transformation z ↦ ⌊βz⌋_p. Requires ν_p(z) ≥ 0 and
/// throws std::invalid_argument otherwise.
TStep t_step(const BetaElement& z);

enum class ExpansionVerdict { finite, eventually_periodic, budget_exceeded };

std::string to_string(ExpansionVerdict v);

/// Beta-expansion of z. When ν_p(z) < 0 the expansion of β^{−scale}·z is
/// computed; its first `scale` digits are the digits before the radix point.
struct ExpansionRecord {
  std::vector<QRational> prepoint_digits;
  std::vector<QRational> digits;
  ExpansionVerdict verdict = ExpansionVerdict::budget_exceeded;
  /// finite: number of digits; eventually_periodic: preperiod length.
  std::size_t preperiod = 0;
  std::size_t period = 0;
  std::size_t steps = 0;
  std::size_t orbit_states_seen = 0;
  long scale = 0;

  /// Digit i ≥ 1 after the radix point, extended by zeros (finite) or by the
  /// period; nullopt when the budget ran out before digit i.
  std::optional<QRational> digit_after_point(std::size_t i) const;
  /// Digit i ≥ 1 of the expansion of β^{−scale}·z, prepoint digits first.
  std::optional<QRational> scaled_digit(std::size_t i) const;
};

ExpansionRecord expand(const BetaElement& z, std::size_t max_steps);

struct VerifyResult {
  bool ok;
  std::optional<std::size_t> failing_k;
};

/// Checks ν_p(β^{−scale}z − Σ_{i≤k} d_i β^{−i}) ≥ k·e for k = 1..K (exact),
/// and exact vanishing past the end of a finite expansion.
VerifyResult verify_expansion(const BetaElement& z, const ExpansionRecord& rec,
                              std::size_t k_max);

/// d_β(T^k(z)) equals the k-fold shift of d_β(z) on every digit both
/// expansions determine within max_steps. Requires ν_p(z) ≥ 0.
bool shift_conjugacy_check(const BetaElement& z, std::size_t k,
                           std::size_t max_steps = 10000);

/// v_j = β^{n−j} − a_1 β^{n−j−1} − … − a_{n−j}, j = 1..n (v_n = 1). Also
/// checks β^j v_j = a_{n−j+1} β^{j−1} + … + a_n.
std::vector<BetaElement> v_basis(const ContextPtr& ctx);

/// Coordinates of z in the basis v_1..v_n.
std::vector<QRational> to_v_coords(const BetaElement& z);
BetaElement from_v_coords(const ContextPtr& ctx,
                          const std::vector<QRational>& w);

struct SigmaStep {
  QRational digit;
  std::vector<QRational> next;
};

/// The beta-transformation written in V-coordinates:
/// (w_1..w_n) ↦ (w_2..w_n, U − {U + V}_p) with U = a_n w_1 + … + a_1 w_n and
/// V = v_1 w_2 + … + v_{n−1} w_n.
SigmaStep sigma_step(const std::vector<QRational>& w, const ContextPtr& ctx);

/// Polynomial with A_p coefficients vanishing at β, assembled from the
/// expansion of 1 (finite or eventually periodic). Verifies it at a
/// truncation of β and throws std::logic_error if the check fails.
Polynomial period_polynomial(const ExpansionRecord& rec, const ContextPtr& ctx);

}  // namespace padic_beta
