#include "padic_beta/padic.hpp"

#include <stdexcept>

namespace padic_beta {

unsigned long multiplicity(const Integer& n, const Prime& p) {
  if (n == 0) throw std::domain_error("multiplicity of zero");
  const Integer pz = p.as_integer();
  Integer m = n;
  unsigned long k = 0;
  while (mpz_divisible_p(m.get_mpz_t(), pz.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t());
    ++k;
  }
  return k;
}

QRational power_of(const Prime& p, long k) {
  if (k >= 0) return QRational(p.power(static_cast<unsigned long>(k)));
  return make_rational(1, p.power(static_cast<unsigned long>(-k)));
}

Valuation vp(const QRational& x, const Prime& p) {
  if (x == 0) return Valuation::infinity();
  const long num = static_cast<long>(multiplicity(x.get_num(), p));
  const long den = static_cast<long>(multiplicity(x.get_den(), p));
  return Valuation::finite(num - den);
}

Valuation padic_abs_exponent(const QRational& x, const Prime& p) {
  const Valuation v = vp(x, p);
  if (v.is_infinite()) return v;
  return Valuation::finite(-v.value());
}

bool in_ap(const QRational& x, const Prime& p) {
  Integer d = x.get_den();
  const Integer pz = p.as_integer();
  while (mpz_divisible_p(d.get_mpz_t(), pz.get_mpz_t())) {
    mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t());
  }
  return d == 1;
}

ArtinParts artin_decompose(const QRational& x, const Prime& p) {
  if (x == 0) return {QRational(0), QRational(0)};
  const unsigned long k = multiplicity(x.get_den(), p);
  if (k == 0) return {x, QRational(0)};

  // x = a / (b p^k) with gcd(b, p) = 1: {x}_p = ((a b^{-1}) mod p^k) / p^k.
  const Integer pk = p.power(k);
  Integer b;
  mpz_divexact(b.get_mpz_t(), x.get_den_mpz_t(), pk.get_mpz_t());
  Integer binv;
  if (mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), pk.get_mpz_t()) == 0) {
    throw std::logic_error("artin_decompose: cofactor not invertible");
  }
  Integer r = x.get_num() * binv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), pk.get_mpz_t());
  QRational frac = make_rational(r, pk);
  return {QRational(x - frac), frac};
}

QRational padic_frac(const QRational& x, const Prime& p) {
  return artin_decompose(x, p).fractional_part;
}

QRational padic_floor(const QRational& x, const Prime& p) {
  return artin_decompose(x, p).integer_part;
}

QRational reduce_mod_power(const QRational& x, const Prime& p, long n) {
  QRational y = x * power_of(p, -n);
  y = padic_frac(y, p) * power_of(p, n);
  return y;
}

std::vector<unsigned> padic_digits(const QRational& x, const Prime& p, long lo,
                                   long hi) {
  if (lo > hi) throw std::invalid_argument("padic_digits: lo > hi");
  const auto count = static_cast<unsigned long>(hi - lo + 1);
  std::vector<unsigned> out(count, 0);
  if (x == 0) return out;

  // Shift position lo to 0, drop everything below it, then read the residue
  // modulo p^count in base p.
  const QRational shifted = padic_floor(x * power_of(p, -lo), p);
  const Integer mod = p.power(count);
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), shifted.get_den_mpz_t(), mod.get_mpz_t()) ==
      0) {
    throw std::logic_error("padic_digits: denominator not a unit");
  }
  Integer residue = shifted.get_num() * inv;
  mpz_fdiv_r(residue.get_mpz_t(), residue.get_mpz_t(), mod.get_mpz_t());

  const Integer pz = p.as_integer();
  for (unsigned long i = 0; i < count; ++i) {
    Integer digit;
    mpz_fdiv_qr(residue.get_mpz_t(), digit.get_mpz_t(), residue.get_mpz_t(),
                pz.get_mpz_t());
    out[i] = static_cast<unsigned>(digit.get_ui());
  }
  return out;
}

std::string format_digit_window(const std::vector<unsigned>& digits, long lo) {
  std::string out = "…";
  const long hi = lo + static_cast<long>(digits.size()) - 1;
  for (long pos = hi; pos >= lo; --pos) {
    if (pos == -1) out += "•";
    const unsigned d = digits[static_cast<std::size_t>(pos - lo)];
    if (d < 10) {
      out.push_back(static_cast<char>('0' + d));
    } else {
      out += "[" + std::to_string(d) + "]";
    }
  }
  if (lo == 0) out += "•";
  return out;
}

}  // namespace padic_beta
