#include "padic_beta/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace padic_beta {

QRational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  QRational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s, bool allow_sign,
                      std::string_view whole) {
  std::string digits;
  bool negative = false;
  if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) {
    throw std::invalid_argument("malformed rational: '" + std::string(whole) +
                                "'");
  }
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("malformed rational: '" +
                                  std::string(whole) + "'");
    }
    digits.push_back(c);
  }
  Integer v(digits, 10);
  return negative ? Integer(-v) : v;
}

}  // namespace

QRational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    return QRational(parse_integer(s, true, text));
  }
  const Integer num = parse_integer(trim(s.substr(0, slash)), true, text);
  const Integer den = parse_integer(trim(s.substr(slash + 1)), false, text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                "'");
  }
  return make_rational(num, den);
}

std::vector<QRational> parse_rational_list(std::string_view text) {
  std::vector<QRational> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string to_string(const QRational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const Integer& x) { return x.get_str(); }

Integer floor(const QRational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Integer ceil(const QRational& x) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Prime::Prime(std::uint64_t p) : p_(p) {
  const Integer z(static_cast<unsigned long>(p));
  if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 40) == 0) {
    throw std::invalid_argument("not a prime: " + std::to_string(p));
  }
}

Integer Prime::power(unsigned long k) const {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p_), k);
  return r;
}

long Valuation::value() const {
  if (infinite_) throw std::logic_error("valuation is infinite");
  return v_;
}

Valuation Valuation::operator+(const Valuation& o) const {
  if (infinite_ || o.infinite_) return infinity();
  return finite(v_ + o.v_);
}

std::string Valuation::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(v_);
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  return os << v.to_string();
}

}  // namespace padic_beta
