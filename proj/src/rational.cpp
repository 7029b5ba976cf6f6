#include "shufflelab/rational.hpp"

#include <cmath>
#include <regex>

#include "shufflelab/errors.hpp"

namespace shufflelab {

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  static const std::regex fraction(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
  static const std::regex decimal(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, fraction)) {
    BigInt num(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str(), 10);
    BigInt den(m[2].str(), 10);
    if (den == 0) throw InvalidArgument("zero denominator in '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (std::regex_match(s, m, decimal) && (m[2].length() > 0 || m[3].length() > 0)) {
    const std::string digits = m[2].str() + m[3].str();
    BigInt mantissa(digits.empty() ? "0" : digits, 10);
    long exponent = -static_cast<long>(m[3].length());
    if (m[4].matched) exponent += std::stol(m[4].str());
    Rational q(mantissa);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    if (exponent >= 0) {
      q *= scale;
    } else {
      q /= scale;
    }
    if (m[1].str() == "-") q = -q;
    q.canonicalize();
    return q;
  }
  throw InvalidArgument("cannot parse '" + s + "' as a number");
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("non-finite probability");
  Rational q;
  mpq_set_d(q.get_mpq_t(), value);
  return q;
}

std::string to_fraction_string(const Rational& q, bool always_fraction) {
  if (!always_fraction && q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational pow(const Rational& x, unsigned long k) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), k);
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), k);
  out.canonicalize();
  return out;
}

}  // namespace shufflelab
