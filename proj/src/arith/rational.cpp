#include "primpairs/arith/rational.hpp"

#include <stdexcept>

namespace primpairs {

ExactRational::ExactRational(const BigInt& num, const BigInt& den) {
  if (sgn(den) == 0) throw std::domain_error("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

ExactRational operator/(const ExactRational& a, const ExactRational& b) {
  if (b.sign() == 0) throw std::domain_error("division by zero");
  return ExactRational::from(a.v_ / b.v_);
}

ExactRational ExactRational::from_decimal(std::string_view text) {
  std::string s(text);
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    exp10 = std::stol(s.substr(e + 1));
    s.resize(e);
  }
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  std::string digits;
  long frac = 0;
  bool seen_point = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("malformed decimal: " + std::string(text));
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++frac;
    } else {
      throw std::invalid_argument("malformed decimal: " + std::string(text));
    }
  }
  if (digits.empty()) throw std::invalid_argument("malformed decimal: " + std::string(text));
  BigInt num(digits, 10);
  if (negative) num = -num;
  exp10 -= frac;
  if (exp10 >= 0) return ExactRational(num * pow(BigInt(10), static_cast<unsigned long>(exp10)));
  return ExactRational(num, pow(BigInt(10), static_cast<unsigned long>(-exp10)));
}

BigInt ExactRational::floor() const {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return r;
}

BigInt ExactRational::ceil() const {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return r;
}

namespace {

std::string render_scaled(BigInt scaled, unsigned places) {
  const bool negative = sgn(scaled) < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str(10);
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = digits.substr(0, digits.size() - places);
  if (places > 0) out += "." + digits.substr(digits.size() - places);
  if (negative && sgn(scaled) != 0) out.insert(0, "-");
  return out;
}

}  // namespace

std::string ExactRational::to_decimal(unsigned places) const {
  const BigInt scale = pow(BigInt(10), places);
  BigInt scaled;
  mpz_class num = v_.get_num() * scale;
  mpz_tdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), v_.get_den_mpz_t());
  return render_scaled(scaled, places);
}

std::string ExactRational::to_decimal_ceil(unsigned places) const {
  const BigInt scale = pow(BigInt(10), places);
  BigInt scaled;
  mpz_class num = v_.get_num() * scale;
  mpz_cdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), v_.get_den_mpz_t());
  return render_scaled(scaled, places);
}

}  // namespace primpairs
