#include "crnosc/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace crnosc {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Integer pow10(long e) {
  Integer r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty rational");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Integer d{std::string(den), 10};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    out = Rational(Integer{std::string(num), 10}, d);
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_part = s.substr(e + 1);
      bool exp_neg = false;
      if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
        exp_neg = exp_part.front() == '-';
        exp_part.remove_prefix(1);
      }
      if (!all_digits(exp_part) || exp_part.size() > 4)
        throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
      exponent = std::stol(std::string(exp_part));
      if (exp_neg) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    long frac_digits = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      auto ip = s.substr(0, dot);
      auto fp = s.substr(dot + 1);
      if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) ||
          (ip.empty() && fp.empty()))
        throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
      digits = std::string(ip) + std::string(fp);
      frac_digits = static_cast<long>(fp.size());
    } else {
      if (!all_digits(s)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
      digits = std::string(s);
    }
    Integer num{digits, 10};
    long shift = exponent - frac_digits;
    if (shift >= 0)
      out = Rational(num * pow10(shift), 1);
    else
      out = Rational(num, pow10(-shift));
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value has no rational form");
  return Rational(v);
}

int sign(const Rational& q) { return sgn(q); }

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.get_d());
  return out;
}

Rational approximate(double v, long max_den) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  // Stern-Brocot style continued fraction convergents.
  const bool neg = v < 0;
  double x = std::fabs(v);
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(x);
    Integer ai(a);
    Integer p2 = ai * p1 + p0;
    Integer q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  if (q1 == 0) return Rational(0);
  Rational r(p1, q1);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

}  // namespace crnosc
