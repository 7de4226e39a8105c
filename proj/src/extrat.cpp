#include "microwidths/extrat.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace microwidths {

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rat(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  return Rational(num) / Rational(den);
}

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + i, s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::string s = strip(text);
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(s)) throw std::invalid_argument("parse_rational: bad token '" + text + "'");
    return Rational(boost::multiprecision::cpp_int(s));
  }
  const std::string num = strip(s.substr(0, slash));
  const std::string den = strip(s.substr(slash + 1));
  if (!is_integer_token(num) || !is_integer_token(den))
    throw std::invalid_argument("parse_rational: bad token '" + text + "'");
  const boost::multiprecision::cpp_int d(den);
  if (d == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
  return Rational(boost::multiprecision::cpp_int(num)) / Rational(d);
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

double ExtRat::as_double() const {
  return is_inf_ ? std::numeric_limits<double>::infinity() : to_double(finite_);
}

ExtRat parse_extrat(const std::string& text) {
  std::string s = strip(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "inf" || s == "infinity" || s == "oo") return ExtRat::infinity();
  return ExtRat::finite(parse_rational(text));
}

std::string to_string(const ExtRat& e) { return e.is_infinite() ? "inf" : to_string(e.value()); }

std::ostream& operator<<(std::ostream& os, const ExtRat& e) { return os << to_string(e); }

}  // namespace microwidths
