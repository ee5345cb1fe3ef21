#include "qts/rational.hpp"

#include <sstream>

namespace qts {

std::string to_string(const Rational& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

namespace {

Int parse_integer(const std::string& s, const std::string& whole) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = (s[i] == '-');
    ++i;
  }
  if (i == s.size())
    throw input_error("bad rational literal '" + whole + "': missing digits");
  Int v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw input_error("bad rational literal '" + whole + "': unexpected character '" +
                        std::string(1, s[i]) + "'");
    v = v * 10 + (s[i] - '0');
  }
  return neg ? Int(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s, s));
  if (s.find('/', slash + 1) != std::string::npos)
    throw input_error("bad rational literal '" + s + "': more than one '/'");
  Int num = parse_integer(s.substr(0, slash), s);
  Int den = parse_integer(s.substr(slash + 1), s);
  if (den == 0) throw input_error("bad rational literal '" + s + "': zero denominator");
  return make_rational(num, den);
}

}  // namespace qts
