#include "astk/rational.hpp"

#include <cstdio>
#include <stdexcept>

namespace astk {

Rational rational_from_string(const std::string& text) {
  std::size_t begin = text.find_first_not_of(" \t");
  std::size_t end = text.find_last_not_of(" \t");
  if (begin == std::string::npos) throw std::invalid_argument("empty rational literal");
  std::string body = text.substr(begin, end - begin + 1);

  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };

  std::size_t slash = body.find('/');
  if (slash == std::string::npos) {
    if (!is_int(body)) throw std::invalid_argument("bad rational literal: " + body);
    return Rational(body);
  }
  std::string num = body.substr(0, slash);
  std::string den = body.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) throw std::invalid_argument("bad rational literal: " + body);
  Rational q(num + "/" + den);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + body);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace astk
