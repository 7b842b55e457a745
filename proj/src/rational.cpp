#include "pinv/rational.hpp"

#include <cctype>

#include "pinv/error.hpp"

namespace pinv {

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) ||
      den.front() == '-' || den.front() == '+') {
    throw Error(ErrorCode::ParseError,
                "not a rational literal: '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  Integer p(n, 10);
  Integer q(std::string(den), 10);
  if (q == 0) {
    throw Error(ErrorCode::ParseError,
                "zero denominator: '" + std::string(text) + "'");
  }
  Rational r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace pinv
