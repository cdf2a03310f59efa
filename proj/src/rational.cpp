#include "qpmut/rational.hpp"

#include <cctype>

namespace qpmut {

namespace {

bool valid_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    require(valid_integer_token(text), "bad_rational",
            "not a rational literal: '" + text + "'");
    return Rat(mpz_class(text, 10));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  require(valid_integer_token(num) && valid_integer_token(den), "bad_rational",
          "not a rational literal: '" + text + "'");
  mpz_class d(den, 10);
  require(d != 0, "bad_rational", "zero denominator in '" + text + "'");
  Rat r(mpz_class(num, 10), d);
  r.canonicalize();
  return r;
}

}  // namespace qpmut
