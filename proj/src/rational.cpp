#include "hembed/rational.hpp"

#include "hembed/errors.hpp"

namespace hembed {

std::string rat_to_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  auto check_int = [&](const std::string& t, bool allow_sign) {
    if (t.empty()) throw ParseError("bad rational literal: " + s);
    size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) throw ParseError("bad rational literal: " + s);
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') throw ParseError("bad rational literal: " + s);
  };
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      check_int(s, true);
      return Rat(Int(s));
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    check_int(num, true);
    check_int(den, false);
    Int d(den);
    if (d == 0) throw ParseError("zero denominator: " + s);
    return Rat(Int(num), d);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad rational literal: " + s);
  }
}

Rat rat_of(long long num, long long den) {
  if (den == 0) throw ParamError("rat_of: zero denominator");
  return Rat(Int(num), Int(den));
}

Int ipow(Int base, unsigned exp) {
  Int r = 1;
  while (exp) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1u;
  }
  return r;
}

}  // namespace hembed
