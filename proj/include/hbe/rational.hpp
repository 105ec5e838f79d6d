#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "hbe/error.hpp"

namespace hbe {

using Rational = boost::rational<std::int64_t>;

/// "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw Error(ErrorCode::InvalidInput, "empty rational component");
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(std::string(s), &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "bad rational '" + std::string(text) + "'");
    }
    if (used != s.size())
      throw Error(ErrorCode::InvalidInput, "bad rational '" + std::string(text) + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
  return Rational(parse_int(text.substr(0, slash)), den);
}

}  // namespace hbe
