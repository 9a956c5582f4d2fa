#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hoepr {

enum class Sign { plus, minus };

constexpr int sign_value(Sign s) { return s == Sign::plus ? 1 : -1; }
constexpr Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

inline std::string to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

inline Sign parse_sign(std::string_view text) {
  if (text == "plus" || text == "+") return Sign::plus;
  if (text == "minus" || text == "-") return Sign::minus;
  throw std::invalid_argument("unknown sign '" + std::string(text) + "'");
}

}  // namespace hoepr
