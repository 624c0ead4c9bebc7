#include "sybil/numeric.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "sybil/error.hpp"

namespace sybil {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// [+-]? digits ( '.' digits )? ( [eE] [+-]? digits )?  or  [+-]? '.' digits ...
bool matches_decimal_grammar(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t int_digits = 0;
  while (i < s.size() && is_digit(s[i])) {
    ++i;
    ++int_digits;
  }
  std::size_t frac_digits = 0;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && is_digit(s[i])) {
      ++i;
      ++frac_digits;
    }
  }
  if (int_digits + frac_digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < s.size() && is_digit(s[i])) {
      ++i;
      ++exp_digits;
    }
    if (exp_digits == 0) return false;
  }
  return i == s.size();
}

std::string quoted(std::string_view what, std::string_view text) {
  return std::string(what) + " is not a decimal number: \"" + std::string(text) + "\"";
}

}  // namespace

bool strictly_greater(double candidate, double incumbent) noexcept {
  return candidate > incumbent + kRelTol * std::abs(incumbent) + kAbsTol;
}

bool approx_equal(double x, double y) noexcept {
  return std::abs(x - y) <= kRelTol * std::max(std::abs(x), std::abs(y)) + kAbsTol;
}

double parse_decimal(std::string_view text, std::string_view what) {
  if (!matches_decimal_grammar(text)) throw ConfigError(quoted(what, text));
  // from_chars rejects a leading '+'.
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec == std::errc::result_out_of_range || !std::isfinite(value)) {
    throw ConfigError(std::string(what) + " is out of range: \"" + std::string(text) + "\"");
  }
  if (ec != std::errc() || ptr != body.data() + body.size()) {
    throw ConfigError(quoted(what, text));
  }
  return value;
}

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
  if (text.empty()) throw ConfigError(std::string(what) + " is empty");
  for (char c : text) {
    if (!is_digit(c)) {
      throw ConfigError(std::string(what) + " is not an unsigned integer: \"" +
                        std::string(text) + "\"");
    }
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw ConfigError(std::string(what) + " does not fit in 64 bits: \"" + std::string(text) +
                      "\"");
  }
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(what) + " is not an unsigned integer: \"" +
                      std::string(text) + "\"");
  }
  return value;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ec == std::errc() ? ptr : buf.data());
}

std::string format_significant(double value, int digits) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*g", digits, value);
  return std::string(buf.data());
}

}  // namespace sybil
