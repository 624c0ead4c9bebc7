#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sybil {

// Shared comparison tolerances: 1e-9 relative plus 1e-12 absolute.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

/// True when `candidate` beats `incumbent` by more than the shared tolerance.
bool strictly_greater(double candidate, double incumbent) noexcept;

/// True when the two values agree within the shared tolerance.
bool approx_equal(double x, double y) noexcept;

/// Parses a decimal literal (`12`, `-0.5`, `1e6`, `3.25E-2`) into the nearest
/// double. The grammar is checked before conversion so stray characters, hex
/// floats, `inf` and `nan` are rejected. `what` names the value in errors.
double parse_decimal(std::string_view text, std::string_view what);

/// Parses an unsigned base-10 integer that must fit in 64 bits.
std::uint64_t parse_uint(std::string_view text, std::string_view what);

/// Shortest representation that round-trips through parse_decimal.
std::string format_number(double value);

/// Fixed number of significant figures, for human-readable summaries.
std::string format_significant(double value, int digits = 4);

}  // namespace sybil
