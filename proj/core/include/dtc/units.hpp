#pragma once

// Text input for frequencies and grids.
//
// Frequencies: "0.1MHz" and "0.1rad_us" are both 0.1 rad/us (the one-to-one angular
// convention). "10kHz" is 10 * 1e-3 rad/us by default, consistent with that mapping;
// the 2 pi variant can be selected explicitly.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dtc {

enum class KilohertzRule {
  OneToOne,  // 1 kHz -> 1e-3 rad/us
  TwoPi,  // 1 kHz -> 2 pi 1e-3 rad/us
};

KilohertzRule parse_kilohertz_rule(std::string_view text);
std::string to_string(KilohertzRule rule);

struct FrequencyParse {
  bool require_suffix = false;
  KilohertzRule kilohertz = KilohertzRule::OneToOne;
};

/// Returns rad/us. Throws Error(InvalidArgument) on malformed input.
double parse_frequency(std::string_view text, const FrequencyParse& rules = {});

/// "a:b:step" (inclusive, a + k step), "a:b" (unit step), "x,y,z" or a single value.
std::vector<double> parse_grid(std::string_view text);
std::vector<int> parse_int_grid(std::string_view text);

/// Strict full-string number parse.
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);

}  // namespace dtc
