#include "dtc/units.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "dtc/error.hpp"

namespace dtc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

KilohertzRule parse_kilohertz_rule(std::string_view text) {
  if (text == "one-to-one") return KilohertzRule::OneToOne;
  if (text == "two-pi") return KilohertzRule::TwoPi;
  fail(ErrorKind::InvalidArgument, "unknown kHz rule '" + std::string(text) + "' (one-to-one | two-pi)");
}

std::string to_string(KilohertzRule rule) { return rule == KilohertzRule::OneToOne ? "one-to-one" : "two-pi"; }

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    fail(ErrorKind::InvalidArgument, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

long long parse_integer(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  long long value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    fail(ErrorKind::InvalidArgument, "not an integer: '" + std::string(text) + "'");
  }
  return value;
}

double parse_frequency(std::string_view text, const FrequencyParse& rules) {
  text = trim(text);
  struct Suffix {
    std::string_view name;
    double scale;
  };
  const double khz = rules.kilohertz == KilohertzRule::OneToOne ? 1e-3 : 2.0 * std::numbers::pi * 1e-3;
  const Suffix suffixes[] = {{"rad_us", 1.0}, {"MHz", 1.0}, {"kHz", khz}};
  for (const auto& s : suffixes) {
    if (ends_with(text, s.name)) return parse_double(text.substr(0, text.size() - s.name.size())) * s.scale;
  }
  if (rules.require_suffix) {
    fail(ErrorKind::InvalidArgument,
         "frequency '" + std::string(text) + "' needs a unit suffix (MHz, kHz or rad_us)");
  }
  return parse_double(text);
}

std::vector<double> parse_grid(std::string_view text) {
  text = trim(text);
  if (text.empty()) fail(ErrorKind::InvalidArgument, "empty grid");
  std::vector<double> out;
  if (text.find(',') != std::string_view::npos) {
    while (!text.empty()) {
      const auto comma = text.find(',');
      out.push_back(parse_double(text.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
    return out;
  }
  const auto first = text.find(':');
  if (first == std::string_view::npos) return {parse_double(text)};
  const auto second = text.find(':', first + 1);
  const double lo = parse_double(text.substr(0, first));
  const double hi = parse_double(second == std::string_view::npos ? text.substr(first + 1)
                                                                   : text.substr(first + 1, second - first - 1));
  const double step = second == std::string_view::npos ? 1.0 : parse_double(text.substr(second + 1));
  if (!(step > 0.0)) fail(ErrorKind::InvalidArgument, "grid step must be positive");
  if (hi < lo) fail(ErrorKind::InvalidArgument, "grid upper bound below lower bound");
  const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (count > 10'000'000) fail(ErrorKind::CapacityExceeded, "grid has too many points");
  out.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) {
    double value = lo + static_cast<double>(k) * step;
    // Snap values that should be round numbers (e.g. 0 in -1:1:0.05) onto them.
    const double rounded = std::round(value / step) * step;
    if (std::abs(value - rounded) < 1e-9 * step) value = rounded;
    if (std::abs(value) < 1e-12 * step) value = 0.0;
    out.push_back(value);
  }
  return out;
}

std::vector<int> parse_int_grid(std::string_view text) {
  const std::vector<double> values = parse_grid(text);
  std::vector<int> out;
  out.reserve(values.size());
  for (double v : values) {
    if (v != std::round(v)) fail(ErrorKind::InvalidArgument, "grid values must be integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

}  // namespace dtc
