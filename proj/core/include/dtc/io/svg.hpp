#pragma once

// Self-contained SVG figures (inline styles, no external assets).

#include <string>
#include <vector>

#include "dtc/dissipative.hpp"
#include "dtc/observables.hpp"
#include "dtc/sweep.hpp"

namespace dtc::io {

/// P(n) trace with a Q(n) strip underneath (blue = -1, yellow = +1).
std::string trajectory_svg(const Trajectory& t, const std::string& title);

/// |S(nu)| with the given peak bins annotated.
std::string spectrum_svg(const Spectrum& s, const std::vector<std::size_t>& peaks, const std::string& title);

struct CurveSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<bool> censored;  // drawn as hollow markers
};

std::string curve_svg(const std::vector<CurveSeries>& series, const std::string& x_label,
                      const std::string& y_label, const std::string& title, bool log_y = false);

/// delta n_c sign over (epsilon, L); yellow +, green 0, blue -.
std::string phase_svg(const PhaseDiagram& d, const std::string& title);

/// |P(n)| on a log axis with the fitted envelope line.
std::string decay_svg(const Trajectory& t, const FitReport& fit, const std::string& title);

}  // namespace dtc::io
