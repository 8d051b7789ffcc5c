#include "dtc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dtc/error.hpp"

namespace dtc {

Trajectory make_trajectory(const ModelParams& params, std::vector<double> p) {
  Trajectory t;
  t.params = params;
  t.p = std::move(p);
  t.n_f = t.p.empty() ? 0 : static_cast<long long>(t.p.size()) - 1;
  t.q = order_parameter(t.p);
  t.critical = critical_cycle_number(t.q);
  return t;
}

double population_imbalance(const Eigen::VectorXcd& amplitudes, const Eigen::VectorXd& diag) {
  if (amplitudes.size() != diag.size()) {
    fail(ErrorKind::InvalidArgument, "state and population diagonal differ in dimension");
  }
  return diag.dot(amplitudes.cwiseAbs2());
}

Spectrum fourier_spectrum(std::span<const double> samples, std::optional<std::size_t> grid_size) {
  if (samples.empty()) fail(ErrorKind::InvalidArgument, "empty P(n) sequence");
  const std::size_t n_f = samples.size();
  const std::size_t grid = grid_size.value_or(n_f);
  if (grid == 0) fail(ErrorKind::InvalidArgument, "grid size must be positive");

  // exp(2 pi i m / grid); the phase index (n k) mod grid is tracked exactly.
  std::vector<std::complex<double>> twiddle(grid);
  for (std::size_t m = 0; m < grid; ++m) {
    twiddle[m] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(grid));
  }

  Spectrum s;
  s.nu.resize(grid);
  s.values.resize(grid);
  s.magnitude.resize(grid);
  const double scale = 1.0 / static_cast<double>(n_f);
  for (std::size_t k = 0; k < grid; ++k) {
    std::complex<double> acc = 0.0;
    std::size_t phase = k % grid;  // n = 1
    for (std::size_t i = 0; i < n_f; ++i) {
      acc += samples[i] * twiddle[phase];
      phase += k;
      if (phase >= grid) phase %= grid;
    }
    s.nu[k] = static_cast<double>(k) / static_cast<double>(grid);
    s.values[k] = acc * scale;
    s.magnitude[k] = std::abs(s.values[k]);
  }
  return s;
}

Spectrum fourier_spectrum(const Trajectory& trajectory, std::optional<std::size_t> grid_size) {
  if (trajectory.p.size() < 2) fail(ErrorKind::InvalidArgument, "trajectory has no cycles");
  return fourier_spectrum(std::span<const double>(trajectory.p).subspan(1), grid_size);
}

std::vector<std::size_t> top_peaks(const Spectrum& spectrum, std::size_t count) {
  const auto& m = spectrum.magnitude;
  const std::size_t n = m.size();
  std::vector<std::size_t> peaks;
  if (n == 0) return peaks;
  if (n == 1) return {0};
  for (std::size_t k = 0; k < n; ++k) {
    const double left = m[(k + n - 1) % n];
    const double right = m[(k + 1) % n];
    if (m[k] > left && m[k] >= right) peaks.push_back(k);
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [&](std::size_t a, std::size_t b) { return m[a] > m[b]; });
  if (peaks.size() > count) peaks.resize(count);
  return peaks;
}

std::vector<int> order_parameter(std::span<const double> p) {
  std::vector<int> q;
  if (p.size() < 2) return q;
  q.reserve(p.size() - 1);
  int previous = -1;
  for (std::size_t n = 1; n < p.size(); ++n) {
    if (std::abs(p[n]) > kSignDeadBand) {
      const double staggered = (n % 2 == 0) ? p[n] : -p[n];
      previous = staggered > 0.0 ? 1 : -1;
    }
    q.push_back(previous);
  }
  return q;
}

CriticalCycle critical_cycle_number(std::span<const int> q) {
  const auto it = std::find(q.begin(), q.end(), 1);
  if (it == q.end()) return {static_cast<long long>(q.size()), true};
  return {static_cast<long long>(it - q.begin()), false};
}

double beating_period_epsilon(double epsilon, double t1) {
  if (epsilon == 0.0) fail(ErrorKind::InvalidArgument, "beating period needs epsilon != 0");
  return std::numbers::pi / (2.0 * std::abs(epsilon) * t1);
}

double beating_period_detuning(const ModelParams& params) {
  if (params.delta == 0.0) fail(ErrorKind::InvalidArgument, "beating period needs delta != 0");
  const double omega = std::abs(params.rabi());
  return 2.0 * std::numbers::pi / ((params.effective_rabi() - omega) * params.t1);
}

std::vector<long long> order_flips(std::span<const int> q) {
  std::vector<long long> flips;
  int previous = -1;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] != previous) flips.push_back(static_cast<long long>(i) + 1);
    previous = q[i];
  }
  return flips;
}

}  // namespace dtc
