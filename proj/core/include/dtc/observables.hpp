#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dtc/model.hpp"

namespace dtc {

/// Values of |P| at or below this are treated as zero by the order parameter.
inline constexpr double kSignDeadBand = 1e-12;

struct CriticalCycle {
  long long n_c = 0;
  bool censored = false;  // no flip within the record; n_c is only a lower bound
};

/// Stroboscopic record of one run.
///
/// `p[n]` is P(n) for n = 0..n_f. `q[n - 1]` is Q(n) for n = 1..n_f; there is no Q(0).
struct Trajectory {
  ModelParams params;
  std::vector<double> p;
  std::vector<int> q;
  CriticalCycle critical;
  long long n_f = 0;
  std::vector<double> norm;  // optional |psi(n)|, same indexing as p
  double max_norm_drift = 0.0;
  std::vector<std::string> warnings;

  int order(long long n) const { return q.at(static_cast<std::size_t>(n - 1)); }
};

/// Fills q and critical from p (p must hold P(0)..P(n_f)).
Trajectory make_trajectory(const ModelParams& params, std::vector<double> p);

struct Spectrum {
  std::vector<double> nu;
  std::vector<std::complex<double>> values;
  std::vector<double> magnitude;
};

/// sum_i diag[i] |psi_i|^2.
double population_imbalance(const Eigen::VectorXcd& amplitudes, const Eigen::VectorXd& diag);

/// S(nu_k) = (1/n_f) sum_{n=1}^{n_f} P(n) exp(2 pi i n nu_k), nu_k = k / grid_size.
///
/// `samples[k]` holds P(k + 1); grid_size defaults to n_f (a plain DFT).
Spectrum fourier_spectrum(std::span<const double> samples, std::optional<std::size_t> grid_size = {});
Spectrum fourier_spectrum(const Trajectory& trajectory, std::optional<std::size_t> grid_size = {});

/// Indices of the `count` largest local maxima of |S| (circular neighbours), largest first.
std::vector<std::size_t> top_peaks(const Spectrum& spectrum, std::size_t count);

/// Q(n) = sgn[(-1)^n P(n)] for n = 1..n_f from p = P(0)..P(n_f).
///
/// Inside the dead band Q repeats its previous value, starting from Q(0) = -1.
std::vector<int> order_parameter(std::span<const double> p);

/// n_c = (first n with Q(n) = +1) - 1, or n_f and censored when Q never flips.
CriticalCycle critical_cycle_number(std::span<const int> q);

/// n_b = pi / (2 |epsilon| t1).
double beating_period_epsilon(double epsilon, double t1 = 1.0);
/// n_b = 2 pi / ((Omega_e - Omega) t1) with Omega_e = sqrt(Omega^2 + Delta^2).
double beating_period_detuning(const ModelParams& params);

/// Cycles n >= 1 where Q(n) differs from Q(n - 1) (Q(0) = -1).
std::vector<long long> order_flips(std::span<const int> q);

}  // namespace dtc
