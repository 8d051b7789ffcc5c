#include "dtc/dissipative.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>

#include "dtc/error.hpp"

namespace dtc {

using cplx = std::complex<double>;
using RowMajorXcd = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::string to_string(SuperMethod method) {
  switch (method) {
    case SuperMethod::Auto: return "auto";
    case SuperMethod::Eigen: return "eigen";
    case SuperMethod::Pade: return "pade";
  }
  return "?";
}

DensityState DensityState::ground(int atoms) {
  DensityState rho;
  rho.atoms = atoms;
  const Eigen::Index d = rho.dim();
  rho.rho_vec = Eigen::VectorXcd::Zero(d * d);
  rho.rho_vec[0] = 1.0;
  return rho;
}

DensityState DensityState::from_pure(const StateVector& psi, int atoms) {
  DensityState rho;
  rho.atoms = atoms;
  const Eigen::Index d = rho.dim();
  if (psi.amplitudes.size() != d) {
    fail(ErrorKind::InvalidArgument, "density states need a full-basis pure state");
  }
  rho.rho_vec.resize(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      rho.rho_vec[i * d + j] = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
    }
  }
  return rho;
}

Eigen::MatrixXcd DensityState::matrix() const {
  const Eigen::Index d = dim();
  return Eigen::Map<const RowMajorXcd>(rho_vec.data(), d, d);
}

cplx DensityState::trace() const {
  const Eigen::Index d = dim();
  cplx tr = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) tr += rho_vec[i * d + i];
  return tr;
}

double DensityState::hermiticity_error() const {
  const Eigen::MatrixXcd rho = matrix();
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityState::min_eigenvalue() const {
  const Eigen::MatrixXcd rho = matrix();
  const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

Eigen::MatrixXcd build_liouvillian(const ModelParams& params, Stage stage, const Limits& limits) {
  params.validate();
  if (params.atoms > limits.max_dissipative_atoms) {
    fail(ErrorKind::CapacityExceeded,
         "L = " + std::to_string(params.atoms) + " exceeds the dissipative cap of " +
             std::to_string(limits.max_dissipative_atoms) +
             " (the superoperator is dense with 4^L rows); use a smaller chain");
  }
  const int L = params.atoms;
  const double gamma = params.gamma.value_or(0.0);
  const Eigen::MatrixXd h = build_hamiltonian(params, stage, limits).matrix();
  const Eigen::Index d = h.rows();
  const Eigen::Index n = d * d;
  const cplx minus_i(0.0, -1.0);

  Eigen::MatrixXcd lv = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const Eigen::Index row = i * d + j;
      // -i H rho
      for (Eigen::Index k = 0; k < d; ++k) {
        if (h(i, k) != 0.0) lv(row, k * d + j) += minus_i * h(i, k);
      }
      // +i rho H
      for (Eigen::Index l = 0; l < d; ++l) {
        if (h(l, j) != 0.0) lv(row, i * d + l) -= minus_i * h(l, j);
      }
      if (gamma == 0.0) continue;
      const auto ci = static_cast<std::uint64_t>(i);
      const auto cj = static_cast<std::uint64_t>(j);
      lv(row, row) -= 0.5 * gamma * (std::popcount(ci) + std::popcount(cj));
      // sigma^- rho sigma^+: source (i, j) with atom excited in both feeds (i - b, j - b).
      const std::uint64_t both = ci & cj;
      for (int atom = 0; atom < L; ++atom) {
        const std::uint64_t bit = std::uint64_t{1} << (L - 1 - atom);
        if ((both & bit) == 0U) continue;
        const auto target = static_cast<Eigen::Index>((ci ^ bit) * static_cast<std::uint64_t>(d) + (cj ^ bit));
        lv(target, row) += gamma;
      }
    }
  }
  return lv;
}

namespace {

double stage_time(const ModelParams& params, Stage stage) {
  return stage == Stage::One ? params.t1 : params.t2;
}

bool try_eigen(const Eigen::MatrixXcd& lv, double t, StagePropagatorSuper& out) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(lv);
  if (es.info() != Eigen::Success) {
    out.note = "eigensolver did not converge";
    return false;
  }
  const Eigen::MatrixXcd& s = es.eigenvectors();
  out.eigenvalues = es.eigenvalues();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(s);
  const double rcond = lu.rcond();
  out.condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(out.condition <= kSuperConditionLimit)) {
    std::ostringstream os;
    os << "eigenvector matrix condition " << out.condition << " above " << kSuperConditionLimit;
    out.note = os.str();
    return false;
  }
  const Eigen::MatrixXcd s_inv = lu.inverse();
  const Eigen::VectorXcd& lambda = es.eigenvalues();
  out.residual = ((s * lambda.asDiagonal()) * s_inv - lv).cwiseAbs().maxCoeff();
  if (!(out.residual < kSuperResidualLimit)) {
    std::ostringstream os;
    os << "eigendecomposition residual " << out.residual << " above " << kSuperResidualLimit;
    out.note = os.str();
    return false;
  }
  Eigen::VectorXcd growth(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) growth[k] = std::exp(lambda[k] * t);
  out.propagator = (s * growth.asDiagonal()) * s_inv;
  out.method = SuperMethod::Eigen;
  return true;
}

}  // namespace

StagePropagatorSuper compile_stage(const ModelParams& params, Stage stage, SuperMethod method,
                                   const Limits& limits) {
  const Eigen::MatrixXcd lv = build_liouvillian(params, stage, limits);
  const double t = stage_time(params, stage);
  StagePropagatorSuper out;
  out.stage = stage;
  if (t == 0.0) {
    out.propagator = Eigen::MatrixXcd::Identity(lv.rows(), lv.cols());
    out.method = SuperMethod::Pade;
    out.note = "zero-length stage";
    return out;
  }
  if (method != SuperMethod::Pade) {
    if (try_eigen(lv, t, out)) return out;
    if (method == SuperMethod::Eigen) fail(ErrorKind::Numeric, "Liouvillian eigendecomposition rejected: " + out.note);
  }
  const Eigen::MatrixXcd scaled = lv * t;
  out.propagator = scaled.exp();
  out.method = SuperMethod::Pade;
  return out;
}

DissipativeResult evolve_density(const ModelParams& params, const DensityState& rho0, long long n_f,
                                 const DissipativeOptions& options) {
  if (n_f < 1) fail(ErrorKind::InvalidArgument, "n_f must be >= 1");
  if (n_f > options.limits.max_cycles) fail(ErrorKind::CapacityExceeded, "n_f exceeds the cycle budget");
  if (rho0.atoms != params.atoms) fail(ErrorKind::InvalidArgument, "initial density matrix has the wrong size");

  const StagePropagatorSuper one = compile_stage(params, Stage::One, options.method, options.limits);
  const StagePropagatorSuper two = compile_stage(params, Stage::Two, options.method, options.limits);

  const Basis basis = Basis::full(params.atoms);
  const Eigen::VectorXd diag = population_difference_diagonal(basis);
  const Eigen::Index d = basis.dim();

  DissipativeResult result;
  result.stage_one_method = one.method;
  result.stage_two_method = two.method;

  DensityState rho = rho0;
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(n_f) + 1);
  auto imbalance = [&](const DensityState& state) {
    double value = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) value += diag[i] * state.rho_vec[i * d + i].real();
    return value;
  };
  p.push_back(imbalance(rho));
  result.min_eigenvalue = options.check_positivity ? rho.min_eigenvalue() : 0.0;
  cplx previous_trace = rho.trace();
  result.max_trace_drift = std::abs(previous_trace - 1.0);
  result.max_hermiticity_error = rho.hermiticity_error();

  std::vector<std::string> warnings;
  Eigen::VectorXcd scratch(rho.rho_vec.size());
  for (long long n = 1; n <= n_f; ++n) {
    scratch.noalias() = one.propagator * rho.rho_vec;
    rho.rho_vec.noalias() = two.propagator * scratch;

    const cplx tr = rho.trace();
    const double drift = std::abs(tr - 1.0);
    result.max_trace_drift = std::max(result.max_trace_drift, drift);
    result.max_cycle_trace_change = std::max(result.max_cycle_trace_change, std::abs(tr - previous_trace));
    previous_trace = tr;
    if (drift > kTraceDriftAbort) {
      std::ostringstream os;
      os << "trace drift " << drift << " at cycle " << n << " exceeds " << kTraceDriftAbort;
      fail(ErrorKind::Numeric, os.str());
    }
    result.max_hermiticity_error = std::max(result.max_hermiticity_error, rho.hermiticity_error());
    if (options.check_positivity) {
      const double lowest = rho.min_eigenvalue();
      if (lowest < result.min_eigenvalue) result.min_eigenvalue = lowest;
    }
    p.push_back(imbalance(rho));
  }
  if (options.check_positivity && result.min_eigenvalue < -kNegativityWarn) {
    std::ostringstream os;
    os << "density matrix eigenvalue reached " << result.min_eigenvalue;
    warnings.push_back(os.str());
  }
  for (const auto* stage : {&one, &two}) {
    if (!stage->note.empty() && stage->method == SuperMethod::Pade && stage->note != "zero-length stage") {
      warnings.push_back("stage propagator used Pade: " + stage->note);
    }
  }

  result.trajectory = make_trajectory(params, std::move(p));
  result.trajectory.warnings = std::move(warnings);
  return result;
}

FitReport fit_decay(std::span<const double> p, const FitWindow& window) {
  if (p.empty()) fail(ErrorKind::InvalidArgument, "empty P(n) sequence");
  const long long last = static_cast<long long>(p.size()) - 1;
  const long long end = window.end.value_or(last);
  if (window.start < 0 || end > last || window.start >= end) {
    fail(ErrorKind::InvalidArgument, "fit window must satisfy 0 <= start < end <= n_f");
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (long long k = window.start; k <= end; k += 2) {
    long long best = k;
    if (k + 1 <= end && std::abs(p[static_cast<std::size_t>(k + 1)]) > std::abs(p[static_cast<std::size_t>(k)])) {
      best = k + 1;
    }
    const double value = std::abs(p[static_cast<std::size_t>(best)]);
    if (value > kEnvelopeFloor) {
      xs.push_back(static_cast<double>(best));
      ys.push_back(std::log(value));
    }
  }
  if (xs.size() < kMinFitPoints) {
    fail(ErrorKind::NoSignal, "only " + std::to_string(xs.size()) + " usable envelope points (need " +
                                  std::to_string(kMinFitPoints) + ")");
  }

  const auto count = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  const double slope = sxy / sxx;

  FitReport report;
  report.alpha = -slope;
  report.intercept = mean_y - slope * mean_x;
  report.start = window.start;
  report.end = end;
  report.points = xs.size();
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (report.intercept + slope * xs[i]);
    ss += r * r;
  }
  report.residual = std::sqrt(ss / count);
  return report;
}

}  // namespace dtc
