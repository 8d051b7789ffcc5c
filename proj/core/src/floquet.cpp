#include "dtc/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dtc/error.hpp"

namespace dtc {

using cplx = std::complex<double>;

StateVector StateVector::ground(const Basis& basis) {
  StateVector psi{Eigen::VectorXcd::Zero(basis.dim())};
  psi.amplitudes[basis.index_of(0)] = 1.0;
  return psi;
}

StateVector StateVector::from_bitstring(const Basis& basis, std::string_view bits) {
  const int L = basis.atoms();
  if (static_cast<int>(bits.size()) != L) {
    fail(ErrorKind::InvalidArgument, "initial state needs " + std::to_string(L) + " characters");
  }
  std::uint64_t config = 0;
  for (int j = 0; j < L; ++j) {
    const char c = bits[static_cast<std::size_t>(j)];
    if (c != 'g' && c != 'r' && c != '0' && c != '1') {
      fail(ErrorKind::InvalidArgument, "initial state characters must be g/r or 0/1");
    }
    if (c == 'r' || c == '1') config |= std::uint64_t{1} << (L - 1 - j);
  }
  const Eigen::Index index = basis.index_of(config);
  if (basis.kind() == BasisKind::Translation && basis.orbit_size(index) != 1) {
    fail(ErrorKind::InvalidArgument, "the translation sector only holds translation-invariant product states");
  }
  StateVector psi{Eigen::VectorXcd::Zero(basis.dim())};
  psi.amplitudes[index] = 1.0;
  return psi;
}

Eigen::MatrixXcd FloquetPropagator::cycle_matrix() const { return u2_phases.asDiagonal() * u1; }

std::string to_string(EvolveMode mode) { return mode == EvolveMode::Iterate ? "iterate" : "spectral"; }

EvolveMode parse_mode(std::string_view text) {
  if (text == "iterate") return EvolveMode::Iterate;
  if (text == "spectral") return EvolveMode::Spectral;
  fail(ErrorKind::InvalidArgument, "unknown evolution mode '" + std::string(text) + "'");
}

namespace {

// Unitary decomposition of a unitary matrix via complex Schur; T is diagonal up to rounding.
std::optional<SpectralForm> decompose(const Eigen::MatrixXcd& cycle, std::string& warning) {
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(cycle);
  if (schur.info() != Eigen::Success) {
    warning = "complex Schur decomposition did not converge";
    return std::nullopt;
  }
  const Eigen::MatrixXcd& t = schur.matrixT();
  SpectralForm form;
  form.eigenbasis = schur.matrixU();
  form.eigenphases.resize(t.rows());
  Eigen::VectorXcd units(t.rows());
  for (Eigen::Index k = 0; k < t.rows(); ++k) {
    form.eigenphases[k] = std::arg(t(k, k));
    units[k] = std::polar(1.0, form.eigenphases[k]);
  }
  const Eigen::MatrixXcd rebuilt = form.eigenbasis * units.asDiagonal() * form.eigenbasis.adjoint();
  form.reconstruction_error = (rebuilt - cycle).cwiseAbs().maxCoeff();
  if (form.reconstruction_error >= 1e-8) {
    std::ostringstream os;
    os << "spectral form rejected, reconstruction error " << form.reconstruction_error;
    warning = os.str();
    return std::nullopt;
  }
  return form;
}

// Cyclic-shift orbits of all 2^L configurations.
struct Orbits {
  std::vector<std::uint64_t> reps;
  std::vector<int> size;
  std::vector<std::int32_t> orbit;  // configuration -> orbit
  std::vector<std::int32_t> shift;  // configuration = T^shift (representative)
};

Orbits cyclic_orbits(int atoms) {
  const std::uint64_t dim = std::uint64_t{1} << atoms;
  Orbits o;
  o.orbit.assign(dim, -1);
  o.shift.assign(dim, 0);
  for (std::uint64_t c = 0; c < dim; ++c) {
    if (o.orbit[c] >= 0) continue;
    const auto index = static_cast<std::int32_t>(o.reps.size());
    std::int32_t r = 0;
    std::uint64_t member = c;
    do {
      o.orbit[member] = index;
      o.shift[member] = r++;
      member = Basis::rotate(member, atoms);
    } while (member != c);
    o.reps.push_back(c);
    o.size.push_back(r);
  }
  return o;
}

// Momentum sector k spanned by |a,k> = R_a^{-1/2} sum_{r < R_a} e^{-iqr} T^r |a>, q = 2 pi k / L,
// for orbits with k R_a = 0 (mod L).
struct Sector {
  double q = 0.0;
  std::vector<std::int32_t> orbits;  // local index -> orbit
  std::vector<std::int32_t> local;  // orbit -> local index or -1
  Eigen::MatrixXcd u1;
};

// exp(-i H1 t1) and optionally the spectral form of U2 U1, one momentum sector at a time.
void compile_by_momentum(FloquetPropagator& prop, const Eigen::MatrixXd& h1, bool spectral) {
  const int L = prop.params.atoms;
  const Orbits o = cyclic_orbits(L);
  const auto count = static_cast<std::int32_t>(o.reps.size());
  const Eigen::Index dim = h1.rows();

  std::vector<Sector> sectors(static_cast<std::size_t>(L));
  for (int k = 0; k < L; ++k) {
    Sector& s = sectors[static_cast<std::size_t>(k)];
    s.q = 2.0 * std::numbers::pi * k / L;
    s.local.assign(static_cast<std::size_t>(count), -1);
    for (std::int32_t a = 0; a < count; ++a) {
      if ((k * o.size[static_cast<std::size_t>(a)]) % L == 0) {
        s.local[static_cast<std::size_t>(a)] = static_cast<std::int32_t>(s.orbits.size());
        s.orbits.push_back(a);
      }
    }
    const auto d = static_cast<Eigen::Index>(s.orbits.size());
    // <b,k|H|a,k> = sqrt(R_a / R_b) sum_m e^{iqm} <T^m b|H|a>
    Eigen::MatrixXcd hk = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index ia = 0; ia < d; ++ia) {
      const auto a = static_cast<std::size_t>(s.orbits[static_cast<std::size_t>(ia)]);
      const auto column = static_cast<Eigen::Index>(o.reps[a]);
      for (Eigen::Index x = 0; x < dim; ++x) {
        const double h = h1(x, column);
        if (h == 0.0) continue;
        const auto b = static_cast<std::size_t>(o.orbit[static_cast<std::size_t>(x)]);
        const std::int32_t ib = s.local[b];
        if (ib < 0) continue;
        hk(ib, ia) += h * std::polar(std::sqrt(static_cast<double>(o.size[a]) / o.size[b]),
                                     s.q * o.shift[static_cast<std::size_t>(x)]);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(hk);
    if (eig.info() != Eigen::Success) fail(ErrorKind::Numeric, "stage-one eigensolver failed");
    Eigen::VectorXcd phases(d);
    for (Eigen::Index i = 0; i < d; ++i) phases[i] = std::polar(1.0, -eig.eigenvalues()[i] * prop.params.t1);
    s.u1 = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
  }

  // <T^r a|U1|T^s b> = (R_a R_b)^{-1/2} sum_k e^{-iq(r - s)} U1_k(a, b) depends on r - s only.
  prop.u1.resize(dim, dim);
  std::vector<cplx> by_offset(static_cast<std::size_t>(L));
  for (std::int32_t b = 0; b < count; ++b) {
    const int rb = o.size[static_cast<std::size_t>(b)];
    for (std::int32_t a = 0; a < count; ++a) {
      const int ra = o.size[static_cast<std::size_t>(a)];
      const double scale = 1.0 / std::sqrt(static_cast<double>(ra) * rb);
      std::fill(by_offset.begin(), by_offset.end(), cplx{});
      for (const Sector& s : sectors) {
        const std::int32_t ia = s.local[static_cast<std::size_t>(a)];
        const std::int32_t ib = s.local[static_cast<std::size_t>(b)];
        if (ia < 0 || ib < 0) continue;
        const cplx value = s.u1(ia, ib) * scale;
        for (int d = 0; d < L; ++d) by_offset[static_cast<std::size_t>(d)] += value * std::polar(1.0, -s.q * d);
      }
      std::uint64_t y = o.reps[static_cast<std::size_t>(b)];
      for (int sy = 0; sy < rb; ++sy, y = Basis::rotate(y, L)) {
        std::uint64_t x = o.reps[static_cast<std::size_t>(a)];
        for (int rx = 0; rx < ra; ++rx, x = Basis::rotate(x, L)) {
          prop.u1(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
              by_offset[static_cast<std::size_t>(((rx - sy) % L + L) % L)];
        }
      }
    }
  }
  if (!spectral) return;

  // U2 is constant on orbits, hence diagonal in every sector.
  SpectralForm form;
  form.eigenphases.resize(dim);
  form.eigenbasis = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::Index column = 0;
  for (const Sector& s : sectors) {
    const auto d = static_cast<Eigen::Index>(s.orbits.size());
    Eigen::VectorXcd u2(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      u2[i] = prop.u2_phases[static_cast<Eigen::Index>(o.reps[static_cast<std::size_t>(s.orbits[static_cast<std::size_t>(i)])])];
    }
    std::string warning;
    const auto part = decompose(u2.asDiagonal() * s.u1, warning);
    if (!part) {
      prop.spectral_warning = warning;
      return;
    }
    // The full-basis max-norm error is bounded by the sum of the sector errors.
    form.reconstruction_error += part->reconstruction_error;
    for (Eigen::Index j = 0; j < d; ++j, ++column) {
      form.eigenphases[column] = part->eigenphases[j];
      for (Eigen::Index i = 0; i < d; ++i) {
        const auto a = static_cast<std::size_t>(s.orbits[static_cast<std::size_t>(i)]);
        const cplx w = part->eigenbasis(i, j) / std::sqrt(static_cast<double>(o.size[a]));
        std::uint64_t x = o.reps[a];
        for (int r = 0; r < o.size[a]; ++r, x = Basis::rotate(x, L)) {
          form.eigenbasis(static_cast<Eigen::Index>(x), column) = w * std::polar(1.0, -s.q * r);
        }
      }
    }
  }
  if (form.reconstruction_error >= 1e-8) {
    std::ostringstream os;
    os << "spectral form rejected, reconstruction error " << form.reconstruction_error;
    prop.spectral_warning = os.str();
    return;
  }
  prop.spectral = std::move(form);
}

void check_budget(long long n_f, long long max_cycles) {
  if (n_f < 1) fail(ErrorKind::InvalidArgument, "n_f must be >= 1");
  if (n_f > max_cycles) {
    fail(ErrorKind::CapacityExceeded,
         "n_f = " + std::to_string(n_f) + " exceeds the cycle budget " + std::to_string(max_cycles));
  }
}

}  // namespace

FloquetPropagator compile_cycle(const ModelParams& params, const CompileOptions& options) {
  params.validate();
  if (params.atoms > options.limits.max_pure_atoms) {
    fail(ErrorKind::CapacityExceeded, "L = " + std::to_string(params.atoms) +
                                          " exceeds the pure-state cap of " +
                                          std::to_string(options.limits.max_pure_atoms));
  }

  FloquetPropagator prop;
  prop.params = params;
  prop.basis = Basis::make(options.basis, params.atoms);

  const StageHamiltonian h1 = build_hamiltonian(params, Stage::One, prop.basis, options.limits);
  const StageHamiltonian h2 = build_hamiltonian(params, Stage::Two, prop.basis, options.limits);

  prop.u2_phases.resize(h2.diagonal.size());
  for (Eigen::Index i = 0; i < h2.diagonal.size(); ++i) {
    prop.u2_phases[i] = std::polar(1.0, -h2.diagonal[i] * params.t2);
  }
  prop.population_diagonal = population_difference_diagonal(prop.basis);

  const bool by_momentum = options.momentum_sectors && prop.basis.kind() == BasisKind::Full &&
                           params.boundary == Boundary::Ring && params.atoms >= 2;
  if (by_momentum) {
    compile_by_momentum(prop, h1.dense, options.spectral);
    return prop;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h1.dense);
  if (eig.info() != Eigen::Success) {
    fail(ErrorKind::Numeric, "stage-one eigensolver failed");
  }
  const Eigen::MatrixXd& vecs = eig.eigenvectors();
  const Eigen::ArrayXd angle = eig.eigenvalues().array() * params.t1;
  // exp(-i H t1) = E cos E^T - i E sin E^T; both factors are real.
  const Eigen::MatrixXd cos_part = vecs * angle.cos().matrix().asDiagonal() * vecs.transpose();
  const Eigen::MatrixXd sin_part = vecs * angle.sin().matrix().asDiagonal() * vecs.transpose();
  prop.u1.resize(cos_part.rows(), cos_part.cols());
  prop.u1.real() = cos_part;
  prop.u1.imag() = -sin_part;

  if (options.spectral) {
    std::string warning;
    prop.spectral = decompose(prop.cycle_matrix(), warning);
    if (!prop.spectral) prop.spectral_warning = warning;
  }
  return prop;
}

Trajectory evolve(const FloquetPropagator& prop, const StateVector& psi0, long long n_f,
                  const EvolveOptions& options) {
  check_budget(n_f, options.max_cycles);
  if (psi0.amplitudes.size() != prop.dim()) {
    fail(ErrorKind::InvalidArgument, "initial state dimension does not match the propagator");
  }

  EvolveMode mode = options.mode;
  std::vector<std::string> warnings;
  if (mode == EvolveMode::Spectral && !prop.spectral) {
    if (!prop.spectral_warning) {
      fail(ErrorKind::InvalidArgument, "spectral mode needs a propagator compiled with spectral = true");
    }
    warnings.push_back(*prop.spectral_warning + "; fell back to iteration");
    mode = EvolveMode::Iterate;
  }

  const Eigen::VectorXd& diag = prop.population_diagonal;
  std::vector<double> p;
  std::vector<double> norms;
  p.reserve(static_cast<std::size_t>(options.stop_at_first_flip ? std::min<long long>(n_f, 4096) : n_f) + 1);
  p.push_back(population_imbalance(psi0.amplitudes, diag));
  if (options.record_norm) norms.push_back(psi0.norm());

  double max_drift = std::abs(psi0.norm() - 1.0);
  int previous_q = -1;
  auto stop_here = [&](long long n, double value) {
    if (!options.stop_at_first_flip || std::abs(value) <= kSignDeadBand) return false;
    previous_q = ((n % 2 == 0) ? value : -value) > 0.0 ? 1 : -1;
    return previous_q == 1;
  };

  if (mode == EvolveMode::Iterate) {
    Eigen::VectorXcd psi = psi0.amplitudes;
    Eigen::VectorXcd scratch(psi.size());
    for (long long n = 1; n <= n_f; ++n) {
      scratch.noalias() = prop.u1 * psi;
      psi = prop.u2_phases.cwiseProduct(scratch);
      const double norm = psi.norm();
      const double drift = std::abs(norm - 1.0);
      max_drift = std::max(max_drift, drift);
      if (drift > kNormDriftAbort) {
        std::ostringstream os;
        os << "norm drift " << drift << " at cycle " << n << " exceeds " << kNormDriftAbort;
        fail(ErrorKind::Numeric, os.str());
      }
      const double value = population_imbalance(psi, diag);
      p.push_back(value);
      if (options.record_norm) norms.push_back(norm);
      if (stop_here(n, value)) break;
    }
  } else {
    const SpectralForm& form = *prop.spectral;
    const Eigen::VectorXcd coeffs = form.eigenbasis.adjoint() * psi0.amplitudes;
    Eigen::VectorXcd rotated(coeffs.size());
    Eigen::VectorXcd psi(coeffs.size());
    for (long long n = 1; n <= n_f; ++n) {
      const double steps = static_cast<double>(n);
      for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        rotated[k] = coeffs[k] * std::polar(1.0, steps * form.eigenphases[k]);
      }
      psi.noalias() = form.eigenbasis * rotated;
      const double norm = psi.norm();
      max_drift = std::max(max_drift, std::abs(norm - 1.0));
      const double value = population_imbalance(psi, diag);
      p.push_back(value);
      if (options.record_norm) norms.push_back(norm);
      if (stop_here(n, value)) break;
    }
  }

  Trajectory t = make_trajectory(prop.params, std::move(p));
  t.norm = std::move(norms);
  t.max_norm_drift = max_drift;
  t.warnings = std::move(warnings);
  return t;
}

StateVector stroboscopic_state(const FloquetPropagator& prop, const StateVector& psi0, long long n) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "cycle index must be >= 0");
  if (psi0.amplitudes.size() != prop.dim()) {
    fail(ErrorKind::InvalidArgument, "initial state dimension does not match the propagator");
  }
  if (n == 0) return psi0;
  if (prop.spectral) {
    const SpectralForm& form = *prop.spectral;
    Eigen::VectorXcd coeffs = form.eigenbasis.adjoint() * psi0.amplitudes;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
      coeffs[k] *= std::polar(1.0, static_cast<double>(n) * form.eigenphases[k]);
    }
    return StateVector{form.eigenbasis * coeffs};
  }
  Eigen::VectorXcd psi = psi0.amplitudes;
  Eigen::VectorXcd scratch(psi.size());
  for (long long step = 1; step <= n; ++step) {
    scratch.noalias() = prop.u1 * psi;
    psi = prop.u2_phases.cwiseProduct(scratch);
    if (std::abs(psi.norm() - 1.0) > kNormDriftAbort) {
      fail(ErrorKind::Numeric, "norm drift exceeded at cycle " + std::to_string(step));
    }
  }
  return StateVector{std::move(psi)};
}

}  // namespace dtc
