#include "dtc/oracle.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "dtc/error.hpp"
#include "dtc/floquet.hpp"

namespace dtc::oracle {

using cplx = std::complex<double>;

namespace {

constexpr double kImagResidueLimit = 1e-9;

cplx phase(double angle) { return std::polar(1.0, angle); }

// Real-valued powers of X^2 = X+ X-, checked for the transcription residue.
double x_squared(const Factors& f) {
  const cplx product = f.x_plus * f.x_minus;
  if (std::abs(product.imag()) > kImagResidueLimit) {
    fail(ErrorKind::Numeric, "X+ X- is not real; oracle factors are inconsistent");
  }
  return product.real();
}

}  // namespace

Factors factors(const ModelParams& params) {
  Factors f;
  const double omega = params.rabi();
  const double delta = params.delta;
  f.omega_e = std::hypot(omega, delta);
  const double angle = f.omega_e * params.t1;
  const double c = std::cos(angle);
  const double s = f.omega_e > 0.0 ? std::sin(angle) / f.omega_e : params.t1;
  f.x_plus = cplx(c, delta * s);
  f.x_minus = cplx(c, -delta * s);
  f.y = omega * s;
  f.x = std::sqrt(std::max(0.0, (f.x_plus * f.x_minus).real()));
  f.theta1 = delta * params.t1 / 2.0;
  f.theta2 = delta * params.t2;
  f.theta3 = params.interaction * params.t2;
  f.phi1 = 2.0 * f.theta1 + f.theta2;
  return f;
}

Eigen::Matrix4cd two_atom_u1(const Factors& f) {
  const cplx i(0.0, 1.0);
  const cplx xp = f.x_plus;
  const cplx xm = f.x_minus;
  const double y = f.y;
  const double x2 = x_squared(f);
  const double y2 = y * y;
  const cplx up = phase(2.0 * f.theta1);
  const cplx dn = phase(-2.0 * f.theta1);
  Eigen::Matrix4cd u;
  u << xp * xp * up, i * xp * y * up, i * xp * y * up, -y2 * up,
       i * xp * y, x2, -y2, i * xm * y,
       i * xp * y, -y2, x2, i * xm * y,
       -y2 * dn, i * xm * y * dn, i * xm * y * dn, xm * xm * dn;
  return u;
}

Eigen::Vector4cd two_atom_u2(const Factors& f) {
  return Eigen::Vector4cd(1.0, phase(-f.theta2), phase(-f.theta2), phase(-(2.0 * f.theta2 + f.theta3)));
}

double two_atom_matrix_p(const Factors& f, int n) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "cycle index must be >= 0");
  const Eigen::Matrix4cd u1 = two_atom_u1(f);
  const Eigen::Vector4cd u2 = two_atom_u2(f);
  Eigen::Vector4cd psi(1.0, 0.0, 0.0, 0.0);
  for (int k = 0; k < n; ++k) psi = u2.cwiseProduct(u1 * psi);
  return std::norm(psi[3]) - std::norm(psi[0]);
}

double two_atom_p2(const Factors& f) {
  const double X2 = x_squared(f);
  const double Y2 = f.y * f.y;
  const cplx xp2 = f.x_plus * f.x_plus;
  const double base = -std::pow(X2, 4) + 2.0 * X2 * X2 * Y2 * Y2 - std::pow(Y2, 4);
  const cplx bracket = 2.0 * xp2 * Y2 * Y2 * (Y2 + X2) * phase(f.phi1 + f.theta3) +
                       2.0 * xp2 * X2 * Y2 * (Y2 + X2) * phase(f.phi1);
  return base + 2.0 * bracket.real();
}

double two_atom_p3(const Factors& f) {
  const double X2 = x_squared(f);
  const double Y2 = f.y * f.y;
  const double X4 = X2 * X2;
  const double X6 = X4 * X2;
  const double X8 = X4 * X4;
  const double Y4 = Y2 * Y2;
  const double Y6 = Y4 * Y2;
  const double Y8 = Y4 * Y4;
  const double Y10 = Y8 * Y2;
  const double Y12 = Y6 * Y6;
  const cplx xp2 = f.x_plus * f.x_plus;
  const cplx xp4 = xp2 * xp2;
  const cplx xp6 = xp4 * xp2;
  const double p = f.phi1;
  const double t = f.theta3;

  const double base = -X6 * X6 - 5.0 * X8 * Y4 - 16.0 * X6 * Y6 - 11.0 * X4 * Y8 + Y12;
  cplx bracket = 0.0;
  bracket += 2.0 * xp6 * Y4 * (X2 + Y2) * phase(3.0 * p + 2.0 * t);
  bracket += 2.0 * xp4 * Y4 * (X4 - Y4) * phase(2.0 * p + 2.0 * t);
  bracket -= 2.0 * xp6 * Y4 * (X2 + Y2) * phase(3.0 * p + t);
  bracket += 4.0 * xp4 * Y4 * (X4 + 2.0 * X2 * Y2 + Y4) * phase(2.0 * p + t);
  bracket += 2.0 * xp2 * Y4 * (4.0 * X6 - 6.0 * X4 * Y2 + 9.0 * X2 * Y4 - Y6) * phase(p + t);
  bracket += 2.0 * xp4 * X2 * Y2 * (X4 - Y4) * phase(2.0 * p);
  bracket += 2.0 * xp2 * Y2 * (2.0 * X8 + 8.0 * X6 * Y2 - 10.0 * X4 * Y4 + 7.0 * X2 * Y6 - Y10) * phase(p);
  bracket += 2.0 * X2 * Y4 * (X6 + X4 * Y2 - X2 * Y4 - Y6) * phase(t);
  return base + 2.0 * bracket.real();
}

double three_atom_p2(const Factors& f) {
  const double X2 = x_squared(f);
  const double Y2 = f.y * f.y;
  const double S = X2 + Y2;
  const cplx xp2 = f.x_plus * f.x_plus;
  const cplx xp4 = xp2 * xp2;
  const double p = f.phi1;
  const double t = f.theta3;

  const double base = -(X2 - Y2) * (X2 - Y2) * std::pow(S, 4);
  cplx bracket = 0.0;
  bracket += 2.0 * xp4 * Y2 * Y2 * Y2 * (2.0 * X2 - Y2) * phase(2.0 * p + 3.0 * t);
  bracket += 2.0 * xp2 * Y2 * Y2 * Y2 * S * S * phase(p + 2.0 * t);
  bracket += 4.0 * xp2 * X2 * Y2 * Y2 * S * phase(p + t);
  bracket += 2.0 * xp2 * X2 * X2 * Y2 * S * S * phase(p);
  return base + 2.0 * bracket.real();
}

std::uint64_t phase_combination_count(int atoms, int cycles) {
  if (atoms < 2 || cycles < 2) fail(ErrorKind::InvalidArgument, "phase count needs L >= 2 and n >= 2");
  const long long exponent = static_cast<long long>(atoms - 1) + 2LL * (cycles - 2);
  if (exponent > 63) fail(ErrorKind::CapacityExceeded, "phase count overflows 64 bits");
  return std::uint64_t{1} << exponent;
}

double Draw::error_l2_n2() const { return std::abs(ed_l2_n2 - cf_l2_n2); }
double Draw::error_l2_n3() const { return std::abs(ed_l2_n3 - cf_l2_n3); }
double Draw::error_l3_n2() const { return std::abs(ed_l3_n2 - cf_l3_n2); }
double Draw::max_error() const { return std::max({error_l2_n2(), error_l2_n3(), error_l3_n2()}); }

namespace {

ModelParams simplified(int atoms, double epsilon, double delta, double interaction, double t2) {
  ModelParams params;
  params.variant = Variant::Simplified;
  params.atoms = atoms;
  params.epsilon = epsilon;
  params.delta = delta;
  params.interaction = interaction;
  params.t1 = 1.0;
  params.t2 = t2;
  params.boundary = Boundary::Ring;
  return params;
}

std::vector<double> ed_series(const ModelParams& params, long long n_f) {
  const FloquetPropagator prop = compile_cycle(params);
  const Basis& basis = prop.basis;
  return evolve(prop, StateVector::ground(basis), n_f).p;
}

}  // namespace

Draw evaluate_draw(double epsilon, double delta, double interaction, double t2) {
  Draw d;
  d.epsilon = epsilon;
  d.delta = delta;
  d.interaction = interaction;
  d.t2 = t2;

  const ModelParams two = simplified(2, epsilon, delta, interaction, t2);
  const ModelParams three = simplified(3, epsilon, delta, interaction, t2);
  const auto p2 = ed_series(two, 3);
  const auto p3 = ed_series(three, 2);
  d.ed_l2_n2 = p2[2];
  d.ed_l2_n3 = p2[3];
  d.ed_l3_n2 = p3[2];

  const Factors f = factors(two);
  d.cf_l2_n2 = two_atom_p2(f);
  d.cf_l2_n3 = two_atom_p3(f);
  d.cf_l3_n2 = three_atom_p2(f);
  return d;
}

CheckReport run_check(const CheckOptions& options) {
  if (options.draws < 1) fail(ErrorKind::InvalidArgument, "draws must be >= 1");
  CheckReport report;
  report.options = options;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> coupling(-0.3, 0.3);
  std::uniform_real_distribution<double> second(1.0, 20.0);

  for (int k = 0; k < options.draws; ++k) {
    const double epsilon = unit(rng);
    const double delta = unit(rng);
    const double interaction = coupling(rng);
    const double t2 = second(rng);
    Draw d = evaluate_draw(epsilon, delta, interaction, t2);

    const bool a = d.error_l2_n2() <= options.tolerance;
    const bool b = d.error_l2_n3() <= options.tolerance;
    const bool c = d.error_l3_n2() <= options.tolerance;
    report.matched_l2_n2 += a;
    report.matched_l2_n3 += b;
    report.matched_l3_n2 += c;
    report.matched += (a && b && c);
    report.worst_l2_n2 = std::max(report.worst_l2_n2, d.error_l2_n2());
    report.worst_l2_n3 = std::max(report.worst_l2_n3, d.error_l2_n3());
    report.worst_l3_n2 = std::max(report.worst_l3_n2, d.error_l3_n2());
    report.draws.push_back(d);
  }
  return report;
}

std::string CheckReport::summary() const {
  std::ostringstream os;
  const auto total = draws.size();
  os << matched << "/" << total << " matched <= " << options.tolerance;
  os << " (L=2 n=2: " << matched_l2_n2 << "/" << total << ", worst " << worst_l2_n2;
  os << "; L=2 n=3: " << matched_l2_n3 << "/" << total << ", worst " << worst_l2_n3;
  os << "; L=3 n=2: " << matched_l3_n2 << "/" << total << ", worst " << worst_l3_n2 << ")";
  return os.str();
}

}  // namespace dtc::oracle
