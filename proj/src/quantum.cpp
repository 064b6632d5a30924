#include "gbox/quantum.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace gbox {

namespace {

using Complex = std::complex<double>;

Matrix2c pauli(int k) {
  Matrix2c s;
  switch (k) {
    case 0:
      s << 0, 1, 1, 0;
      break;
    case 1:
      s << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    default:
      s << 1, 0, 0, -1;
      break;
  }
  return s;
}

Matrix4c kron2(const Matrix2c& x, const Matrix2c& y) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = x(i, j) * y;
  return out;
}

}  // namespace

Matrix4c werner_state(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
  Eigen::Vector4cd singlet;
  singlet << 0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0;
  return p * (singlet * singlet.adjoint()) +
         (1.0 - p) / 4.0 * Matrix4c::Identity();
}

bool is_valid_state(const Matrix4c& rho, double tol) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) return false;
  if (std::abs(rho.trace().real() - 1.0) > 1e-12) return false;
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho);
  return es.eigenvalues().minCoeff() >= -tol;
}

Matrix2c polarizer_observable(double theta) {
  Matrix2c m;
  m << std::cos(2 * theta), std::sin(2 * theta), std::sin(2 * theta),
      -std::cos(2 * theta);
  return m;
}

double quantum_correlation(const Matrix4c& rho, double theta_a, double theta_b) {
  return (rho * kron2(polarizer_observable(theta_a), polarizer_observable(theta_b)))
      .trace()
      .real();
}

double quantum_joint(const Matrix4c& rho, int a, int b, double theta_a,
                     double theta_b) {
  if ((a != 1 && a != -1) || (b != 1 && b != -1))
    throw std::invalid_argument("outcomes must be +1 or -1");
  const Matrix2c ea =
      0.5 * (Matrix2c::Identity() + double(a) * polarizer_observable(theta_a));
  const Matrix2c eb =
      0.5 * (Matrix2c::Identity() + double(b) * polarizer_observable(theta_b));
  return (rho * kron2(ea, eb)).trace().real();
}

BoxEvaluator quantum_box(const Matrix4c& rho) {
  return [rho](double alpha, double beta) {
    return std::array<double, 4>{
        quantum_joint(rho, +1, +1, alpha, beta), quantum_joint(rho, +1, -1, alpha, beta),
        quantum_joint(rho, -1, +1, alpha, beta), quantum_joint(rho, -1, -1, alpha, beta)};
  };
}

Matrix4c random_pure_state(RngStream& rng) {
  Eigen::Vector4cd psi;
  for (int i = 0; i < 4; ++i)
    psi(i) = Complex(rng.next_gaussian(), rng.next_gaussian());
  psi.normalize();
  return psi * psi.adjoint();
}

Matrix2c bloch_effect(int a, const Eigen::VectorXd& direction) {
  if (a != 1 && a != -1) throw std::invalid_argument("outcome must be +1 or -1");
  if (std::abs(direction.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("direction must be a unit vector");
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  for (int i = 0; i < std::min<int>(3, direction.size()); ++i) v(i) = direction(i);
  Matrix2c e = Matrix2c::Identity();
  for (int k = 0; k < 3; ++k) e += double(a) * v(k) * pauli(k);
  return 0.5 * e;
}

std::array<double, 4> bloch_box(const Matrix4c& rho, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& y) {
  std::array<double, 4> p{};
  int idx = 0;
  for (int a : {+1, -1})
    for (int b : {+1, -1})
      p[idx++] = (rho * kron2(bloch_effect(a, x), bloch_effect(b, y))).trace().real();
  return p;
}

std::vector<double> oscillator_distribution(const OscillatorSpec& spec, double t) {
  const auto k = static_cast<Eigen::Index>(spec.levels.size());
  if (spec.amplitudes.size() != k)
    throw std::invalid_argument("amplitude count must match level count");
  Eigen::VectorXcd psi(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double energy = spec.omega * (spec.levels[i] + 0.5);
    psi(i) = std::exp(Complex(0, -energy * t)) * spec.amplitudes(i);
  }
  std::vector<double> probs;
  probs.reserve(spec.effects.size());
  for (const auto& m : spec.effects)
    probs.push_back((psi.adjoint() * m * psi).value().real());
  return probs;
}

OscillatorSeries oscillator_series(const OscillatorSpec& spec, int outcome,
                                   int samples) {
  int max_diff = 0;
  for (int a : spec.levels)
    for (int b : spec.levels) max_diff = std::max(max_diff, std::abs(a - b));

  // Basis: constant plus cos/sin at every integer multiple of omega up to the
  // largest level gap; frequencies absent from the occupied differences must
  // fit to zero.
  const int n_freq = max_diff;
  const Eigen::Index cols = 1 + 2 * n_freq;
  if (samples < static_cast<int>(cols) * 2) samples = static_cast<int>(cols) * 2;

  const double period = 2.0 * std::numbers::pi / spec.omega;
  Eigen::MatrixXd design(samples, cols);
  Eigen::VectorXd y(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = period * i / samples;
    design(i, 0) = 1.0;
    for (int f = 1; f <= n_freq; ++f) {
      design(i, 2 * f - 1) = std::cos(f * spec.omega * t);
      design(i, 2 * f) = std::sin(f * spec.omega * t);
    }
    y(i) = oscillator_distribution(spec, t).at(outcome);
  }
  const Eigen::VectorXd x = design.colPivHouseholderQr().solve(y);

  OscillatorSeries out;
  out.constant = x(0);
  for (int f = 1; f <= n_freq; ++f)
    out.terms[f] = TermCoeff{x(2 * f - 1), x(2 * f)};
  out.residual_rms = std::sqrt((design * x - y).squaredNorm() / samples);
  return out;
}

}  // namespace gbox
