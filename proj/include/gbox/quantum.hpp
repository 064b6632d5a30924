#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "gbox/chained.hpp"
#include "gbox/corrfn.hpp"
#include "gbox/jointbox.hpp"
#include "gbox/rng.hpp"

namespace gbox {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

// p |psi-><psi-| + (1-p)/4 * I, with the singlet (|01> - |10>)/sqrt(2).
Matrix4c werner_state(double p);

// Hermitian, trace 1, eigenvalues >= -1e-10.
bool is_valid_state(const Matrix4c& rho, double tol = 1e-10);

// M_theta = [[cos 2t, sin 2t], [sin 2t, -cos 2t]]; eigenvalues +/-1.
Matrix2c polarizer_observable(double theta);

// tr(rho M_a x M_b); equals -p cos 2(alpha - beta) on the Werner family.
double quantum_correlation(const Matrix4c& rho, double theta_a, double theta_b);

// P(a,b|alpha,beta) = tr[rho E_a(alpha) x E_b(beta)], E_+/- = (I +/- M)/2.
double quantum_joint(const Matrix4c& rho, int a, int b, double theta_a,
                     double theta_b);

// Evaluator returning (pp, pm, mp, mm) for polarizer settings.
BoxEvaluator quantum_box(const Matrix4c& rho);

// Haar-ish random pure two-qubit state: 8 standard Gaussians, normalized.
Matrix4c random_pure_state(RngStream& rng);

// E = (I + a v.sigma)/2 where v is the direction projected to 3 components
// (zero-padded for d = 2, truncated for d > 3). Requires |direction| = 1.
Matrix2c bloch_effect(int a, const Eigen::VectorXd& direction);

// Bipartite SO(d)-box from a two-qubit state and Bloch-vector effects.
// Returns (pp, pm, mp, mm) at unit directions x, y.
std::array<double, 4> bloch_box(const Matrix4c& rho, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& y);

// Finite-level oscillator at frequency omega (hbar = 1): pure amplitudes on
// the occupied levels plus a POVM in the occupied-level subspace.
struct OscillatorSpec {
  std::vector<int> levels;
  Eigen::VectorXcd amplitudes;        // normalized
  std::vector<Eigen::MatrixXcd> effects;  // sum to identity
  double omega = 1.0;
};

// Outcome distribution after evolving for time t.
std::vector<double> oscillator_distribution(const OscillatorSpec& spec, double t);

struct OscillatorSeries {
  double constant = 0.0;
  // frequency (in units of omega) -> (cos, sin) coefficient
  std::map<int, TermCoeff> terms;
  double residual_rms = 0.0;
};

// Fits P(a|t) for one outcome to a trig series over the occupied
// energy-difference frequencies.
OscillatorSeries oscillator_series(const OscillatorSpec& spec, int outcome,
                                   int samples = 512);

}  // namespace gbox
