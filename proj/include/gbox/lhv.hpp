#pragma once

#include <array>
#include <utility>
#include <vector>

#include "gbox/corrfn.hpp"
#include "gbox/rng.hpp"

namespace gbox {

// Hidden-variable construction for a zero-constant bounded series: N
// independent circle-valued variables, a window response for one party and
// an affine response for the other. The exact correlation of the model is
// scale * f, where f is the input function (held in freq_pairs/b_vectors as
// b_j = (c_j, -s_j)).
struct LhvModel {
  int n_terms = 0;
  double xi = 0.0;  // window half-width, in (0, pi)
  std::vector<FreqPair> freq_pairs;
  std::vector<std::array<double, 2>> b_vectors;
  double scale = 0.0;  // sqrt(2/N) (xi/pi)^{N-1} sin(xi) / pi
};

// Zero-constant model plus a convex admixture of a deterministic
// perfectly (anti-)correlated response, realizing a nonzero constant term.
struct CertifiedLhv {
  double const_weight = 0.0;  // |c0|
  int const_sign = +1;
  bool has_model = false;
  LhvModel model;
};

struct GammaResult {
  double gamma = 0.0;     // optimum of sqrt(2/N)(x/pi)^{N-1} sin(x)/pi
  double xi_star = 0.0;   // maximizing window half-width
  double lower_bound = 0.0;  // sqrt(2) e^{-1} N^{-3/2}
};

struct LocalityCertificate {
  bool passed = false;     // passed => an explicit LHV model exists
  double deviation = 0.0;  // max |C - C00|
  double bound = 0.0;      // gamma * (1 - |C00|)
  double gamma = 0.0;
  int n_used = 0;          // term count the bound was computed for
};

GammaResult gamma_n(int n);

// Worst-case constant for spin bound J (two_j >= 1): N = 4J(2J+1) terms.
double gamma_j(int two_j);

// Noise certificate: max|C - C00| <= gamma_N (1 - |C00|) guarantees an LHV
// model. Uses the sharper bound from the actual term count of f.
LocalityCertificate locality_certificate(const CorrelationFunction& f);

// Requires zero constant, max|f| <= 1, at least one term, xi in (0, pi).
LhvModel build_lhv(const CorrelationFunction& f, double xi);

// Exact closed-form correlation of a model (never computed by quadrature).
CorrelationFunction model_correlation(const LhvModel& model);

CorrelationFunction certified_correlation(const CertifiedLhv& model);

// Full construction behind a passing certificate; throws if it did not pass.
CertifiedLhv build_certified_lhv(const CorrelationFunction& f);

std::pair<int, int> sample_lhv(const LhvModel& model, double alpha, double beta,
                               RngStream& rng);

std::pair<int, int> sample_certified(const CertifiedLhv& model, double alpha,
                                     double beta, RngStream& rng);

// Deterministic shared-angle model whose responses are a square wave of
// period 2pi/n; its exact correlation is a triangle wave with C(0) = +1 and
// C(m pi / n) = -1 for odd m <= n.
struct SquareWaveModel {
  int m = 1;
  int n = 1;

  // Exact overlap integral of the two square waves.
  double correlation(double theta) const;
  std::pair<int, int> sample(double alpha, double beta, RngStream& rng) const;
};

SquareWaveModel build_squarewave_lhv(int m, int n);

// The +/-1 square wave of period 2pi/n used by the model.
int square_wave(double x, int n);

}  // namespace gbox
