#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "gbox/corrfn.hpp"
#include "gbox/rng.hpp"

namespace gbox {

// Generic evaluable correlation C(alpha, beta).
using CorrelationEvaluator = std::function<double(double, double)>;

// Joint outcome probabilities (pp, pm, mp, mm) for inputs (alpha, beta).
using BoxEvaluator = std::function<std::array<double, 4>(double, double)>;

// Chained-inequality angle assignment: Alice measures at odd indices,
// Bob at even indices, with a uniform precession delta between settings.
struct ChainedSetting {
  int n_settings = 4;  // even, >= 4
  double theta_plus = 0.0;
  double theta_minus = 0.0;
  double delta = 0.0;
  std::vector<double> alice_angles;  // a_1, a_3, ..., a_{N-1}
  std::vector<double> bob_angles;    // b_2, b_4, ..., b_N
};

struct WitnessReport {
  double lhs = 0.0;
  double classical_bound = 0.0;
  bool violated = false;
  int n_settings = 0;
  double margin = 0.0;  // statistical margin used for the verdict
};

ChainedSetting make_chained_setting(int n_settings, double theta_plus,
                                    double theta_minus);

// C(a1,b2) + C(a3,b2) + C(a3,b4) - C(a1,b4).
double chsh_value(const CorrelationEvaluator& c, double a1, double b2, double a3,
                  double b4);

struct ChshOptimum {
  double value = 0.0;
  std::array<double, 4> angles{};  // a1, b2, a3, b4
};

// Deterministic coarse-grid search plus coordinate-descent refinement.
ChshOptimum chsh_maximize(const CorrelationEvaluator& c, int grid = 24);

// N-setting chained inequality value; classical bound N - 2.
WitnessReport bci_value(const CorrelationEvaluator& c, const ChainedSetting& setting,
                        double margin = 0.0);

// K_J = sqrt(2) pi^2 J (2J+1)(4J+1) / 3.
double chained_k(int two_j);

struct EpsilonBound {
  double exact = 0.0;       // -K + sqrt(K^2 + Delta^2/4)
  double asymptotic = 0.0;  // Delta^2 / (8K)
};

EpsilonBound epsilon_bound(int two_j, double delta);

struct WitnessSearchResult {
  WitnessReport report;
  std::optional<ChainedSetting> setting;
  double epsilon = 0.0;        // 1 - C_rel(theta_plus)
  double delta = 0.0;          // 1 - C_rel(theta_minus)
  double epsilon_limit = 0.0;  // bound from the spin promise
  bool guaranteed = false;     // epsilon < epsilon_limit
  bool cap_exceeded = false;
};

// Projects C onto its relational core, measures purity at theta_plus and the
// gap at theta_minus, and scans even N for a violated chained inequality.
// When the purity premise holds, the scan starts inside the analytically
// predicted window; otherwise it runs from N = 4 up to the cap and reports
// the best margin found.
WitnessSearchResult witness_search(const CorrelationFunction& c, double theta_plus,
                                   double theta_minus, int n_cap = 10000);

struct ProtocolEstimate {
  double c_plus = 0.0;
  double c_plus_stderr = 0.0;
  long long shots_plus = 0;
  double c_minus = 0.0;
  double c_minus_stderr = 0.0;
  long long shots_minus = 0;
  WitnessSearchResult witness;
};

// Two-setting protocol: a shared uniform offset makes the effective
// correlation relational; Alice alternates between theta_plus/theta_minus.
// The estimates feed the witness search with a statistical margin of
// `sigmas` standard errors.
ProtocolEstimate simulate_witness_protocol(const BoxEvaluator& box, int two_j,
                                           double theta_plus, double theta_minus,
                                           long long shots, std::uint64_t seed,
                                           double sigmas = 4.0, int n_cap = 10000);

}  // namespace gbox
