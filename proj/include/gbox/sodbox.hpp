#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "gbox/rng.hpp"

namespace gbox {

// Single-party affine box over the unit sphere S^{d-1}:
// P(a|x) = c0[a] + c[a].x with binary outcomes (index 0 -> a=+1, 1 -> a=-1).
struct AffineBox {
  int dim = 2;
  std::array<double, 2> c0{0.5, 0.5};
  std::array<Eigen::VectorXd, 2> c;

  double evaluate(int a, const Eigen::VectorXd& x) const;
  bool satisfies_invariants(double tol = 1e-9) const;
};

// Bipartite box over S^{d-1} x S^{d-1}; returns (pp, pm, mp, mm).
using SphereBoxEvaluator =
    std::function<std::array<double, 4>(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

struct AffineFit {
  AffineBox box;
  double residual_rms = 0.0;
};

struct DirectionSample {
  Eigen::VectorXd x;
  std::array<double, 2> probs{};  // P(+1|x), P(-1|x)
};

// Least-squares affine fit; residual below tolerance certifies that the box
// transforms under rotations through the trivial-plus-fundamental blocks.
AffineFit fit_affine(const std::vector<DirectionSample>& samples, int dim);

struct UnbiasednessReport {
  bool unbiased = false;
  double worst_constant_gap = 0.0;  // max |fitted c0 - 1/2|
  double worst_affine_residual = 0.0;
};

// Fits every conditional box affinely over probe directions and tests the
// fitted constants against 1/2.
UnbiasednessReport check_locally_unbiased(const SphereBoxEvaluator& box, int dim,
                                          double tolerance = 1e-8,
                                          std::uint64_t seed = 1);

// Bilinear form on the (d+1)-cone: P(a,b|x,y) = (1, a x)^T Omega (1, b y).
struct OmegaForm {
  int dim = 2;
  Eigen::MatrixXd omega;  // (d+1) x (d+1)

  double evaluate(int a, int b, const Eigen::VectorXd& x,
                  const Eigen::VectorXd& y) const;
};

// Recovers Omega by solving the linear probe system; the premises
// (fundamental local transformation, local unbiasedness) are checked first.
OmegaForm omega_from_box(const SphereBoxEvaluator& box, int dim,
                         bool check_premises = true);

SphereBoxEvaluator box_from_omega(const OmegaForm& form);

struct ConeReport {
  bool unital = false;
  bool positive = false;
  double unitality_value = 0.0;  // u^T Omega u, u = (2, 0, ..., 0)
  double worst_ray_value = 0.0;  // min over extremal ray pairs
  Eigen::VectorXd worst_x, worst_y;
};

// Unitality is an exact entry test; positivity minimizes over the product of
// spheres by alternating closed-form sphere minimization from multiple
// starts, cross-checked against a product-grid oracle.
ConeReport check_unital_positive(const OmegaForm& form, int starts = 32,
                                 int grid_points = 100, std::uint64_t seed = 7);

// (2,2,2) behaviour table indexed [setting_r][setting_t][a][b] with
// outcome index 0 -> +1, 1 -> -1.
using Behaviour222 = std::array<std::array<std::array<std::array<double, 2>, 2>, 2>, 2>;

Behaviour222 pr_box();

// Interpolates a (2,2,2) behaviour over the sphere through the first input
// coordinate; reproduces the base table at x, y = +/-e1 and transforms
// fundamentally locally, but is not locally unbiased in general.
SphereBoxEvaluator pr_box_embedding(const Behaviour222& base, int dim);

SphereBoxEvaluator convex_mix(std::vector<SphereBoxEvaluator> boxes,
                              std::vector<double> weights);

// Uniform direction on S^{d-1} by Gaussian normalization.
Eigen::VectorXd random_direction(int dim, RngStream& rng);

}  // namespace gbox
