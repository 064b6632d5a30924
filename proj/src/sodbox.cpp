#include "gbox/sodbox.hpp"

#include <cmath>
#include <stdexcept>

#include "gbox/tolerances.hpp"

namespace gbox {

namespace {

int outcome_slot(int a) {
  if (a != 1 && a != -1) throw std::invalid_argument("outcome must be +1 or -1");
  return a == 1 ? 0 : 1;
}

// Deterministic probe directions in general position: +/- axes plus a few
// tilted combinations.
std::vector<Eigen::VectorXd> probe_directions(int dim, int extra,
                                              std::uint64_t seed) {
  std::vector<Eigen::VectorXd> dirs;
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e(i) = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  RngStream rng(seed, 0, 0);
  for (int k = 0; k < extra; ++k) dirs.push_back(random_direction(dim, rng));
  return dirs;
}

}  // namespace

Eigen::VectorXd random_direction(int dim, RngStream& rng) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.next_gaussian();
  const double n = v.norm();
  return n > 0 ? Eigen::VectorXd(v / n) : random_direction(dim, rng);
}

double AffineBox::evaluate(int a, const Eigen::VectorXd& x) const {
  if (std::abs(x.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("input must be a unit vector");
  const int s = outcome_slot(a);
  return c0[s] + c[s].dot(x);
}

bool AffineBox::satisfies_invariants(double tol) const {
  if (std::abs(c0[0] + c0[1] - 1.0) > tol) return false;
  if ((c[0] + c[1]).norm() > tol) return false;
  for (int s = 0; s < 2; ++s) {
    if (c0[s] < -tol) return false;
    if (c[s].norm() > std::min(c0[s], 1.0 - c0[s]) + tol) return false;
  }
  return true;
}

AffineFit fit_affine(const std::vector<DirectionSample>& samples, int dim) {
  if (dim < 2 || dim > 16) throw std::invalid_argument("dim must lie in [2, 16]");
  if (static_cast<int>(samples.size()) < dim + 1)
    throw std::invalid_argument("need at least d + 1 directions");

  Eigen::MatrixXd design(samples.size(), dim + 1);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    design(i, 0) = 1.0;
    design.row(i).tail(dim) = samples[i].x.transpose();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < dim + 1)
    throw std::runtime_error("degenerate direction set: affine fit is rank-deficient");

  AffineFit fit;
  fit.box.dim = dim;
  double ss = 0.0;
  for (int s = 0; s < 2; ++s) {
    Eigen::VectorXd y(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) y(i) = samples[i].probs[s];
    const Eigen::VectorXd coef = qr.solve(y);
    fit.box.c0[s] = coef(0);
    fit.box.c[s] = coef.tail(dim);
    ss += (design * coef - y).squaredNorm();
  }
  fit.residual_rms = std::sqrt(ss / (2.0 * samples.size()));
  return fit;
}

namespace {

struct ConditionalSamples {
  std::vector<DirectionSample> samples;
  bool defined = true;
};

// Conditional box of one party given the other party's outcome and probe
// input, tabulated over a direction set.
ConditionalSamples conditional_samples(const SphereBoxEvaluator& box, bool condition_on_b,
                                       int cond_outcome_slot, const Eigen::VectorXd& fixed,
                                       const std::vector<Eigen::VectorXd>& free_dirs) {
  ConditionalSamples out;
  for (const auto& x : free_dirs) {
    const auto p = condition_on_b ? box(x, fixed) : box(fixed, x);
    // p layout: (pp, pm, mp, mm); index = 2*(a slot) + (b slot).
    double cond_marg = 0.0;
    std::array<double, 2> joint{};
    for (int s = 0; s < 2; ++s) {
      const int idx = condition_on_b ? 2 * s + cond_outcome_slot
                                     : 2 * cond_outcome_slot + s;
      joint[s] = p[idx];
      cond_marg += p[idx];
    }
    if (cond_marg < tol::kMarginalFloor) {
      out.defined = false;
      return out;
    }
    out.samples.push_back({x, {joint[0] / cond_marg, joint[1] / cond_marg}});
  }
  return out;
}

}  // namespace

UnbiasednessReport check_locally_unbiased(const SphereBoxEvaluator& box, int dim,
                                          double tolerance, std::uint64_t seed) {
  const auto probes = probe_directions(dim, 4, seed);
  const auto fit_dirs = probe_directions(dim, dim + 3, seed + 1);

  UnbiasednessReport rep;
  for (bool condition_on_b : {true, false}) {
    for (int slot = 0; slot < 2; ++slot) {
      for (const auto& fixed : probes) {
        const auto cond =
            conditional_samples(box, condition_on_b, slot, fixed, fit_dirs);
        if (!cond.defined) continue;  // nothing to prove for vanishing marginal
        const auto fit = fit_affine(cond.samples, dim);
        rep.worst_affine_residual =
            std::max(rep.worst_affine_residual, fit.residual_rms);
        for (int s = 0; s < 2; ++s)
          rep.worst_constant_gap =
              std::max(rep.worst_constant_gap, std::abs(fit.box.c0[s] - 0.5));
      }
    }
  }
  rep.unbiased = rep.worst_constant_gap <= tolerance;
  return rep;
}

double OmegaForm::evaluate(int a, int b, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) const {
  Eigen::VectorXd ea(dim + 1), eb(dim + 1);
  ea(0) = 1.0;
  ea.tail(dim) = a * x;
  eb(0) = 1.0;
  eb.tail(dim) = b * y;
  return ea.dot(omega * eb);
}

OmegaForm omega_from_box(const SphereBoxEvaluator& box, int dim, bool check_premises) {
  if (dim < 2 || dim > 16) throw std::invalid_argument("dim must lie in [2, 16]");
  if (check_premises) {
    const auto rep = check_locally_unbiased(box, dim);
    if (rep.worst_affine_residual > 1e-7)
      throw std::runtime_error("box does not transform fundamentally locally");
    if (!rep.unbiased)
      throw std::runtime_error("box is not locally unbiased");
  }

  // Probe vectors (1, x) with x in {e_1, ..., e_d, -e_1} span R^{d+1}.
  std::vector<Eigen::VectorXd> dirs;
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e(i) = 1.0;
    dirs.push_back(e);
  }
  {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e(0) = -1.0;
    dirs.push_back(e);
  }

  Eigen::MatrixXd basis(dim + 1, dim + 1);
  for (int i = 0; i <= dim; ++i) {
    basis(i, 0) = 1.0;
    basis.row(i).tail(dim) = dirs[i].transpose();
  }
  Eigen::MatrixXd p(dim + 1, dim + 1);
  for (int i = 0; i <= dim; ++i)
    for (int j = 0; j <= dim; ++j) p(i, j) = box(dirs[i], dirs[j])[0];  // a=b=+1

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
  OmegaForm form;
  form.dim = dim;
  form.omega = lu.solve(lu.solve(p).transpose()).transpose();
  return form;
}

SphereBoxEvaluator box_from_omega(const OmegaForm& form) {
  return [form](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return std::array<double, 4>{
        form.evaluate(+1, +1, x, y), form.evaluate(+1, -1, x, y),
        form.evaluate(-1, +1, x, y), form.evaluate(-1, -1, x, y)};
  };
}

ConeReport check_unital_positive(const OmegaForm& form, int starts, int grid_points,
                                 std::uint64_t seed) {
  const int d = form.dim;
  ConeReport rep;
  rep.unitality_value = 4.0 * form.omega(0, 0);
  rep.unital = std::abs(rep.unitality_value - 1.0) <= 1e-9;

  const Eigen::VectorXd col0 = form.omega.col(0).tail(d);
  const Eigen::VectorXd row0 = form.omega.row(0).tail(d);
  const Eigen::MatrixXd block = form.omega.bottomRightCorner(d, d);

  auto value = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return form.omega(0, 0) + row0.dot(y) + x.dot(col0) + x.dot(block * y);
  };
  // For fixed y the value is affine in x; the sphere minimum has closed form.
  auto best_x = [&](const Eigen::VectorXd& y) {
    const Eigen::VectorXd v = col0 + block * y;
    const double n = v.norm();
    return n > 1e-15 ? Eigen::VectorXd(-v / n)
                     : Eigen::VectorXd(Eigen::VectorXd::Unit(d, 0));
  };
  auto best_y = [&](const Eigen::VectorXd& x) {
    const Eigen::VectorXd v = row0 + block.transpose() * x;
    const double n = v.norm();
    return n > 1e-15 ? Eigen::VectorXd(-v / n)
                     : Eigen::VectorXd(Eigen::VectorXd::Unit(d, 0));
  };

  double worst = 1e300;
  RngStream rng(seed, 0, 0);
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd y = random_direction(d, rng);
    Eigen::VectorXd x = best_x(y);
    for (int it = 0; it < 64; ++it) {
      y = best_y(x);
      x = best_x(y);
    }
    const double v = value(x, y);
    if (v < worst) {
      worst = v;
      rep.worst_x = x;
      rep.worst_y = y;
    }
  }
  // Independent product-grid oracle.
  RngStream grid_rng(seed + 1, 0, 0);
  for (int g = 0; g < grid_points; ++g) {
    const Eigen::VectorXd y = random_direction(d, grid_rng);
    const Eigen::VectorXd x = best_x(y);
    const double v = value(x, y);
    if (v < worst) {
      worst = v;
      rep.worst_x = x;
      rep.worst_y = y;
    }
  }
  rep.worst_ray_value = worst;
  rep.positive = worst >= -tol::kConeSlack;
  return rep;
}

Behaviour222 pr_box() {
  Behaviour222 t{};
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      for (int ia = 0; ia < 2; ++ia)
        for (int ib = 0; ib < 2; ++ib) {
          const int a = ia == 0 ? +1 : -1;
          const int b = ib == 0 ? +1 : -1;
          const int target = (r == 1 && s == 1) ? -1 : +1;
          t[r][s][ia][ib] = (a * b == target) ? 0.5 : 0.0;
        }
  return t;
}

SphereBoxEvaluator pr_box_embedding(const Behaviour222& base, int dim) {
  if (dim < 2 || dim > 16) throw std::invalid_argument("dim must lie in [2, 16]");
  // Validate the base table: normalization and no-signalling.
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) {
      double sum = 0.0;
      for (int ia = 0; ia < 2; ++ia)
        for (int ib = 0; ib < 2; ++ib) {
          if (base[r][s][ia][ib] < -1e-12)
            throw std::invalid_argument("base behaviour has negative entries");
          sum += base[r][s][ia][ib];
        }
      if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("base behaviour is not normalized");
    }
  for (int ia = 0; ia < 2; ++ia) {
    if (std::abs(base[0][0][ia][0] + base[0][0][ia][1] - base[0][1][ia][0] -
                 base[0][1][ia][1]) > 1e-9 ||
        std::abs(base[1][0][ia][0] + base[1][0][ia][1] - base[1][1][ia][0] -
                 base[1][1][ia][1]) > 1e-9)
      throw std::invalid_argument("base behaviour signals A <- B");
  }
  for (int ib = 0; ib < 2; ++ib) {
    if (std::abs(base[0][0][0][ib] + base[0][0][1][ib] - base[1][0][0][ib] -
                 base[1][0][1][ib]) > 1e-9 ||
        std::abs(base[0][1][0][ib] + base[0][1][1][ib] - base[1][1][0][ib] -
                 base[1][1][1][ib]) > 1e-9)
      throw std::invalid_argument("base behaviour signals B <- A");
  }

  return [base](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const double la = 0.5 * (1.0 + x(0));
    const double lb = 0.5 * (1.0 + y(0));
    std::array<double, 4> out{};
    int idx = 0;
    for (int ia = 0; ia < 2; ++ia)
      for (int ib = 0; ib < 2; ++ib)
        out[idx++] = la * lb * base[0][0][ia][ib] +
                     la * (1 - lb) * base[0][1][ia][ib] +
                     (1 - la) * lb * base[1][0][ia][ib] +
                     (1 - la) * (1 - lb) * base[1][1][ia][ib];
    return out;
  };
}

SphereBoxEvaluator convex_mix(std::vector<SphereBoxEvaluator> boxes,
                              std::vector<double> weights) {
  if (boxes.empty() || boxes.size() != weights.size())
    throw std::invalid_argument("boxes and weights must be non-empty and matched");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("weights must sum to 1");
  return [boxes = std::move(boxes), weights = std::move(weights)](
             const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      const auto p = boxes[i](x, y);
      for (int k = 0; k < 4; ++k) out[k] += weights[i] * p[k];
    }
    return out;
  };
}

}  // namespace gbox
