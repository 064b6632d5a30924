#include "gbox/jointbox.hpp"

#include <cmath>
#include <numbers>

#include "gbox/tolerances.hpp"

namespace gbox {

namespace {

// Sum of two blocks as a plain series (no spin-bound re-check needed since
// both blocks share the same bound).
CorrelationFunction block_sum(const CorrelationFunction& x, const CorrelationFunction& y) {
  CorrelationFunction s = x;
  s += y;
  return s;
}

}  // namespace

double JointBox::normalization_residual() const {
  double worst = 0.0;
  CorrelationFunction total = blocks_[0];
  for (int i = 1; i < 4; ++i) total += blocks_[i];
  worst = std::max(worst, std::abs(total.constant() - 1.0));
  for (const auto& [p, c] : total.terms())
    worst = std::max({worst, std::abs(c.cos_coeff), std::abs(c.sin_coeff)});
  return worst;
}

JointBox from_correlation(const CorrelationFunction& f) {
  if (max_abs(f) > 1.0 + tol::kBoundSlack)
    throw std::invalid_argument("correlation function exceeds 1 in magnitude");
  JointBox box(f.two_j());
  for (int a : {+1, -1})
    for (int b : {+1, -1}) {
      auto& blk = box.block(a, b);
      blk.set_constant(0.25 + 0.25 * a * b * f.constant());
      for (const auto& [p, c] : f.terms())
        blk.add_term(p, 0.25 * a * b * c.cos_coeff, 0.25 * a * b * c.sin_coeff);
    }
  return box;
}

CorrelationFunction correlation_of(const JointBox& box) {
  CorrelationFunction r(box.two_j());
  for (int a : {+1, -1})
    for (int b : {+1, -1}) {
      const auto& blk = box.block(a, b);
      const double sign = a * b;
      r.set_constant(r.constant() + sign * blk.constant());
      for (const auto& [p, c] : blk.terms())
        r.add_term(p, sign * c.cos_coeff, sign * c.sin_coeff);
    }
  return r;
}

SignallingReport check_no_signalling(const JointBox& box) {
  double worst = 0.0;
  // A's marginal: sum over b, terms with n != 0 must vanish.
  for (int a : {+1, -1}) {
    const auto s = block_sum(box.block(a, +1), box.block(a, -1));
    for (const auto& [p, c] : s.terms())
      if (p.n != 0)
        worst = std::max({worst, std::abs(c.cos_coeff), std::abs(c.sin_coeff)});
  }
  // B's marginal: sum over a, terms with m != 0 must vanish.
  for (int b : {+1, -1}) {
    const auto s = block_sum(box.block(+1, b), box.block(-1, b));
    for (const auto& [p, c] : s.terms())
      if (p.m != 0)
        worst = std::max({worst, std::abs(c.cos_coeff), std::abs(c.sin_coeff)});
  }
  return {worst <= tol::kCoeffEq, worst};
}

double marginal(const JointBox& box, Party party, int outcome, double angle) {
  const auto report = check_no_signalling(box);
  if (!report.no_signalling)
    throw std::runtime_error("box signals: marginal is ill-defined");
  if (party == Party::A) {
    const auto s = block_sum(box.block(outcome, +1), box.block(outcome, -1));
    return s.evaluate(angle, 0.0);
  }
  const auto s = block_sum(box.block(+1, outcome), box.block(-1, outcome));
  return s.evaluate(0.0, angle);
}

std::function<double(int, double)> conditional_box(const JointBox& box,
                                                   Party conditioning_party,
                                                   int outcome, double angle) {
  const double p_cond = marginal(box, conditioning_party, outcome, angle);
  if (p_cond < tol::kMarginalFloor)
    throw std::runtime_error("conditioning marginal vanishes: conditional box undefined");
  if (conditioning_party == Party::B) {
    return [box, outcome, angle, p_cond](int a, double alpha) {
      return box.evaluate_joint(a, outcome, alpha, angle) / p_cond;
    };
  }
  return [box, outcome, angle, p_cond](int b, double beta) {
    return box.evaluate_joint(outcome, b, angle, beta) / p_cond;
  };
}

bool is_valid_box(const JointBox& box, int grid) {
  if (box.normalization_residual() > tol::kCoeffEq) return false;
  const double step = 2.0 * std::numbers::pi / grid;
  for (int a : {+1, -1})
    for (int b : {+1, -1})
      for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j)
          if (box.evaluate_joint(a, b, i * step, j * step) < -tol::kProbSlack)
            return false;
  return true;
}

}  // namespace gbox
