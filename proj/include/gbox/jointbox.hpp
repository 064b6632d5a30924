#pragma once

#include <array>
#include <functional>

#include "gbox/corrfn.hpp"

namespace gbox {

// Outcome labels are fixed to {+1, -1} for both parties.
enum class Party { A, B };

inline int outcome_index(int a, int b) {
  if ((a != 1 && a != -1) || (b != 1 && b != -1))
    throw std::invalid_argument("outcomes must be +1 or -1");
  return (a == 1 ? 0 : 2) + (b == 1 ? 0 : 1);
}

// Full conditional probability table P(a,b|alpha,beta) stored as four
// coefficient series, one per outcome pair, in the order (+,+), (+,-),
// (-,+), (-,-).
class JointBox {
 public:
  JointBox() = default;
  explicit JointBox(int two_j) : blocks_{CorrelationFunction(two_j),
                                         CorrelationFunction(two_j),
                                         CorrelationFunction(two_j),
                                         CorrelationFunction(two_j)} {}
  explicit JointBox(std::array<CorrelationFunction, 4> blocks)
      : blocks_(std::move(blocks)) {}

  int two_j() const { return blocks_[0].two_j(); }
  const CorrelationFunction& block(int a, int b) const {
    return blocks_[outcome_index(a, b)];
  }
  CorrelationFunction& block(int a, int b) { return blocks_[outcome_index(a, b)]; }
  const std::array<CorrelationFunction, 4>& blocks() const { return blocks_; }

  double evaluate_joint(int a, int b, double alpha, double beta) const {
    return block(a, b).evaluate(alpha, beta);
  }

  // Coefficient-level normalization: the four constants sum to 1, every
  // frequency term sums to 0. Returns the worst residual.
  double normalization_residual() const;

 private:
  std::array<CorrelationFunction, 4> blocks_;
};

struct SignallingReport {
  bool no_signalling = false;
  double worst_residual = 0.0;
};

// P(a,b) = 1/4 + 1/4 a b C(alpha,beta). Rejects unbounded input.
JointBox from_correlation(const CorrelationFunction& f);

// Signed coefficient sum P(++) + P(--) - P(+-) - P(-+).
CorrelationFunction correlation_of(const JointBox& box);

// Coefficient-level test: summing out one party's outcome must leave no
// dependence on that party's partner angle.
SignallingReport check_no_signalling(const JointBox& box);

// Single-party marginal; raises if the box signals beyond kCoeffEq.
double marginal(const JointBox& box, Party party, int outcome, double angle);

// P(a | free angle) conditioned on the other party's outcome at a fixed
// angle. Errors when the conditioning marginal is below kMarginalFloor.
std::function<double(int, double)> conditional_box(const JointBox& box,
                                                   Party conditioning_party,
                                                   int outcome, double angle);

// Dense-grid validity: min probability >= -kProbSlack and coefficient-level
// normalization within kCoeffEq.
bool is_valid_box(const JointBox& box, int grid = 256);

}  // namespace gbox
