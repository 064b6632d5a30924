#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gbox/jointbox.hpp"
#include "gbox/rng.hpp"

using namespace gbox;

namespace {

constexpr double kPi = std::numbers::pi;

CorrelationFunction werner_correlation_series(double p) {
  CorrelationFunction f(2);
  f.add_term({2, 2}, -p, 0.0);
  return f;
}

}  // namespace

TEST_CASE("uniform box: every probability is 1/4") {
  const auto box = from_correlation(CorrelationFunction(0));
  for (int a : {+1, -1})
    for (int b : {+1, -1})
      CHECK(box.evaluate_joint(a, b, 0.9, -2.1) == doctest::Approx(0.25));
}

TEST_CASE("noisy-singlet box at equal angles") {
  const double p = 0.8;
  const auto box = from_correlation(werner_correlation_series(p));
  CHECK(box.evaluate_joint(+1, +1, 1.3, 1.3) ==
        doctest::Approx((1.0 - p) / 4.0).epsilon(1e-12));
}

TEST_CASE("two-cosine signal box at the reference point") {
  CorrelationFunction f(3);
  f.add_term({3, 3}, 2.0 / 7.0, 0.0);
  f.add_term({1, 1}, -1.0, 0.0);
  const auto box = from_correlation(f);
  CHECK(box.evaluate_joint(+1, +1, 1.5, 3.9) == doctest::Approx(0.4778).epsilon(1e-3));
}

TEST_CASE("perfect correlation box") {
  const auto box = from_correlation(CorrelationFunction(0, 1.0));
  CHECK(box.evaluate_joint(+1, +1, 0.0, 0.0) == doctest::Approx(0.5));
  CHECK(box.evaluate_joint(-1, -1, 2.0, 1.0) == doctest::Approx(0.5));
  CHECK(box.evaluate_joint(+1, -1, 0.5, 0.3) == doctest::Approx(0.0));
}

TEST_CASE("from_correlation rejects unbounded series") {
  CorrelationFunction f(1);
  f.add_term({1, 1}, 1.2, 0.0);
  CHECK_THROWS_AS(from_correlation(f), std::invalid_argument);
}

TEST_CASE("correlation round trip is coefficient-exact") {
  RngStream rng(31);
  CorrelationFunction f(2, 0.1);
  f.add_term({1, 2}, 0.2, -0.1);
  f.add_term({2, 2}, -0.3, 0.05);
  CHECK(correlation_of(from_correlation(f)).coeff_equal(f, 1e-15));
}

TEST_CASE("correlation_of matches the quadrature of the signed sum") {
  CorrelationFunction f(2, 0.05);
  f.add_term({2, 1}, 0.3, 0.2);
  f.add_term({1, 1}, -0.4, 0.0);
  const auto box = from_correlation(f);
  const auto c = correlation_of(box);
  RngStream rng(77);
  for (int k = 0; k < 20; ++k) {
    const double a = rng.next_angle(), b = rng.next_angle();
    const double direct = box.evaluate_joint(+1, +1, a, b) +
                          box.evaluate_joint(-1, -1, a, b) -
                          box.evaluate_joint(+1, -1, a, b) -
                          box.evaluate_joint(-1, +1, a, b);
    CHECK(c.evaluate(a, b) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("from_correlation boxes pass no-signalling with residual exactly 0") {
  CorrelationFunction f(3);
  f.add_term({3, 1}, 0.2, 0.3);
  f.add_term({1, 2}, -0.25, 0.0);
  const auto report = check_no_signalling(from_correlation(f));
  CHECK(report.no_signalling);
  CHECK(report.worst_residual == 0.0);
}

TEST_CASE("constructed signalling table is detected with its residual") {
  JointBox box = from_correlation(CorrelationFunction(1));
  // Leak Bob's angle into Alice's a=+1 marginal while keeping normalization.
  box.block(+1, +1).add_term({0, 1}, 0.05, 0.0);
  box.block(+1, -1).add_term({0, 1}, 0.05, 0.0);
  box.block(-1, +1).add_term({0, 1}, -0.05, 0.0);
  box.block(-1, -1).add_term({0, 1}, -0.05, 0.0);
  CHECK(box.normalization_residual() == doctest::Approx(0.0));
  const auto report = check_no_signalling(box);
  CHECK_FALSE(report.no_signalling);
  CHECK(report.worst_residual == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(marginal(box, Party::A, +1, 0.3), std::runtime_error);
}

TEST_CASE("marginals of correlation-built boxes are uniform") {
  CorrelationFunction f(2);
  f.add_term({2, 2}, 0.7, -0.1);
  const auto box = from_correlation(f);
  CHECK(marginal(box, Party::A, +1, 1.1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(marginal(box, Party::B, -1, -2.7) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("deterministic box marginal") {
  JointBox box(0);
  box.block(+1, +1).set_constant(1.0);
  CHECK(marginal(box, Party::A, +1, 0.0) == doctest::Approx(1.0));
  CHECK(marginal(box, Party::B, -1, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("conditional box matches the closed-form algebra") {
  CorrelationFunction f(1);
  f.add_term({1, 1}, 0.6, 0.2);
  const auto box = from_correlation(f);
  const double beta0 = 0.9;
  const auto cond = conditional_box(box, Party::B, +1, beta0);
  RngStream rng(13);
  for (int k = 0; k < 25; ++k) {
    const double alpha = rng.next_angle();
    CHECK(cond(+1, alpha) ==
          doctest::Approx(0.5 * (1.0 + f.evaluate(alpha, beta0))).epsilon(1e-12));
    CHECK(cond(+1, alpha) + cond(-1, alpha) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("conditional of the uniform box is uniform") {
  const auto box = from_correlation(CorrelationFunction(0));
  const auto cond = conditional_box(box, Party::A, -1, 2.2);
  CHECK(cond(+1, 0.4) == doctest::Approx(0.5));
}

TEST_CASE("conditional on a vanishing marginal is an error") {
  JointBox box(0);
  box.block(+1, +1).set_constant(1.0);
  CHECK_THROWS_AS(conditional_box(box, Party::A, -1, 0.0), std::runtime_error);
}

TEST_CASE("deterministic anti-correlated box conditional") {
  JointBox box(0);
  box.block(+1, -1).set_constant(0.5);
  box.block(-1, +1).set_constant(0.5);
  const auto cond = conditional_box(box, Party::B, +1, 0.0);
  CHECK(cond(-1, 1.7) == doctest::Approx(1.0));
  CHECK(cond(+1, 1.7) == doctest::Approx(0.0));
}

TEST_CASE("validity check accepts built boxes and rejects negative tables") {
  CorrelationFunction f(1);
  f.add_term({1, 1}, 0.99, 0.0);
  CHECK(is_valid_box(from_correlation(f)));

  JointBox bad(1);
  bad.block(+1, +1).set_constant(0.25);
  bad.block(+1, -1).set_constant(0.25);
  bad.block(-1, +1).set_constant(0.25);
  bad.block(-1, -1).set_constant(0.25);
  bad.block(+1, +1).add_term({1, 1}, 0.5, 0.0);
  bad.block(-1, -1).add_term({1, 1}, -0.5, 0.0);
  CHECK_FALSE(is_valid_box(bad));
}

TEST_CASE("outcome_index validates labels") {
  CHECK(outcome_index(+1, +1) == 0);
  CHECK(outcome_index(-1, -1) == 3);
  CHECK_THROWS_AS(outcome_index(0, 1), std::invalid_argument);
}
