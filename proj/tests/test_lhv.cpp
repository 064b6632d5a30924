#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gbox/chained.hpp"
#include "gbox/lhv.hpp"
#include "gbox/rng.hpp"

using namespace gbox;

namespace {

constexpr double kPi = std::numbers::pi;

CorrelationFunction cosine() {
  CorrelationFunction f(1);
  f.add_term({1, 1}, 1.0, 0.0);
  return f;
}

}  // namespace

TEST_CASE("gamma table for small term counts") {
  CHECK(gamma_n(1).gamma == doctest::Approx(std::sqrt(2.0) / kPi).epsilon(1e-10));
  CHECK(gamma_n(2).gamma == doctest::Approx(0.184375).epsilon(1e-5));
  CHECK(gamma_n(3).gamma == doctest::Approx(0.103893).epsilon(1e-5));
}

TEST_CASE("gamma dominates its closed-form lower bound for N in [4, 100]") {
  for (int n = 4; n <= 100; ++n) {
    const auto g = gamma_n(n);
    CHECK(g.gamma >= g.lower_bound);
    CHECK(g.lower_bound ==
          doctest::Approx(std::sqrt(2.0) * std::exp(-1.0) * std::pow(n, -1.5)));
  }
}

TEST_CASE("worst-case spin constants") {
  CHECK(gamma_j(1) == doctest::Approx(0.06503).epsilon(1e-3));   // J = 1/2, N = 4
  CHECK(gamma_j(2) == doctest::Approx(0.012516).epsilon(1e-3));  // J = 1, N = 12
  for (int two_j = 1; two_j < 10; ++two_j) CHECK(gamma_j(two_j + 1) < gamma_j(two_j));
  CHECK_THROWS_AS(gamma_j(0), std::invalid_argument);
}

TEST_CASE("locality certificate: small amplitude passes, full cosine does not") {
  CorrelationFunction small(1);
  small.add_term({1, 1}, 0.05, 0.0);
  const auto pass = locality_certificate(small);
  CHECK(pass.passed);
  CHECK(pass.deviation == doctest::Approx(0.05).epsilon(1e-7));
  CHECK(pass.bound == doctest::Approx(std::sqrt(2.0) / kPi).epsilon(1e-7));

  CorrelationFunction werner(2);
  werner.add_term({2, 2}, -1.0, 0.0);
  CHECK_FALSE(locality_certificate(werner).passed);

  CHECK(locality_certificate(CorrelationFunction(0, 0.7)).passed);
}

TEST_CASE("build_lhv closed-form prefactors") {
  const auto m1 = build_lhv(cosine(), kPi / 2.0);
  CHECK(m1.n_terms == 1);
  CHECK(m1.scale == doctest::Approx(std::sqrt(2.0) / kPi).epsilon(1e-12));

  const auto m_small = build_lhv(cosine(), 1e-6);
  CHECK(m_small.scale < 1e-6);

  CorrelationFunction two(2);
  two.add_term({1, 1}, 0.5, 0.0);
  two.add_term({2, 1}, 0.0, 0.5);
  const auto m2 = build_lhv(two, gamma_n(2).xi_star);
  CHECK(m2.scale == doctest::Approx(0.184375).epsilon(1e-5));
}

TEST_CASE("build_lhv validates its premises") {
  CHECK_THROWS_AS(build_lhv(CorrelationFunction(1, 0.2), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_lhv(cosine(), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_lhv(cosine(), kPi), std::invalid_argument);
  CorrelationFunction big(1);
  big.add_term({1, 1}, 1.5, 0.0);
  CHECK_THROWS_AS(build_lhv(big, 1.0), std::invalid_argument);
}

TEST_CASE("model correlation is scale times the input, coefficient-exactly") {
  CorrelationFunction f(2);
  f.add_term({1, 1}, 0.4, -0.3);
  f.add_term({2, 2}, 0.2, 0.1);
  f.add_term({2, 1}, -0.1, 0.0);
  const auto model = build_lhv(f, 1.1);
  CorrelationFunction expected = f;
  expected *= model.scale;
  CHECK(model_correlation(model).coeff_equal(expected, 1e-15));
}

TEST_CASE("certified construction reproduces a passing function exactly") {
  CorrelationFunction f(2, 0.3);
  f.add_term({1, 1}, 0.02, 0.01);
  f.add_term({2, 2}, -0.015, 0.0);
  REQUIRE(locality_certificate(f).passed);
  const auto cert = build_certified_lhv(f);
  CHECK(cert.has_model);
  CHECK(certified_correlation(cert).coeff_equal(f, 1e-12));
}

TEST_CASE("certified construction refuses a failing certificate") {
  CorrelationFunction f(1);
  f.add_term({1, 1}, 0.9, 0.0);
  CHECK_THROWS_AS(build_certified_lhv(f), std::runtime_error);
}

TEST_CASE("Monte-Carlo sampling agrees with the closed form") {
  const auto model = build_lhv(cosine(), kPi / 2.0);
  const long long shots = 200000;
  auto empirical = [&](double alpha, double beta, std::uint64_t seed) {
    double sum = 0.0;
    for (long long i = 0; i < shots; ++i) {
      RngStream rng(seed, 0, static_cast<std::uint64_t>(i));
      const auto [a, b] = sample_lhv(model, alpha, beta, rng);
      sum += a * b;
    }
    return sum / shots;
  };
  const double se = 1.0 / std::sqrt(static_cast<double>(shots));
  CHECK(std::abs(empirical(0.0, 0.0, 101) - std::sqrt(2.0) / kPi) < 4 * se);
  CHECK(std::abs(empirical(kPi / 2.0, 0.0, 102) - 0.0) < 4 * se);

  // Window marginal: P(a = +1) = (xi / pi)^N = 1/2 for N = 1, xi = pi/2.
  long long plus = 0;
  for (long long i = 0; i < shots; ++i) {
    RngStream rng(103, 0, static_cast<std::uint64_t>(i));
    if (sample_lhv(model, 0.7, 0.1, rng).first == +1) ++plus;
  }
  CHECK(std::abs(plus / static_cast<double>(shots) - 0.5) < 4 * se);
}

TEST_CASE("sampling is independent of worker partitioning") {
  const auto model = build_lhv(cosine(), 1.2);
  RngStream r1(9, 0, 42), r2(9, 0, 42);
  CHECK(sample_lhv(model, 0.3, 0.8, r1) == sample_lhv(model, 0.3, 0.8, r2));
}

TEST_CASE("certified sampling reproduces a constant-heavy function") {
  CorrelationFunction f(1, -0.4);
  f.add_term({1, 1}, 0.03, 0.0);
  const auto cert = build_certified_lhv(f);
  const long long shots = 200000;
  double sum = 0.0;
  for (long long i = 0; i < shots; ++i) {
    RngStream rng(104, 0, static_cast<std::uint64_t>(i));
    const auto [a, b] = sample_certified(cert, 0.5, 0.2, rng);
    sum += a * b;
  }
  const double se = 1.0 / std::sqrt(static_cast<double>(shots));
  CHECK(std::abs(sum / shots - f.evaluate(0.5, 0.2)) < 4 * se);
}

TEST_CASE("model correlations never violate CHSH or chained bounds") {
  RngStream rng(55);
  CorrelationFunction f(2);
  f.add_term({1, 1}, 0.5, 0.1);
  f.add_term({2, 2}, -0.25, 0.2);
  const auto exact = model_correlation(build_lhv(f, 0.9));
  const auto c = [&](double a, double b) { return exact.evaluate(a, b); };
  for (int k = 0; k < 200; ++k) {
    CHECK(chsh_value(c, rng.next_angle(), rng.next_angle(), rng.next_angle(),
                     rng.next_angle()) <= 2.0 + 1e-9);
  }
  for (int k = 0; k < 200; ++k) {
    const int n = 4 + 2 * static_cast<int>(rng.next_double() * 8);
    const auto setting =
        make_chained_setting(n, rng.next_angle(), rng.next_angle());
    CHECK(bci_value(c, setting).lhs <= n - 2.0 + 1e-9);
  }
}

TEST_CASE("square wave model: exact values and triangle shape") {
  const auto m11 = build_squarewave_lhv(1, 1);
  CHECK(m11.correlation(0.0) == doctest::Approx(1.0));
  CHECK(m11.correlation(kPi) == doctest::Approx(-1.0));
  for (int k = 0; k < 50; ++k) {
    const double t = -kPi + 2.0 * kPi * k / 50.0;
    CHECK(m11.correlation(t) == doctest::Approx(1.0 - 2.0 * std::abs(t) / kPi)
                                    .epsilon(1e-12));
  }
  const auto m12 = build_squarewave_lhv(1, 2);
  CHECK(m12.correlation(0.0) == doctest::Approx(1.0));
  CHECK(m12.correlation(kPi / 2.0) == doctest::Approx(-1.0));
}

TEST_CASE("square wave sampling matches the exact overlap") {
  const auto m = build_squarewave_lhv(1, 2);
  const long long shots = 200000;
  double sum = 0.0;
  for (long long i = 0; i < shots; ++i) {
    RngStream rng(105, 0, static_cast<std::uint64_t>(i));
    const auto [a, b] = m.sample(0.9, 0.2, rng);
    sum += a * b;
  }
  CHECK(std::abs(sum / shots - m.correlation(0.7)) <
        4.0 / std::sqrt(static_cast<double>(shots)));
}

TEST_CASE("square wave construction rejects invalid parameters") {
  CHECK_THROWS_AS(build_squarewave_lhv(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_squarewave_lhv(3, 2), std::invalid_argument);
}
