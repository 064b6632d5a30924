#include "gbox/chained.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gbox/tolerances.hpp"

namespace gbox {

namespace {

constexpr double kPi = std::numbers::pi;

// x mod 2pi into [0, 2pi).
double mod_two_pi(double x) {
  x = std::fmod(x, 2.0 * kPi);
  if (x < 0.0) x += 2.0 * kPi;
  return x;
}

template <typename F>
double golden_max(F&& f, double lo, double hi, double width = 1e-10) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > width) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

ChainedSetting make_chained_setting(int n_settings, double theta_plus,
                                    double theta_minus) {
  if (n_settings < 4 || n_settings % 2 != 0)
    throw std::invalid_argument("chained setting requires even N >= 4");
  ChainedSetting s;
  s.n_settings = n_settings;
  s.theta_plus = theta_plus;
  s.theta_minus = theta_minus;
  s.delta = mod_two_pi(theta_minus - theta_plus) / (n_settings - 1);
  for (int i = 1; i <= n_settings; i += 2)
    s.alice_angles.push_back((i - 1) * s.delta);
  for (int i = 2; i <= n_settings; i += 2)
    s.bob_angles.push_back(theta_plus + (i - 1) * s.delta);
  return s;
}

double chsh_value(const CorrelationEvaluator& c, double a1, double b2, double a3,
                  double b4) {
  return c(a1, b2) + c(a3, b2) + c(a3, b4) - c(a1, b4);
}

ChshOptimum chsh_maximize(const CorrelationEvaluator& c, int grid) {
  const double step = 2.0 * kPi / grid;
  ChshOptimum best;
  best.value = -1e300;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      for (int k = 0; k < grid; ++k)
        for (int l = 0; l < grid; ++l) {
          const double v = chsh_value(c, i * step, j * step, k * step, l * step);
          if (v > best.value) {
            best.value = v;
            best.angles = {i * step, j * step, k * step, l * step};
          }
        }
  // Coordinate descent around the best grid point.
  auto& x = best.angles;
  for (int round = 0; round < 8; ++round) {
    for (int axis = 0; axis < 4; ++axis) {
      x[axis] = golden_max(
          [&](double t) {
            auto y = x;
            y[axis] = t;
            return chsh_value(c, y[0], y[1], y[2], y[3]);
          },
          x[axis] - step, x[axis] + step);
    }
  }
  best.value = chsh_value(c, x[0], x[1], x[2], x[3]);
  return best;
}

WitnessReport bci_value(const CorrelationEvaluator& c, const ChainedSetting& setting,
                        double margin) {
  const int half = setting.n_settings / 2;
  double lhs = 0.0;
  for (int k = 0; k < half; ++k)
    lhs += c(setting.alice_angles[k], setting.bob_angles[k]);
  for (int k = 0; k + 1 < half; ++k)
    lhs += c(setting.alice_angles[k + 1], setting.bob_angles[k]);
  lhs -= c(setting.alice_angles[0], setting.bob_angles[half - 1]);

  WitnessReport r;
  r.lhs = lhs;
  r.n_settings = setting.n_settings;
  r.classical_bound = setting.n_settings - 2.0;
  r.margin = margin;
  r.violated = lhs > r.classical_bound + margin;
  return r;
}

double chained_k(int two_j) {
  return kPi * kPi * second_derivative_bound(two_j);
}

EpsilonBound epsilon_bound(int two_j, double delta) {
  if (two_j < 1) throw std::invalid_argument("epsilon_bound requires two_j >= 1");
  if (!(delta > 0.0 && delta <= 2.0))
    throw std::invalid_argument("delta must lie in (0, 2]");
  const double k = chained_k(two_j);
  EpsilonBound b;
  b.exact = -k + std::sqrt(k * k + delta * delta / 4.0);
  b.asymptotic = delta * delta / (8.0 * k);
  return b;
}

namespace {

// The thetas of the public interface are Alice-minus-Bob angle differences;
// the chained construction precesses Bob's settings, so it is built at the
// negated angles and the probed differences come out as theta_plus -/+ delta.
struct RelationalScan {
  const CorrelationFunction* rel;
  double tp_tilde, tm_tilde;

  double at(double theta_tilde) const { return rel->evaluate(0.0, theta_tilde); }

  double lhs(int n) const {
    const double delta = mod_two_pi(tm_tilde - tp_tilde) / (n - 1);
    return 0.5 * n * at(tp_tilde + delta) + (0.5 * n - 1.0) * at(tp_tilde - delta) -
           at(tm_tilde);
  }
};

}  // namespace

WitnessSearchResult witness_search(const CorrelationFunction& c, double theta_plus,
                                   double theta_minus, int n_cap) {
  const CorrelationFunction rel = relational_core(c);
  WitnessSearchResult res;
  res.epsilon = std::max(0.0, 1.0 - rel.evaluate(theta_plus, 0.0));
  res.delta = 1.0 - rel.evaluate(theta_minus, 0.0);

  const int two_j = std::max(rel.two_j(), 1);
  if (res.delta > 0.0)
    res.epsilon_limit = epsilon_bound(two_j, std::min(res.delta, 2.0)).exact;
  res.guaranteed = res.delta > 0.0 && res.epsilon < res.epsilon_limit;

  const RelationalScan scan{&rel, mod_two_pi(-theta_plus), mod_two_pi(-theta_minus)};

  int n_lo = 4, n_hi = n_cap;
  if (res.guaranteed && res.epsilon > 0.0) {
    // Predicted window from the quadratic in (N - 1).
    const double k2 = second_derivative_bound(two_j);
    const double d_theta = mod_two_pi(theta_minus - theta_plus);
    const double disc =
        res.delta * res.delta - 2.0 * res.epsilon * k2 * d_theta * d_theta;
    if (disc >= 0.0) {
      const double n_minus = 1.0 + (res.delta - std::sqrt(disc)) / (2.0 * res.epsilon);
      const double n_plus = 1.0 + (res.delta + std::sqrt(disc)) / (2.0 * res.epsilon);
      n_lo = std::max(4, 2 * static_cast<int>(std::floor(n_minus / 2.0)));
      n_hi = std::min(n_cap, 2 * static_cast<int>(std::ceil(n_plus / 2.0)));
    }
  }

  double best_margin = -1e300;
  int best_n = 0;
  for (int n = n_lo; n <= n_hi; n += 2) {
    const double margin = scan.lhs(n) - (n - 2.0);
    if (margin > best_margin) {
      best_margin = margin;
      best_n = n;
    }
    if (margin > 0.0) break;  // first violating N wins
  }
  res.cap_exceeded = best_margin <= 0.0 && n_hi >= n_cap;

  if (best_n >= 4) {
    auto setting = make_chained_setting(best_n, scan.tp_tilde, scan.tm_tilde);
    res.report = bci_value(
        [&](double a, double b) { return rel.evaluate(a, b); }, setting);
    res.setting = std::move(setting);
  } else {
    res.report.n_settings = 0;
    res.report.classical_bound = 0.0;
  }
  return res;
}

ProtocolEstimate simulate_witness_protocol(const BoxEvaluator& box, int two_j,
                                           double theta_plus, double theta_minus,
                                           long long shots, std::uint64_t seed,
                                           double sigmas, int n_cap) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  double sum_plus = 0.0, sum_minus = 0.0;
  long long n_plus = 0, n_minus = 0;
  for (long long i = 0; i < shots; ++i) {
    RngStream rng(seed, 0, static_cast<std::uint64_t>(i));
    const double lambda = rng.next_double() * 2.0 * kPi;
    const bool use_plus = rng.next_double() < 0.5;
    const double alpha = use_plus ? theta_plus : theta_minus;
    const auto p = box(alpha + lambda, lambda);
    const double u = rng.next_double();
    // Outcome order (pp, pm, mp, mm); product ab is +1 for indices 0 and 3.
    int idx = 3;
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
      acc += p[k];
      if (u < acc) {
        idx = k;
        break;
      }
    }
    const double ab = (idx == 0 || idx == 3) ? 1.0 : -1.0;
    if (use_plus) {
      sum_plus += ab;
      ++n_plus;
    } else {
      sum_minus += ab;
      ++n_minus;
    }
  }

  ProtocolEstimate est;
  est.shots_plus = n_plus;
  est.shots_minus = n_minus;
  est.c_plus = n_plus > 0 ? sum_plus / n_plus : 0.0;
  est.c_minus = n_minus > 0 ? sum_minus / n_minus : 0.0;
  est.c_plus_stderr =
      n_plus > 1 ? std::sqrt(std::max(0.0, 1.0 - est.c_plus * est.c_plus) / n_plus)
                 : 1.0;
  est.c_minus_stderr =
      n_minus > 1
          ? std::sqrt(std::max(0.0, 1.0 - est.c_minus * est.c_minus) / n_minus)
          : 1.0;

  // Conservative premises: purity degraded and gap shrunk by the margins.
  auto& w = est.witness;
  w.epsilon = std::max(0.0, 1.0 - (est.c_plus - sigmas * est.c_plus_stderr));
  w.delta = 1.0 - (est.c_minus + sigmas * est.c_minus_stderr);
  if (w.delta > 0.0 && two_j >= 1)
    w.epsilon_limit = epsilon_bound(two_j, std::min(w.delta, 2.0)).exact;
  w.guaranteed = w.delta > 0.0 && w.epsilon < w.epsilon_limit;

  // Analytic lower bound on the chained LHS from the two measured values
  // and the second-derivative bound; find an even N that certifies a
  // violation when one exists.
  const double k2 = second_derivative_bound(std::max(two_j, 1));
  const double d_theta = mod_two_pi(theta_minus - theta_plus);
  double best_margin = -1e300;
  int best_n = 0;
  for (int n = 4; n <= n_cap; n += 2) {
    const double delta_n = d_theta / (n - 1);
    const double lhs_lb = (n - 1.0) * (1.0 - w.epsilon - 0.5 * k2 * delta_n * delta_n) -
                          (1.0 - w.delta);
    const double margin = lhs_lb - (n - 2.0);
    if (margin > best_margin) {
      best_margin = margin;
      best_n = n;
      w.report.lhs = lhs_lb;
    }
    if (margin > 0.0) break;
  }
  w.cap_exceeded = best_margin <= 0.0;
  if (best_n >= 4) {
    w.report.n_settings = best_n;
    w.report.classical_bound = best_n - 2.0;
    w.report.violated = best_margin > 0.0;
    w.report.margin = 0.0;
    w.setting = make_chained_setting(best_n, mod_two_pi(-theta_plus),
                                     mod_two_pi(-theta_minus));
  }
  return est;
}

}  // namespace gbox
