#include "gbox/corrfn.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "gbox/tolerances.hpp"

namespace gbox {

namespace {

constexpr double kPi = std::numbers::pi;

// Golden-section maximization of a unimodal-enough objective on [lo, hi].
template <typename F>
double golden_max(F&& f, double lo, double hi, double width = tol::kGolden) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
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

void CorrelationFunction::add_term(FreqPair p, double cos_coeff, double sin_coeff) {
  if (p.m == 0 && p.n == 0) {
    constant_ += cos_coeff;
    return;
  }
  if (!is_canonical(p)) {
    p = {-p.m, -p.n};
    sin_coeff = -sin_coeff;
  }
  if (p.m > two_j_ || std::abs(p.n) > two_j_)
    throw std::invalid_argument("frequency pair exceeds spin bound 2J");
  auto& t = terms_[p];
  t.cos_coeff += cos_coeff;
  t.sin_coeff += sin_coeff;
  if (std::abs(t.cos_coeff) == 0.0 && std::abs(t.sin_coeff) == 0.0) terms_.erase(p);
}

double CorrelationFunction::evaluate(double alpha, double beta) const {
  double v = constant_;
  for (const auto& [p, c] : terms_) {
    const double arg = p.m * alpha - p.n * beta;
    v += c.cos_coeff * std::cos(arg) + c.sin_coeff * std::sin(arg);
  }
  return v;
}

bool CorrelationFunction::is_relational() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.first.m == kv.first.n; });
}

double CorrelationFunction::l2_norm_sq() const {
  double s = constant_ * constant_;
  for (const auto& [p, c] : terms_)
    s += 0.5 * (c.cos_coeff * c.cos_coeff + c.sin_coeff * c.sin_coeff);
  return s;
}

bool CorrelationFunction::coeff_equal(const CorrelationFunction& other, double eps) const {
  if (std::abs(constant_ - other.constant_) > eps) return false;
  auto within = [eps](const std::map<FreqPair, TermCoeff>& a,
                      const std::map<FreqPair, TermCoeff>& b) {
    for (const auto& [p, c] : a) {
      TermCoeff o;
      if (auto it = b.find(p); it != b.end()) o = it->second;
      if (std::abs(c.cos_coeff - o.cos_coeff) > eps) return false;
      if (std::abs(c.sin_coeff - o.sin_coeff) > eps) return false;
    }
    return true;
  };
  return within(terms_, other.terms_) && within(other.terms_, terms_);
}

CorrelationFunction& CorrelationFunction::operator*=(double s) {
  constant_ *= s;
  for (auto& [p, c] : terms_) {
    c.cos_coeff *= s;
    c.sin_coeff *= s;
  }
  if (s == 0.0) terms_.clear();
  return *this;
}

CorrelationFunction& CorrelationFunction::operator+=(const CorrelationFunction& other) {
  if (other.two_j_ > two_j_) two_j_ = other.two_j_;
  constant_ += other.constant_;
  for (const auto& [p, c] : other.terms_) add_term(p, c.cos_coeff, c.sin_coeff);
  return *this;
}

CorrelationFunction relational_core(const CorrelationFunction& f) {
  CorrelationFunction r(f.two_j(), f.constant());
  for (const auto& [p, c] : f.terms())
    if (p.m == p.n) r.add_term(p, c.cos_coeff, c.sin_coeff);
  return r;
}

namespace {

// Dense grid scan followed by coordinate-wise golden-section refinement.
double grid_refine_max(const CorrelationFunction& f, int grid,
                       const std::function<double(double)>& transform) {
  auto g = [&](double a, double b) { return transform(f.evaluate(a, b)); };
  const double step = 2.0 * kPi / grid;
  double best = -1e300, ba = 0, bb = 0;
  for (int i = 0; i < grid; ++i) {
    const double a = i * step;
    for (int j = 0; j < grid; ++j) {
      const double v = g(a, j * step);
      if (v > best) {
        best = v;
        ba = a;
        bb = j * step;
      }
    }
  }
  // Refine around the best grid cell, alternating axes.
  for (int round = 0; round < 4; ++round) {
    ba = golden_max([&](double a) { return g(a, bb); }, ba - step, ba + step);
    bb = golden_max([&](double b) { return g(ba, b); }, bb - step, bb + step);
  }
  return g(ba, bb);
}

}  // namespace

double max_deviation(const CorrelationFunction& f, int grid) {
  if (f.term_count() == 0) return 0.0;
  const double c0 = f.constant();
  return grid_refine_max(f, grid, [c0](double v) { return std::abs(v - c0); });
}

double max_abs(const CorrelationFunction& f, int grid) {
  if (f.term_count() == 0) return std::abs(f.constant());
  return grid_refine_max(f, grid, [](double v) { return std::abs(v); });
}

double second_derivative_bound(int two_j) {
  if (two_j < 0) throw std::invalid_argument("two_j must be >= 0");
  const double j = two_j / 2.0;
  return std::sqrt(2.0) * j * (two_j + 1.0) * (2.0 * two_j + 1.0) / 3.0;
}

PolarForm polar_form(const CorrelationFunction& f) {
  if (!f.is_relational())
    throw std::invalid_argument("polar_form requires a relational function");
  PolarForm p;
  p.a0 = f.constant();
  for (const auto& [fp, c] : f.terms()) {
    const double amp = std::hypot(c.cos_coeff, c.sin_coeff);
    if (amp == 0.0) continue;
    double phi;
    if (c.cos_coeff == 0.0) {
      phi = c.sin_coeff >= 0.0 ? kPi / 2.0 : -kPi / 2.0;
    } else {
      phi = std::atan2(c.sin_coeff, c.cos_coeff);  // quadrant-aware
      if (phi >= kPi) phi -= 2.0 * kPi;            // clamp to [-pi, pi)
    }
    p.amplitudes[fp.m] = amp;
    p.phases[fp.m] = phi;
  }
  return p;
}

double evaluate_polar(const PolarForm& p, double theta) {
  double v = p.a0;
  for (const auto& [m, amp] : p.amplitudes)
    v += amp * std::cos(m * theta - p.phases.at(m));
  return v;
}

TrigFit fit_trig_series(const std::vector<TrigSample>& samples, int two_j) {
  // Canonical basis: constant, then cos/sin for each canonical (m, n).
  std::vector<FreqPair> pairs;
  for (int m = 0; m <= two_j; ++m)
    for (int n = -two_j; n <= two_j; ++n)
      if (is_canonical({m, n})) pairs.push_back({m, n});

  const std::size_t cols = 1 + 2 * pairs.size();
  if (samples.size() < cols)
    throw std::invalid_argument("insufficient samples for requested spin bound");

  Eigen::MatrixXd A(samples.size(), cols);
  Eigen::VectorXd y(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    A(i, 0) = 1.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const double arg = pairs[k].m * samples[i].alpha - pairs[k].n * samples[i].beta;
      A(i, 1 + 2 * k) = std::cos(arg);
      A(i, 2 + 2 * k) = std::sin(arg);
    }
    y(i) = samples[i].value;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-10);
  if (qr.rank() < static_cast<Eigen::Index>(cols))
    throw std::runtime_error("degenerate sample set: design matrix is rank-deficient");
  const Eigen::VectorXd x = qr.solve(y);

  TrigFit fit;
  fit.function = CorrelationFunction(two_j, x(0));
  for (std::size_t k = 0; k < pairs.size(); ++k)
    fit.function.add_term(pairs[k], x(1 + 2 * k), x(2 + 2 * k));
  fit.residual_rms = std::sqrt((A * x - y).squaredNorm() / samples.size());
  return fit;
}

}  // namespace gbox
