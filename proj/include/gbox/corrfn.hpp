#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <vector>

namespace gbox {

// Frequency pair (m, n) of a term cos(m*alpha - n*beta), sin(m*alpha - n*beta).
// Canonical form: m >= 0, and n > 0 whenever m == 0. The pair (0, 0) is the
// constant term and is stored separately, never as a FreqPair.
struct FreqPair {
  int m = 0;
  int n = 0;
  auto operator<=>(const FreqPair&) const = default;
};

inline bool is_canonical(FreqPair p) {
  return p.m > 0 || (p.m == 0 && p.n > 0);
}

struct TermCoeff {
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
};

// Bounded trigonometric series
//   C(alpha, beta) = constant + sum_{(m,n)} C_mn cos(m a - n b) + S_mn sin(m a - n b)
// with frequencies capped by the spin bound J (stored as the integer 2J).
class CorrelationFunction {
 public:
  CorrelationFunction() = default;
  explicit CorrelationFunction(int two_j, double constant = 0.0)
      : two_j_(two_j), constant_(constant) {
    if (two_j < 0) throw std::invalid_argument("two_j must be >= 0");
  }

  int two_j() const { return two_j_; }
  double constant() const { return constant_; }
  void set_constant(double c) { constant_ = c; }

  const std::map<FreqPair, TermCoeff>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  // Canonicalizes (m, n) -> (-m, -n) if needed and accumulates onto any
  // existing coefficient for the same pair.
  void add_term(FreqPair p, double cos_coeff, double sin_coeff);

  double evaluate(double alpha, double beta) const;

  // True if all m == n (depends only on alpha - beta).
  bool is_relational() const;

  // constant^2 + (1/2) sum (C^2 + S^2); bounded by 1 for any |C| <= 1.
  double l2_norm_sq() const;

  bool coeff_equal(const CorrelationFunction& other, double tol) const;

  CorrelationFunction& operator*=(double s);
  CorrelationFunction& operator+=(const CorrelationFunction& other);

 private:
  int two_j_ = 0;
  double constant_ = 0.0;
  std::map<FreqPair, TermCoeff> terms_;
};

// Polar form of a relational series:
//   A0 + sum_m A_m cos(m theta - phi_m), A_m >= 0, phi_m in [-pi, pi).
struct PolarForm {
  double a0 = 0.0;
  std::map<int, double> amplitudes;
  std::map<int, double> phases;
};

// Keeps the constant and the m == n terms; equals the average of
// C(alpha + t, beta + t) over a shared offset t.
CorrelationFunction relational_core(const CorrelationFunction& f);

// sup_{alpha,beta} |C - constant|, dense grid plus local refinement.
double max_deviation(const CorrelationFunction& f, int grid = 720);

// sup |C| on the same scheme.
double max_abs(const CorrelationFunction& f, int grid = 720);

// sqrt(2) J (2J+1)(4J+1) / 3 with J = two_j / 2.
double second_derivative_bound(int two_j);

// Requires a relational input.
PolarForm polar_form(const CorrelationFunction& f);

double evaluate_polar(const PolarForm& p, double theta);

struct TrigSample {
  double alpha = 0.0;
  double beta = 0.0;
  double value = 0.0;
};

struct TrigFit {
  CorrelationFunction function;
  double residual_rms = 0.0;
};

// Least-squares fit of the full canonical basis for the given spin bound.
// Throws on rank deficiency.
TrigFit fit_trig_series(const std::vector<TrigSample>& samples, int two_j);

}  // namespace gbox
