#ifndef HYPERHARMONIC_SERIES_HPP_
#define HYPERHARMONIC_SERIES_HPP_

#include <functional>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperharmonic/specialfn.hpp"
#include "hyperharmonic/weights.hpp"

namespace hyperharmonic {

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kUnitArgumentTolerance = 1e-6;
inline constexpr long kDefaultMaxTerms = 200000;

/// Coefficients t_n = prod (a_i)_n / (prod (b_j)_n (n!)^p) r^n, summed from
/// n = start_index. A generalized hypergeometric pFq is the case r = 1.
struct PochhammerRatioSeries {
  std::vector<Complex> numerator_shifts;
  std::vector<Complex> denominator_shifts;
  int factorial_power = 0;
  Complex geometric_ratio = 1.0;
  int start_index = 0;
};

/// The series of pFq(numerators; denominators; x) with the usual n! factor.
PochhammerRatioSeries hypergeometric(std::vector<Complex> numerators,
                                     std::vector<Complex> denominators);

/// Throws PoleError if a denominator shift is a non-positive integer and
/// DomainError for a negative factorial power or a start index outside {0, 1}.
void validate(const PochhammerRatioSeries& spec);

/// Running t_n x^n, advanced with the term-ratio recurrence. Numerator and
/// denominator shifts are paired so each factor is formed as
/// 1 + (a - b)/(b + n); (a + n)/(b + n) would lose the low bits of a and b
/// once n is large.
class TermSequence {
 public:
  TermSequence(const PochhammerRatioSeries& spec, Complex x);

  long index() const { return n_; }
  Complex value() const { return value_; }
  void advance();

 private:
  std::vector<std::pair<Complex, Complex>> pairs_;
  std::vector<Complex> lone_numerators_;
  std::vector<Complex> lone_denominators_;
  Complex step_;
  long n_ = 0;
  Complex value_ = 1.0;
};

enum class SummationMethod { direct, wynn_epsilon, richardson };

std::string_view to_string(SummationMethod method);

struct SeriesResult {
  Complex value;
  long terms_used = 0;
  double tail_bound = 0.0;
  bool converged = false;
  SummationMethod method = SummationMethod::direct;
};

/// How the terms t_n w_n x^n behave for large n.
struct ConvergenceInfo {
  enum class Kind { terminating, geometric, unit_ratio_one, unit_oscillating, divergent };
  Kind kind = Kind::geometric;
  /// lim t_{n+1} x^{n+1} / (t_n x^n) when the Pochhammer degrees balance.
  Complex ratio_limit = 0.0;
  /// Terms decay like n^exponent (log factors aside) on the unit circle.
  Complex exponent = 0.0;
  /// Last index with a possibly nonzero term, for terminating series.
  long last_index = -1;
};

ConvergenceInfo classify(const PochhammerRatioSeries& spec, const Weight& weight, Complex x);

/// sum_{n >= n0} t_n x^n. Geometric convergence only; see eval_weighted.
SeriesResult eval_hyper(const PochhammerRatioSeries& spec, Complex x,
                        double tol = kDefaultTolerance, long max_terms = kDefaultMaxTerms);

/// sum_{n >= n0} t_n w_n x^n with w_n maintained incrementally.
///
/// Inside the unit disk the sum stops once three consecutive terms satisfy
/// |u_n| rho / (1 - rho) <= tol |S_n|, rho being the empirical term ratio.
/// On the unit circle `accel` is required (NonConvergent otherwise): ratio 1
/// uses a least-squares fit against the known asymptotic basis, any other
/// unit ratio uses Wynn epsilon on consecutive partial sums. Terminating
/// series are summed exactly.
SeriesResult eval_weighted(const PochhammerRatioSeries& spec, const Weight& weight, Complex x,
                           double tol = kDefaultTolerance, long max_terms = kDefaultMaxTerms,
                           bool accel = false);

/// S_n0, S_n0+1, ..., S_last (partial sums through each index).
std::vector<Complex> partial_sums(const PochhammerRatioSeries& spec, const Weight& weight,
                                  Complex x, long last_index);

/// 2F1(a, b; c; x) through eval_hyper.
Complex hyp2f1(Complex a, Complex b, Complex c, Complex x, double tol = kDefaultTolerance,
               long max_terms = kDefaultMaxTerms);

/// First or second derivative of f at c0: central differences at h = 1e-3
/// and h/2 combined by one Richardson step.
Complex finite_difference(const std::function<Complex(Complex)>& f, Complex c0, int order);

}  // namespace hyperharmonic

#endif  // HYPERHARMONIC_SERIES_HPP_
