#ifndef HYPERHARMONIC_WEIGHTS_HPP_
#define HYPERHARMONIC_WEIGHTS_HPP_

#include <utility>
#include <variant>
#include <vector>

#include "hyperharmonic/specialfn.hpp"

namespace hyperharmonic {

/// H_n = 1 + 1/2 + ... + 1/n, H_0 = 0.
double harmonic(long n);

/// H_n^(r) = 1 + 2^-r + ... + n^-r.
double generalized_harmonic(long n, int r);

/// Neumaier-compensated running sum of complex values.
class CompensatedSum {
 public:
  void add(Complex v);
  Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double v, double& sum, double& comp);
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

class Weight;

namespace weights {

struct Unit {};

/// H_{stride*n + offset}; a negative index contributes 0.
struct Harmonic {
  int stride = 1;
  int offset = 0;
};

/// H_n^2 + H_n^(2).
struct HarmonicSqPlusGen2 {};

/// 1 / (n + 1).
struct ReciprocalShift {};

/// sum_{k=0}^{n-1} (2 / (2b + k) - 1 / (a + b + 1/2 + k)).
struct DigammaDiffSum {
  Complex a;
  Complex b;
};

struct LinearCombo {
  std::vector<std::pair<Complex, Weight>> terms;
};

}  // namespace weights

/// Per-term multiplier w_n attached to a hypergeometric-type series.
class Weight {
 public:
  using Kind = std::variant<weights::Unit, weights::Harmonic, weights::HarmonicSqPlusGen2,
                            weights::ReciprocalShift, weights::DigammaDiffSum,
                            weights::LinearCombo>;

  Weight() : kind_(weights::Unit{}) {}
  Weight(Kind kind) : kind_(std::move(kind)) {}  // NOLINT(google-explicit-constructor)

  const Kind& kind() const { return kind_; }

  /// w_n recomputed from its definition, without any running state.
  Complex at(long n) const;

  /// Power of log n in the growth of w_n (H_n ~ log n, H_n^2 ~ log^2 n).
  int log_degree() const;

  /// Power of n in the growth of w_n beyond log factors (0, or -1 for 1/(n+1)).
  int power_shift() const;

 private:
  Kind kind_;
};

Weight unit_weight();
Weight harmonic_weight(int stride = 1, int offset = 0);
Weight harmonic_sq_plus_gen2_weight();
Weight reciprocal_shift_weight();
Weight digamma_diff_weight(Complex a, Complex b);
Weight linear_combo(std::vector<std::pair<Complex, Weight>> terms);

/// Running value of a Weight along n = start, start+1, ...; each advance()
/// adds only the new reciprocals.
class WeightAccumulator {
 public:
  WeightAccumulator(const Weight& weight, long start);

  long index() const { return n_; }
  Complex value() const;
  void advance();

 private:
  struct UnitState {};
  struct HarmonicState {
    int stride;
    int offset;
    double sum = 0.0, comp = 0.0;
  };
  struct SqState {
    double h = 0.0, hc = 0.0, h2 = 0.0, h2c = 0.0;
  };
  struct ReciprocalState {};
  struct DigammaState {
    Complex two_b;
    Complex c;
    CompensatedSum sum;
  };
  struct ComboState {
    std::vector<std::pair<Complex, WeightAccumulator>> parts;
  };
  using State = std::variant<UnitState, HarmonicState, SqState, ReciprocalState,
                             DigammaState, ComboState>;

  void step();

  long n_ = 0;
  State state_;
};

}  // namespace hyperharmonic

#endif  // HYPERHARMONIC_WEIGHTS_HPP_
