#ifndef HYPERHARMONIC_TESTS_SUPPORT_HPP_
#define HYPERHARMONIC_TESTS_SUPPORT_HPP_

#include <cmath>
#include <random>

#include "hyperharmonic/series.hpp"
#include "hyperharmonic/weights.hpp"

namespace hyperharmonic::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Complex random_complex(std::mt19937_64& rng, double lo, double hi) {
  const double re = uniform(rng, lo, hi);
  const double im = (rng() % 3 == 0) ? uniform(rng, -0.5, 0.5) : 0.0;
  return {re, im};
}

inline Weight random_weight(std::mt19937_64& rng) {
  switch (rng() % 7) {
    case 0: return unit_weight();
    case 1: return harmonic_weight(1, 0);
    case 2: return harmonic_weight(2, 0);
    case 3: return harmonic_weight(3, -1);
    case 4: return harmonic_sq_plus_gen2_weight();
    case 5: return digamma_diff_weight(random_complex(rng, 0.1, 1.0), random_complex(rng, 0.1, 1.0));
    default: return linear_combo({{4.0, harmonic_weight(2, 0)}, {-3.0, harmonic_weight(1, 0)}});
  }
}

// Balanced pFq-type specs: k numerators against k-1 denominators and n!.
inline PochhammerRatioSeries random_spec(std::mt19937_64& rng) {
  PochhammerRatioSeries spec;
  const int k = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < k; ++i) spec.numerator_shifts.push_back(random_complex(rng, -0.9, 2.0));
  for (int i = 0; i + 1 < k; ++i) spec.denominator_shifts.push_back(random_complex(rng, 0.2, 2.5));
  spec.factorial_power = 1;
  spec.start_index = static_cast<int>(rng() % 2);
  return spec;
}

// t_n rebuilt from its definition, no recurrence. Factors are interleaved
// per k so that the products stay in range.
inline Complex naive_coefficient(const PochhammerRatioSeries& spec, long n) {
  Complex t = 1.0;
  for (long k = 0; k < n; ++k) {
    Complex factor = spec.geometric_ratio;
    for (const Complex& a : spec.numerator_shifts) factor *= a + static_cast<double>(k);
    for (const Complex& b : spec.denominator_shifts) factor /= b + static_cast<double>(k);
    for (int p = 0; p < spec.factorial_power; ++p) factor /= static_cast<double>(k + 1);
    t *= factor;
  }
  return t;
}

inline Complex naive_sum(const PochhammerRatioSeries& spec, const Weight& weight, Complex x,
                         long last) {
  Complex s = 0.0;
  for (long n = last; n >= spec.start_index; --n) {
    s += naive_coefficient(spec, n) * weight.at(n) * std::pow(x, static_cast<double>(n));
  }
  return s;
}

}  // namespace hyperharmonic::testing

#endif  // HYPERHARMONIC_TESTS_SUPPORT_HPP_
