#include "hyperharmonic/specialfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hyperharmonic/errors.hpp"

namespace hyperharmonic {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// B_{2k} / (2k) for k = 1..7, the asymptotic digamma series through B_14.
constexpr std::array<double, 7> kDigammaAsymptotic = {
    1.0 / 12.0,  -1.0 / 120.0,       1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0,   1.0 / 12.0};

std::string describe(Complex z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

// Index n of the pole -n at z; only meaningful when is_gamma_pole(z).
long pole_index(Complex z) { return -std::lround(z.real()); }

// log Gamma for Re z >= 1/2.
Complex ln_gamma_lanczos(Complex z) {
  const Complex w = z - 1.0;
  Complex sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    sum += kLanczos[i] / (w + static_cast<double>(i));
  }
  const Complex t = w + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (w + 0.5) * std::log(t) - t + std::log(sum);
}

// cot(w), stable for large |Im w|.
Complex cot(Complex w) {
  const Complex i(0.0, 1.0);
  if (w.imag() >= 0.0) {
    const Complex q = std::exp(2.0 * i * w);
    return i * (q + 1.0) / (q - 1.0);
  }
  const Complex q = std::exp(-2.0 * i * w);
  return i * (1.0 + q) / (1.0 - q);
}

double log_factorial(long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

bool is_gamma_pole(Complex z) {
  if (z.real() > 0.5) return false;
  const double nearest = std::round(z.real());
  return std::abs(z - Complex(nearest, 0.0)) < kPoleTolerance;
}

Complex ln_gamma(Complex z) {
  if (is_gamma_pole(z)) throw PoleError("ln_gamma: pole at " + describe(z));
  if (z.real() >= 0.5) return ln_gamma_lanczos(z);
  // Gamma(z) Gamma(1-z) = pi / sin(pi z)
  return std::log(kPi) - std::log(std::sin(kPi * z)) - ln_gamma_lanczos(1.0 - z);
}

Complex gamma(Complex z) { return std::exp(ln_gamma(z)); }

Complex gamma_ratio(std::span<const Complex> numerators,
                    std::span<const Complex> denominators) {
  std::vector<bool> den_used(denominators.size(), false);
  Complex log_sum = 0.0;
  for (const Complex& a : numerators) {
    if (!is_gamma_pole(a)) {
      log_sum += ln_gamma(a);
      continue;
    }
    bool matched = false;
    for (std::size_t j = 0; j < denominators.size(); ++j) {
      if (den_used[j] || !is_gamma_pole(denominators[j])) continue;
      den_used[j] = true;
      matched = true;
      // Res Gamma(-n) = (-1)^n / n!
      const long n = pole_index(a);
      const long m = pole_index(denominators[j]);
      log_sum += log_factorial(m) - log_factorial(n);
      if ((n - m) % 2 != 0) log_sum += Complex(0.0, kPi);
      break;
    }
    if (!matched) {
      throw PoleError("gamma_ratio: unmatched numerator pole at " + describe(a));
    }
  }
  for (std::size_t j = 0; j < denominators.size(); ++j) {
    if (den_used[j]) continue;
    if (is_gamma_pole(denominators[j])) {
      throw PoleError("gamma_ratio: unmatched denominator pole at " +
                      describe(denominators[j]));
    }
    log_sum -= ln_gamma(denominators[j]);
  }
  return std::exp(log_sum);
}

Complex digamma(Complex z) {
  if (is_gamma_pole(z)) throw PoleError("digamma: pole at " + describe(z));
  if (z.real() < 0.5) {
    return digamma(1.0 - z) - kPi * cot(kPi * z);
  }
  Complex shift = 0.0;
  while (z.real() < 8.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  const Complex inv2 = 1.0 / (z * z);
  Complex power = inv2;
  Complex series = 0.0;
  for (double c : kDigammaAsymptotic) {
    series += c * power;
    power *= inv2;
  }
  return shift + std::log(z) - 0.5 / z - series;
}

Complex pochhammer(Complex a, long n) {
  if (n < 0) throw DomainError("pochhammer: negative n");
  const bool direct = n <= 64 || is_gamma_pole(a);
  if (direct) {
    Complex p = 1.0;
    for (long k = 0; k < n; ++k) {
      p *= a + static_cast<double>(k);
      if (p == 0.0) break;
    }
    return p;
  }
  return std::exp(ln_gamma(a + static_cast<double>(n)) - ln_gamma(a));
}

double elliptic_K(double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("elliptic_K: modulus must satisfy 0 <= k < 1, got " +
                      std::to_string(k));
  }
  double a = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  for (int it = 0; it < 64 && std::abs(a - b) > 1e-16 * a; ++it) {
    const double next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next;
  }
  return kPi / (2.0 * a);
}

}  // namespace hyperharmonic
