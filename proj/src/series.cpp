#include "hyperharmonic/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>

#include "hyperharmonic/acceleration.hpp"
#include "hyperharmonic/errors.hpp"

namespace hyperharmonic {

namespace {

constexpr double kUnitCircleSlack = 1e-12;
constexpr double kTiny = 1e-300;
constexpr int kStoppingStreak = 3;
constexpr long kFirstFitIndex = 2048;
constexpr int kFitSamples = 41;
constexpr long kFitSpan = 256;
constexpr long kFirstWynnIndex = 64;

double scale_of(Complex s) { return std::max(std::abs(s), kTiny); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string to_string(Complex z) {
  return "(" + sci(z.real()) + ", " + sci(z.imag()) + ")";
}

// Smallest m >= 0 with a numerator equal to -m, i.e. where the series stops.
std::optional<long> termination_index(const PochhammerRatioSeries& spec) {
  std::optional<long> last;
  for (const Complex& a : spec.numerator_shifts) {
    if (!is_gamma_pole(a)) continue;
    const long m = -std::lround(a.real());
    if (!last || m < *last) last = m;
  }
  return last;
}

// Partial sums kept for the unit-circle accelerators, extended on demand.
class PartialSums {
 public:
  PartialSums(const PochhammerRatioSeries& spec, const Weight& weight, Complex x)
      : terms_(spec, x), weight_(weight, spec.start_index), first_(spec.start_index) {}

  // Extends through term index `last`.
  void extend_to(long last) {
    while (first_ + static_cast<long>(sums_.size()) <= last) {
      sum_.add(terms_.value() * weight_.value());
      sums_.push_back(sum_.value());
      terms_.advance();
      weight_.advance();
    }
  }
  Complex through(long index) const { return sums_[static_cast<std::size_t>(index - first_)]; }
  long first() const { return first_; }
  const std::vector<Complex>& all() const { return sums_; }

 private:
  TermSequence terms_;
  WeightAccumulator weight_;
  long first_;
  CompensatedSum sum_;
  std::vector<Complex> sums_;
};

SeriesResult sum_terminating(const PochhammerRatioSeries& spec, const Weight& weight, Complex x,
                             long last) {
  PartialSums sums(spec, weight, x);
  const long end = std::max(last, static_cast<long>(spec.start_index));
  sums.extend_to(end);
  return {sums.through(end), end - spec.start_index + 1, 0.0, true, SummationMethod::direct};
}

SeriesResult sum_direct(const PochhammerRatioSeries& spec, const Weight& weight, Complex x,
                        double tol, long max_terms) {
  TermSequence terms(spec, x);
  WeightAccumulator w(weight, spec.start_index);
  CompensatedSum sum;
  double previous = -1.0;
  double tail = std::numeric_limits<double>::infinity();
  int streak = 0;
  for (long used = 1; used <= max_terms; ++used) {
    const Complex u = terms.value() * w.value();
    sum.add(u);
    const double size = std::abs(u);
    if (previous >= 0.0) {
      double rho = 0.0;
      if (previous > 0.0) {
        rho = size / previous;
      } else if (size > 0.0) {
        rho = std::numeric_limits<double>::infinity();
      }
      tail = size == 0.0 ? 0.0
                         : (rho < 1.0 ? size * rho / (1.0 - rho)
                                      : std::numeric_limits<double>::infinity());
      streak = tail <= tol * scale_of(sum.value()) ? streak + 1 : 0;
      if (streak >= kStoppingStreak) {
        return {sum.value(), used, tail, true, SummationMethod::direct};
      }
    }
    previous = size;
    terms.advance();
    w.advance();
  }
  throw NonConvergent("direct summation: " + std::to_string(max_terms) +
                      " terms left tail bound " + sci(tail) + " above tolerance");
}

std::vector<long> fit_indices(long first, long last) {
  const long lo = std::max({first + 8, last / kFitSpan, 16L});
  std::vector<long> out;
  for (int i = 0; i < kFitSamples; ++i) {
    const double t = static_cast<double>(i) / (kFitSamples - 1);
    long n = std::lround(static_cast<double>(lo) *
                         std::pow(static_cast<double>(last) / static_cast<double>(lo), t));
    n -= n % 2;
    n = std::clamp(n, lo, last);
    if (out.empty() || n != out.back()) out.push_back(n);
  }
  return out;
}

SeriesResult sum_richardson(const PochhammerRatioSeries& spec, const Weight& weight, Complex x,
                            const ConvergenceInfo& info, double tol, long max_terms) {
  const Complex sigma = info.exponent + 1.0;
  const int log_degree = weight.log_degree();
  PartialSums sums(spec, weight, x);
  const long cap = spec.start_index + max_terms - 1;
  long last = std::min(kFirstFitIndex, cap);
  std::optional<Complex> previous;
  double err = std::numeric_limits<double>::infinity();
  while (true) {
    sums.extend_to(last);
    const std::vector<long> idx = fit_indices(spec.start_index, last);
    std::vector<Complex> samples;
    samples.reserve(idx.size());
    for (long n : idx) samples.push_back(sums.through(n));
    const Complex fine = richardson_limit(samples, idx, sigma, log_degree, 4);
    const Complex coarse = richardson_limit(samples, idx, sigma, log_degree, 3);
    err = std::abs(fine - coarse);
    if (previous) err = std::max(err, std::abs(fine - *previous));
    if (previous && err <= tol * scale_of(fine)) {
      return {fine, last - spec.start_index + 1, err, true, SummationMethod::richardson};
    }
    if (last >= cap) break;
    previous = fine;
    last = std::min(2 * last, cap);
  }
  throw NonConvergent("argument-1 extrapolation: estimates still differ by " +
                      sci(err) + " after " + std::to_string(max_terms) + " terms");
}

SeriesResult sum_wynn(const PochhammerRatioSeries& spec, const Weight& weight, Complex x,
                      double tol, long max_terms) {
  PartialSums sums(spec, weight, x);
  const long cap = spec.start_index + max_terms - 1;
  long last = std::min(kFirstWynnIndex, cap);
  std::optional<Complex> previous;
  double err = std::numeric_limits<double>::infinity();
  while (true) {
    sums.extend_to(last);
    const auto& all = sums.all();
    const std::span<const Complex> upto(all.data(), static_cast<std::size_t>(last - sums.first() + 1));
    const Complex estimate = wynn_epsilon(upto);
    if (previous) {
      err = std::abs(estimate - *previous);
      if (err <= tol * scale_of(estimate)) {
        return {estimate, last - spec.start_index + 1, err, true, SummationMethod::wynn_epsilon};
      }
    }
    if (last >= cap) break;
    previous = estimate;
    last = std::min(2 * last, cap);
  }
  throw NonConvergent("epsilon extrapolation: estimates still differ by " + sci(err) +
                      " after " + std::to_string(max_terms) + " terms");
}

}  // namespace

PochhammerRatioSeries hypergeometric(std::vector<Complex> numerators,
                                     std::vector<Complex> denominators) {
  return {std::move(numerators), std::move(denominators), 1, 1.0, 0};
}

void validate(const PochhammerRatioSeries& spec) {
  for (const Complex& b : spec.denominator_shifts) {
    if (is_gamma_pole(b)) {
      throw PoleError("series: denominator shift " + to_string(b) + " is a non-positive integer");
    }
  }
  if (spec.factorial_power < 0) throw DomainError("series: negative factorial power");
  if (spec.start_index != 0 && spec.start_index != 1) {
    throw DomainError("series: start index must be 0 or 1");
  }
}

TermSequence::TermSequence(const PochhammerRatioSeries& spec, Complex x)
    : step_(spec.geometric_ratio * x) {
  // Sorted so that permuting the shifts reproduces the same rounding.
  const auto by_parts = [](Complex u, Complex v) {
    return u.real() != v.real() ? u.real() < v.real() : u.imag() < v.imag();
  };
  std::vector<Complex> nums = spec.numerator_shifts;
  std::vector<Complex> dens = spec.denominator_shifts;
  dens.insert(dens.end(), static_cast<std::size_t>(std::max(spec.factorial_power, 0)), 1.0);
  std::sort(nums.begin(), nums.end(), by_parts);
  std::sort(dens.begin(), dens.end(), by_parts);
  const std::size_t paired = std::min(dens.size(), nums.size());
  for (std::size_t i = 0; i < paired; ++i) pairs_.emplace_back(nums[i], dens[i]);
  lone_numerators_.assign(nums.begin() + static_cast<std::ptrdiff_t>(paired), nums.end());
  lone_denominators_.assign(dens.begin() + static_cast<std::ptrdiff_t>(paired), dens.end());
  while (n_ < spec.start_index) advance();
}

void TermSequence::advance() {
  const double n = static_cast<double>(n_);
  Complex ratio = step_;
  for (const auto& [a, b] : pairs_) ratio *= 1.0 + (a - b) / (b + n);
  for (const Complex& a : lone_numerators_) ratio *= a + n;
  for (const Complex& b : lone_denominators_) ratio /= b + n;
  value_ *= ratio;
  ++n_;
}

std::string_view to_string(SummationMethod method) {
  switch (method) {
    case SummationMethod::direct:
      return "direct";
    case SummationMethod::wynn_epsilon:
      return "wynn_epsilon";
    case SummationMethod::richardson:
      return "richardson";
  }
  return "unknown";
}

ConvergenceInfo classify(const PochhammerRatioSeries& spec, const Weight& weight, Complex x) {
  ConvergenceInfo info;
  if (auto last = termination_index(spec)) {
    info.kind = ConvergenceInfo::Kind::terminating;
    info.last_index = *last;
    return info;
  }
  if (x == 0.0 || spec.geometric_ratio == 0.0) {
    info.kind = ConvergenceInfo::Kind::terminating;
    info.last_index = 0;
    return info;
  }
  const long up = static_cast<long>(spec.numerator_shifts.size());
  const long down = static_cast<long>(spec.denominator_shifts.size()) + spec.factorial_power;
  if (up < down) {
    info.kind = ConvergenceInfo::Kind::geometric;
    return info;
  }
  if (up > down) {
    info.kind = ConvergenceInfo::Kind::divergent;
    return info;
  }
  info.ratio_limit = spec.geometric_ratio * x;
  Complex exponent = -static_cast<double>(spec.factorial_power) + weight.power_shift();
  for (const Complex& a : spec.numerator_shifts) exponent += a;
  for (const Complex& b : spec.denominator_shifts) exponent -= b;
  info.exponent = exponent;
  const double modulus = std::abs(info.ratio_limit);
  if (modulus < 1.0 - kUnitCircleSlack) {
    info.kind = ConvergenceInfo::Kind::geometric;
  } else if (modulus > 1.0 + kUnitCircleSlack) {
    info.kind = ConvergenceInfo::Kind::divergent;
  } else if (std::abs(info.ratio_limit - 1.0) < kUnitCircleSlack) {
    info.kind = ConvergenceInfo::Kind::unit_ratio_one;
  } else {
    info.kind = ConvergenceInfo::Kind::unit_oscillating;
  }
  return info;
}

SeriesResult eval_hyper(const PochhammerRatioSeries& spec, Complex x, double tol,
                        long max_terms) {
  return eval_weighted(spec, unit_weight(), x, tol, max_terms, false);
}

SeriesResult eval_weighted(const PochhammerRatioSeries& spec, const Weight& weight, Complex x,
                           double tol, long max_terms, bool accel) {
  validate(spec);
  if (!(tol > 0.0)) throw DomainError("series: tolerance must be positive");
  if (max_terms < 1) throw DomainError("series: max_terms must be positive");
  const ConvergenceInfo info = classify(spec, weight, x);
  using Kind = ConvergenceInfo::Kind;
  switch (info.kind) {
    case Kind::terminating:
      if (info.last_index - spec.start_index + 1 > max_terms) {
        throw NonConvergent("series: terminating sum longer than max_terms");
      }
      return sum_terminating(spec, weight, x, info.last_index);
    case Kind::geometric:
      return sum_direct(spec, weight, x, tol, max_terms);
    case Kind::divergent:
      throw NonConvergent("series: term ratio limit " + to_string(info.ratio_limit) +
                          " lies outside the unit disk");
    case Kind::unit_ratio_one:
    case Kind::unit_oscillating:
      break;
  }
  if (!accel) {
    throw NonConvergent("series: argument on the unit circle (ratio limit " +
                        to_string(info.ratio_limit) + ") requires acceleration");
  }
  if (info.kind == Kind::unit_ratio_one) {
    if (info.exponent.real() >= -1.0) {
      throw NonConvergent("series: terms decay like n^" + to_string(info.exponent) +
                          ", too slowly for the sum to converge");
    }
    return sum_richardson(spec, weight, x, info, tol, max_terms);
  }
  if (info.exponent.real() >= 0.0) {
    throw NonConvergent("series: terms do not tend to zero on the unit circle");
  }
  return sum_wynn(spec, weight, x, tol, max_terms);
}

std::vector<Complex> partial_sums(const PochhammerRatioSeries& spec, const Weight& weight,
                                  Complex x, long last_index) {
  validate(spec);
  PartialSums sums(spec, weight, x);
  sums.extend_to(last_index);
  return sums.all();
}

Complex hyp2f1(Complex a, Complex b, Complex c, Complex x, double tol, long max_terms) {
  return eval_hyper(hypergeometric({a, b}, {c}), x, tol, max_terms).value;
}

Complex finite_difference(const std::function<Complex(Complex)>& f, Complex c0, int order) {
  if (order != 1 && order != 2) throw DomainError("finite_difference: order must be 1 or 2");
  constexpr double kStep = 1e-3;
  auto call = [&f](Complex c) {
    try {
      return f(c);
    } catch (const std::exception& e) {
      throw EvaluationError(std::string("finite_difference: ") + e.what());
    }
  };
  auto central = [&](double h) {
    if (order == 1) return (call(c0 + h) - call(c0 - h)) / (2.0 * h);
    return (call(c0 + h) - 2.0 * call(c0) + call(c0 - h)) / (h * h);
  };
  const Complex coarse = central(kStep);
  const Complex fine = central(kStep / 2.0);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace hyperharmonic
