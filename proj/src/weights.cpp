#include "hyperharmonic/weights.hpp"

#include <algorithm>
#include <cmath>

#include "hyperharmonic/errors.hpp"

namespace hyperharmonic {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void add_compensated(double v, double& sum, double& comp) {
  const double t = sum + v;
  if (std::abs(sum) >= std::abs(v)) {
    comp += (sum - t) + v;
  } else {
    comp += (v - t) + sum;
  }
  sum = t;
}

}  // namespace

void CompensatedSum::add_part(double v, double& sum, double& comp) {
  add_compensated(v, sum, comp);
}

void CompensatedSum::add(Complex v) {
  add_part(v.real(), re_, re_c_);
  add_part(v.imag(), im_, im_c_);
}

double harmonic(long n) { return generalized_harmonic(n, 1); }

double generalized_harmonic(long n, int r) {
  if (n < 0) throw DomainError("generalized_harmonic: negative n");
  if (r < 1) throw DomainError("generalized_harmonic: order must be >= 1");
  double sum = 0.0, comp = 0.0;
  for (long k = 1; k <= n; ++k) {
    add_compensated(std::pow(static_cast<double>(k), -r), sum, comp);
  }
  return sum + comp;
}

Complex Weight::at(long n) const {
  return std::visit(
      Overloaded{
          [](const weights::Unit&) -> Complex { return 1.0; },
          [n](const weights::Harmonic& h) -> Complex {
            const long m = h.stride * n + h.offset;
            return m <= 0 ? 0.0 : harmonic(m);
          },
          [n](const weights::HarmonicSqPlusGen2&) -> Complex {
            const double h = harmonic(n);
            return h * h + generalized_harmonic(n, 2);
          },
          [n](const weights::ReciprocalShift&) -> Complex {
            return 1.0 / static_cast<double>(n + 1);
          },
          [n](const weights::DigammaDiffSum& d) -> Complex {
            const Complex c = d.a + d.b + 0.5;
            CompensatedSum s;
            for (long k = 0; k < n; ++k) {
              const double kk = static_cast<double>(k);
              s.add(2.0 / (2.0 * d.b + kk) - 1.0 / (c + kk));
            }
            return s.value();
          },
          [n](const weights::LinearCombo& combo) -> Complex {
            Complex total = 0.0;
            for (const auto& [coef, w] : combo.terms) total += coef * w.at(n);
            return total;
          },
      },
      kind_);
}

int Weight::log_degree() const {
  return std::visit(
      Overloaded{
          [](const weights::Unit&) { return 0; },
          [](const weights::Harmonic&) { return 1; },
          [](const weights::HarmonicSqPlusGen2&) { return 2; },
          [](const weights::ReciprocalShift&) { return 0; },
          [](const weights::DigammaDiffSum&) { return 1; },
          [](const weights::LinearCombo& combo) {
            int deg = 0;
            for (const auto& term : combo.terms) deg = std::max(deg, term.second.log_degree());
            return deg;
          },
      },
      kind_);
}

int Weight::power_shift() const {
  return std::visit(
      Overloaded{
          [](const weights::ReciprocalShift&) { return -1; },
          [](const weights::LinearCombo& combo) {
            int shift = combo.terms.empty() ? 0 : -1;
            for (const auto& term : combo.terms) shift = std::max(shift, term.second.power_shift());
            return shift;
          },
          [](const auto&) { return 0; },
      },
      kind_);
}

Weight unit_weight() { return Weight(weights::Unit{}); }

Weight harmonic_weight(int stride, int offset) {
  if (stride < 1) throw DomainError("harmonic_weight: stride must be >= 1");
  return Weight(weights::Harmonic{stride, offset});
}

Weight harmonic_sq_plus_gen2_weight() { return Weight(weights::HarmonicSqPlusGen2{}); }

Weight reciprocal_shift_weight() { return Weight(weights::ReciprocalShift{}); }

Weight digamma_diff_weight(Complex a, Complex b) {
  if (is_gamma_pole(2.0 * b) || is_gamma_pole(a + b + 0.5)) {
    throw PoleError("digamma_diff_weight: inner sum hits a zero denominator");
  }
  return Weight(weights::DigammaDiffSum{a, b});
}

Weight linear_combo(std::vector<std::pair<Complex, Weight>> terms) {
  return Weight(weights::LinearCombo{std::move(terms)});
}

WeightAccumulator::WeightAccumulator(const Weight& weight, long start) {
  state_ = std::visit(
      Overloaded{
          [](const weights::Unit&) -> State { return UnitState{}; },
          [](const weights::Harmonic& h) -> State { return HarmonicState{h.stride, h.offset}; },
          [](const weights::HarmonicSqPlusGen2&) -> State { return SqState{}; },
          [](const weights::ReciprocalShift&) -> State { return ReciprocalState{}; },
          [](const weights::DigammaDiffSum& d) -> State {
            return DigammaState{2.0 * d.b, d.a + d.b + 0.5, {}};
          },
          [](const weights::LinearCombo& combo) -> State {
            ComboState s;
            for (const auto& [coef, w] : combo.terms) {
              s.parts.emplace_back(coef, WeightAccumulator(w, 0));
            }
            return s;
          },
      },
      weight.kind());
  // At n = 0 the harmonic index is the offset itself.
  if (auto* h = std::get_if<HarmonicState>(&state_)) {
    for (long m = 1; m <= h->offset; ++m) {
      add_compensated(1.0 / static_cast<double>(m), h->sum, h->comp);
    }
  }
  n_ = 0;
  while (n_ < start) advance();
}

Complex WeightAccumulator::value() const {
  return std::visit(
      Overloaded{
          [](const UnitState&) -> Complex { return 1.0; },
          [this](const HarmonicState& h) -> Complex {
            const long m = h.stride * n_ + h.offset;
            return m <= 0 ? 0.0 : h.sum + h.comp;
          },
          [](const SqState& s) -> Complex {
            const double h = s.h + s.hc;
            return h * h + (s.h2 + s.h2c);
          },
          [this](const ReciprocalState&) -> Complex {
            return 1.0 / static_cast<double>(n_ + 1);
          },
          [](const DigammaState& d) -> Complex { return d.sum.value(); },
          [](const ComboState& c) -> Complex {
            Complex total = 0.0;
            for (const auto& [coef, acc] : c.parts) total += coef * acc.value();
            return total;
          },
      },
      state_);
}

void WeightAccumulator::advance() {
  step();
  ++n_;
}

// Moves the running state from n_ to n_ + 1 (n_ itself is updated by the caller).
void WeightAccumulator::step() {
  std::visit(
      Overloaded{
          [](UnitState&) {},
          [this](HarmonicState& h) {
            const long from = h.stride * n_ + h.offset;
            for (long m = from + 1; m <= from + h.stride; ++m) {
              if (m >= 1) add_compensated(1.0 / static_cast<double>(m), h.sum, h.comp);
            }
          },
          [this](SqState& s) {
            const double k = static_cast<double>(n_ + 1);
            add_compensated(1.0 / k, s.h, s.hc);
            add_compensated(1.0 / (k * k), s.h2, s.h2c);
          },
          [](ReciprocalState&) {},
          [this](DigammaState& d) {
            const double k = static_cast<double>(n_);
            d.sum.add(2.0 / (d.two_b + k) - 1.0 / (d.c + k));
          },
          [](ComboState& c) {
            for (auto& part : c.parts) part.second.advance();
          },
      },
      state_);
}

}  // namespace hyperharmonic
