#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hyperharmonic/catalog.hpp"
#include "hyperharmonic/errors.hpp"

namespace hyperharmonic {

namespace {

using ex::cos;
using ex::digamma;
using ex::elliptic_K;
using ex::gamma;
using ex::hyp2f1;
using ex::log;
using ex::pow;
using ex::sin;
using ex::sqrt;

constexpr double kPi = std::numbers::pi;
constexpr double kThird = 1.0 / 3.0;

Expr P(const char* name) { return Expr::param(name); }

Complex get(const Params& p, const char* name) { return p.at(name); }

bool off_pole(Complex z) { return !is_gamma_pole(z); }

bool real_in(Complex z, double lo, double hi) {
  return std::abs(z.imag()) < 1e-14 && z.real() >= lo && z.real() <= hi;
}

bool near_integer(Complex z) {
  return std::abs(z - Complex(std::round(z.real()), 0.0)) < kPoleTolerance;
}

std::function<Weight(const Params&)> weight(Weight w) {
  return [w = std::move(w)](const Params&) { return w; };
}

// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<Params> seeded_pairs(std::uint64_t seed, int count) {
  const std::vector<Complex> values = {0.1, 0.2, 0.25, kThird, 0.45,
                                       Complex(0.3, 0.1), Complex(0.2, -0.2)};
  std::mt19937_64 rng(seed);
  std::vector<Params> points;
  while (static_cast<int>(points.size()) < count) {
    const auto pick = [&] {
      const auto i = static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(values.size()));
      return values[std::min(i, values.size() - 1)];
    };
    const Complex a = pick();
    const Complex b = pick();
    points.push_back({{"a", a}, {"b", b}});
  }
  return points;
}

std::vector<Params> grid(const char* name, std::vector<Complex> values) {
  std::vector<Params> points;
  for (const Complex& v : values) points.push_back({{name, v}});
  return points;
}

std::vector<Complex> tenths() { return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}; }

std::vector<Params> pairs(std::vector<std::pair<Complex, Complex>> ab) {
  std::vector<Params> points;
  for (const auto& [a, b] : ab) points.push_back({{"a", a}, {"b", b}});
  return points;
}

// sum_{n>=1} (2a)_n (2b)_n / (n! (a+b+1/2)_n) w_n 2^-n
SeriesTerm kummer_half(Expr coefficient, Weight w) {
  SeriesTerm t;
  t.coefficient = std::move(coefficient);
  t.numerators = {2.0 * P("a"), 2.0 * P("b")};
  t.denominators = {P("a") + P("b") + 0.5};
  t.ratio = 0.5;
  t.weight = weight(std::move(w));
  return t;
}

// sum_{n>=1} (a)_n (b)_n / (n! (a+b+1/2)_n) w_n
SeriesTerm kummer_unit(Weight w) {
  SeriesTerm t;
  t.numerators = {P("a"), P("b")};
  t.denominators = {P("a") + P("b") + 0.5};
  t.weight = weight(std::move(w));
  return t;
}

// sum_{n>=1} (u)_n (1-u)_n / (n!)^2 w_n r^n x^n
SeriesTerm legendre_family(Expr u, Expr ratio, Expr argument, Weight w) {
  SeriesTerm t;
  t.numerators = {u, 1.0 - u};
  t.factorial_power = 2;
  t.ratio = std::move(ratio);
  t.argument = std::move(argument);
  t.weight = weight(std::move(w));
  return t;
}

std::vector<Identity> build_identities(std::uint64_t seed) {
  std::vector<Identity> out;
  const Expr a = P("a");
  const Expr b = P("b");
  const Expr pi = kPi;
  const Expr ln2 = std::log(2.0);
  const Expr ln3 = std::log(3.0);
  const Expr g14sq = pow(gamma(0.25), 2.0);
  const Expr g13cube = pow(gamma(kThird), 3.0);
  const auto thm_a_domain = [](const Params& p) {
    return off_pole(get(p, "a") + get(p, "b") + 0.5);
  };

  {
    Identity id;
    id.id = "THM-A1";
    id.citation = "Quadratic-transformation theorem, H_n formula: 2^-n series vs argument-1 series";
    id.parameters = {"a", "b"};
    id.domain_text = "a+b+1/2 not a non-positive integer";
    id.domain = thm_a_domain;
    id.lhs.series = {kummer_half(2.0, harmonic_weight())};
    id.rhs.series = {kummer_unit(harmonic_weight())};
    id.default_points = seeded_pairs(seed, 20);
    id.accel_required = true;
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "THM-A2";
    id.citation =
        "Quadratic-transformation theorem, H_n^2+H_n^(2) formula: 2^-n series vs argument-1 series";
    id.parameters = {"a", "b"};
    id.domain_text = "a+b+1/2 not a non-positive integer";
    id.domain = thm_a_domain;
    id.lhs.series = {kummer_half(4.0, harmonic_sq_plus_gen2_weight())};
    id.rhs.series = {kummer_unit(harmonic_sq_plus_gen2_weight())};
    id.default_points = seeded_pairs(seed, 20);
    id.accel_required = true;
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "COR-A1";
    id.citation = "Digamma corollary: sum (n+1)(2a)_n/(a+3/2)_n H_n 2^-n";
    id.parameters = {"a"};
    id.domain_text = "a+1/2 not a non-positive integer";
    id.domain = [](const Params& p) { return off_pole(get(p, "a") + 0.5); };
    SeriesTerm t;
    t.numerators = {2.0 * a, 2.0};
    t.denominators = {a + 1.5};
    t.ratio = 0.5;
    t.weight = weight(harmonic_weight());
    id.lhs.series = {t};
    id.rhs.closed = (a + 0.5) * (digamma(a + 0.5) - digamma(0.5));
    id.default_points = grid("a", tenths());
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "COR-A2";
    id.citation = "Argument-1/2 corollary: sum (a)_n(1-a)_n/(n!)^2 H_n 2^-n";
    id.parameters = {"a"};
    id.domain_text = "1-a/2 and (a+1)/2 not non-positive integers";
    id.domain = [](const Params& p) {
      const Complex v = get(p, "a");
      return off_pole(1.0 - v / 2.0) && off_pole((v + 1.0) / 2.0);
    };
    id.lhs.series = {legendre_family(a, 0.5, 1.0, harmonic_weight())};
    id.rhs.closed = sqrt(pi) / (2.0 * gamma(1.0 - a / 2.0) * gamma((a + 1.0) / 2.0)) *
                    (digamma(1.0 - a / 2.0) + digamma((a + 1.0) / 2.0) - digamma(1.0) -
                     digamma(0.5));
    id.default_points = grid("a", {1.0 / 6.0, 0.25, kThird, 0.5, 0.7});
    out.push_back(std::move(id));
  }
  const auto example = [&](const char* name, const char* citation, Expr u, Weight w,
                           Expr closed) {
    Identity id;
    id.id = name;
    id.citation = citation;
    id.lhs.series = {legendre_family(std::move(u), 0.5, 1.0, std::move(w))};
    id.rhs.closed = std::move(closed);
    id.default_points = {Params{}};
    out.push_back(std::move(id));
  };
  example("EX-1", "Example: sum C(2n,n)^2 H_n / 32^n", 0.5, harmonic_weight(),
          g14sq / (4.0 * sqrt(pi)) * (1.0 - 4.0 * ln2 / pi));
  example("EX-2", "Example: sum (3n)!/(n!)^3 H_n / 54^n", kThird, harmonic_weight(),
          g13cube / (pow(2.0, 7.0 / 3.0) * pi) * (sqrt(3.0) - 9.0 * ln3 / (2.0 * pi)));
  example("EX-3", "Example: sum C(2n,n)^2 H_2n / 32^n", 0.5, harmonic_weight(2),
          g14sq / (8.0 * sqrt(pi)) * (1.0 - 3.0 * ln2 / pi));
  example("EX-4", "Example: sum (3n)!/(n!)^3 H_3n / 54^n", kThird, harmonic_weight(3),
          g13cube / (pow(2.0, 7.0 / 3.0) * pi) *
              (1.0 / sqrt(3.0) + (2.0 * ln2 - 3.0 * ln3) / (2.0 * pi)));
  {
    Identity id;
    id.id = "SUM-CHOI";
    id.citation = "b-derivative of Kummer's sum at 1/2: digamma-difference inner sum";
    id.parameters = {"a", "b"};
    id.domain_text =
        "2b, a+b+1/2, a+1/2, b+1/2 not non-positive integers";
    id.domain = [](const Params& p) {
      const Complex va = get(p, "a");
      const Complex vb = get(p, "b");
      return off_pole(2.0 * vb) && off_pole(va + vb + 0.5) && off_pole(va + 0.5) &&
             off_pole(vb + 0.5);
    };
    SeriesTerm t = kummer_half(1.0, unit_weight());
    t.weight = [](const Params& p) { return digamma_diff_weight(get(p, "a"), get(p, "b")); };
    id.lhs.series = {t};
    id.rhs.closed = gamma(0.5) * gamma(a + b + 0.5) / (gamma(a + 0.5) * gamma(b + 0.5)) *
                    (digamma(a + b + 0.5) - digamma(b + 0.5));
    id.default_points = pairs({{0.25, 0.25}, {0.2, 0.35}, {kThird, 0.1},
                               {Complex(0.3, 0.1), Complex(0.2, -0.2)}});
    out.push_back(std::move(id));
  }
  example("SUM-MIX", "Specialized inner-sum identity: sum C(2n,n)^2 (4H_2n - 3H_n) / 32^n", 0.5,
          linear_combo({{4.0, harmonic_weight(2)}, {-3.0, harmonic_weight()}}),
          g14sq / (4.0 * sqrt(pi)) * (6.0 * ln2 / pi - 1.0));
  const auto elliptic = [&](const char* name, const char* citation, Weight w, Expr closed) {
    Identity id;
    id.id = name;
    id.citation = citation;
    id.parameters = {"k"};
    id.domain_text = "k real, 0 < k < 1";
    id.domain = [](const Params& p) {
      const Complex k = get(p, "k");
      return real_in(k, 1e-12, 1.0 - 1e-12);
    };
    id.lhs.series = {legendre_family(0.5, 1.0, P("k") * P("k"), std::move(w))};
    id.rhs.closed = std::move(closed);
    id.default_points = grid("k", tenths());
    out.push_back(std::move(id));
  };
  {
    const Expr k = P("k");
    const Expr kc = sqrt(1.0 - k * k);
    elliptic("GF-K1", "Elliptic generating function: sum C(2n,n)^2 H_n k^2n / 16^n",
             harmonic_weight(),
             elliptic_K(kc) + elliptic_K(k) / pi * log(k * k / (16.0 * (1.0 - k * k))));
    elliptic("GF-K2", "Elliptic generating function: sum C(2n,n)^2 H_2n k^2n / 16^n",
             harmonic_weight(2),
             0.5 * elliptic_K(kc) + elliptic_K(k) / pi * log(k / (4.0 * (1.0 - k * k))));
  }
  {
    Identity id;
    id.id = "THM-B";
    id.citation = "Generating function of (a)_n(1-a)_n/(n!)^2 H_n";
    id.parameters = {"a", "x"};
    id.domain_text = "a not an integer; x real, 0.04 <= x <= 0.96";
    id.domain = [](const Params& p) {
      const Complex va = get(p, "a");
      return !near_integer(va) && off_pole(1.0 - va / 2.0) && off_pole((va + 1.0) / 2.0) &&
             real_in(get(p, "x"), 0.04, 0.96);
    };
    const Expr x = P("x");
    id.lhs.series = {legendre_family(a, 1.0, x, harmonic_weight())};
    const Expr f_x = hyp2f1(a, 1.0 - a, 1.0, x);
    const Expr f_1mx = hyp2f1(a, 1.0 - a, 1.0, 1.0 - x);
    id.rhs.closed = pi / (2.0 * sin(pi * a)) * f_1mx +
                    0.5 *
                        (digamma(1.0 - a / 2.0) + digamma((a + 1.0) / 2.0) - digamma(1.0) -
                         digamma(0.5) - pi / sin(pi * a) - log((1.0 - x) / x)) *
                        f_x;
    for (Complex va : {Complex(0.5), Complex(kThird), Complex(0.25), Complex(1.0 / 6.0)}) {
      for (Complex vx : tenths()) id.default_points.push_back({{"a", va}, {"x", vx}});
    }
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "EQ-H3N";
    id.citation = "Generating function of (3n)!/(n!)^3 H_3n / 27^n";
    id.parameters = {"x"};
    id.domain_text = "x real, 0.04 <= x <= 0.96";
    id.domain = [](const Params& p) { return real_in(get(p, "x"), 0.04, 0.96); };
    const Expr x = P("x");
    id.lhs.series = {legendre_family(kThird, 1.0, x, harmonic_weight(3))};
    id.rhs.closed = pi / (3.0 * sqrt(3.0)) * hyp2f1(kThird, 2.0 * kThird, 1.0, 1.0 - x) -
                    hyp2f1(kThird, 2.0 * kThird, 1.0, x) *
                        log(sqrt(3.0 * (1.0 - x)) / pow(x, 1.0 / 6.0));
    id.default_points = grid("x", tenths());
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "VAL-ALG";
    id.citation =
        "Algebraic special values: 2F1(1/3,2/3;1;x1) = sqrt(3) 2F1(1/3,2/3;1;x2) in gamma form";
    id.parameters = {"j"};
    id.domain_text = "j in {1, 2}: j=1 is 2F1 at 3(3-sqrt3)/4, j=2 is sqrt3 2F1 at (3sqrt3-5)/4";
    id.domain = [](const Params& p) {
      const Complex j = get(p, "j");
      return j == 1.0 || j == 2.0;
    };
    const Expr j = P("j");
    const double x1 = 3.0 * (3.0 - std::sqrt(3.0)) / 4.0;
    const double x2 = (3.0 * std::sqrt(3.0) - 5.0) / 4.0;
    SeriesTerm t = legendre_family(kThird, 1.0, x1 + (j - 1.0) * (x2 - x1), unit_weight());
    t.start_index = 0;
    t.coefficient = 1.0 + (j - 1.0) * (sqrt(3.0) - 1.0);
    id.lhs.series = {t};
    id.rhs.closed = pow(3.0, 3.0 / 8.0) * pow(2.0 + sqrt(3.0), 0.25) * g14sq /
                    pow(2.0 * pi, 1.5);
    id.default_points = grid("j", {1.0, 2.0});
    out.push_back(std::move(id));
  }
  const auto gauss_pairs = pairs({{0.1, 0.1},
                                  {0.1, -0.25},
                                  {-0.25, 0.3},
                                  {Complex(0.2, -0.2), -0.1},
                                  {-0.4, 0.45},
                                  {Complex(0.1, 0.2), Complex(0.1, -0.2)}});
  {
    Identity id;
    id.id = "THM-C";
    id.citation = "Argument-1 sum with H_n/(n+1)";
    id.parameters = {"a", "b"};
    id.domain_text = "Re(a+b) < 1/2; a, b not positive integers; 2a, 2b != 1";
    id.domain = [](const Params& p) {
      const Complex va = get(p, "a");
      const Complex vb = get(p, "b");
      return (va + vb).real() < 0.5 && off_pole(va + vb + 0.5) && off_pole(1.0 - va) &&
             off_pole(1.0 - vb) && std::abs(2.0 * va - 1.0) > kPoleTolerance &&
             std::abs(2.0 * vb - 1.0) > kPoleTolerance;
    };
    SeriesTerm t;
    t.numerators = {2.0 * a, 2.0 * b, 1.0};
    t.denominators = {a + b + 0.5, 2.0};
    t.weight = weight(harmonic_weight());
    id.lhs.series = {t};
    id.rhs.closed = (2.0 * a + 2.0 * b - 1.0) * sin(pi * a) * sin(pi * b) /
                    ((2.0 * a - 1.0) * (2.0 * b - 1.0) * cos(pi * (a + b))) *
                    (digamma(0.5) + digamma(1.5 - a - b) - digamma(1.0 - a) - digamma(1.0 - b));
    id.default_points = gauss_pairs;
    id.accel_required = true;
    id.tol = kUnitIdentityTolerance;
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "SUM-GAUSSD";
    id.citation = "c-derivative of Gauss' sum at c=1/2: weight 2H_2n - H_n";
    id.parameters = {"a", "b"};
    id.domain_text = "Re(a+b) < 1/2; 1/2-a, 1/2-b, 1/2-a-b not non-positive integers";
    id.domain = [](const Params& p) {
      const Complex va = get(p, "a");
      const Complex vb = get(p, "b");
      return (va + vb).real() < 0.5 && off_pole(0.5 - va) && off_pole(0.5 - vb) &&
             off_pole(0.5 - va - vb);
    };
    SeriesTerm t;
    t.coefficient = -1.0;
    t.numerators = {a, b};
    t.denominators = {0.5};
    t.weight = weight(linear_combo({{2.0, harmonic_weight(2)}, {-1.0, harmonic_weight()}}));
    id.lhs.series = {t};
    id.rhs.closed = gamma(0.5) * gamma(0.5 - a - b) / (gamma(0.5 - a) * gamma(0.5 - b)) *
                    (digamma(0.5) + digamma(0.5 - a - b) - digamma(0.5 - a) - digamma(0.5 - b));
    id.default_points = gauss_pairs;
    id.accel_required = true;
    id.tol = kUnitIdentityTolerance;
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "THM-D";
    id.citation = "ln 4 transformation, symmetric form (left minus right side)";
    id.parameters = {"a", "b"};
    id.domain_text = "Re(a+b) > 0; 1+a, 1+b not non-positive integers";
    id.domain = [](const Params& p) {
      const Complex va = get(p, "a");
      const Complex vb = get(p, "b");
      return (va + vb).real() > 0.0 && off_pole(1.0 + va) && off_pole(1.0 + vb);
    };
    SeriesTerm first;
    first.numerators = {0.5, a + b};
    first.denominators = {1.0 + a, 1.0 + b};
    first.factorial_power = 0;
    first.weight = weight(harmonic_weight());
    SeriesTerm alternating;
    alternating.coefficient = -4.0;
    alternating.numerators = {1.0 - a, 1.0 - b};
    alternating.denominators = {1.0 + a, 1.0 + b};
    alternating.factorial_power = 0;
    alternating.ratio = -1.0;
    alternating.weight = weight(harmonic_weight());
    SeriesTerm hyper = first;
    hyper.coefficient = -std::log(4.0);
    hyper.start_index = 0;
    hyper.weight = weight(unit_weight());
    id.lhs.series = {first, alternating, hyper};
    id.default_points = pairs({{0.3, 0.45}, {0.1, 0.2}, {0.25, 0.25}, {kThird, 0.1},
                               {Complex(0.3, 0.1), Complex(0.2, -0.2)}});
    id.accel_required = true;
    id.tol = kUnitIdentityTolerance;
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "COR-D";
    id.citation = "Curious sum: (3/4)_n/(5/4)_n (1/4 - (-1)^n)/(2n+1) H_n";
    SeriesTerm plain;
    plain.coefficient = 0.25;
    plain.numerators = {0.75, 0.5};
    plain.denominators = {1.25, 1.5};
    plain.factorial_power = 0;
    plain.weight = weight(harmonic_weight());
    SeriesTerm alternating = plain;
    alternating.coefficient = -1.0;
    alternating.ratio = -1.0;
    id.lhs.series = {plain, alternating};
    id.rhs.closed = pow(gamma(0.25), 4.0) * ln2 / (64.0 * pi);
    id.default_points = {Params{}};
    id.accel_required = true;
    id.tol = 1e-8;
    out.push_back(std::move(id));
  }
  {
    Identity id;
    id.id = "THM-E";
    id.citation = "ln 2 relation between H_n and H_2n argument-1 series";
    id.parameters = {"b"};
    id.domain_text = "Re b > 1/2";
    id.domain = [](const Params& p) {
      const Complex vb = get(p, "b");
      return vb.real() > 0.5 && off_pole(2.0 * vb - 0.5);
    };
    SeriesTerm left;
    left.coefficient = 0.25;
    left.numerators = {0.5, b};
    left.denominators = {2.0 * b};
    left.weight = weight(harmonic_weight());
    SeriesTerm right;
    right.numerators = {0.5, 1.0 - b};
    right.denominators = {b + 0.5};
    right.weight = weight(harmonic_weight(2));
    id.lhs.series = {left};
    id.rhs.series = {right};
    id.rhs.closed =
        gamma(b + 0.5) * gamma(2.0 * b - 1.0) / (gamma(b) * gamma(2.0 * b - 0.5)) * ln2;
    id.default_points = grid("b", {0.75, 1.2, 2.0, 3.0});
    id.accel_required = true;
    id.tol = kUnitIdentityTolerance;
    out.push_back(std::move(id));
  }
  return out;
}

// Series evaluation shared by the transformation checks.
Complex sum_hyper(std::vector<Complex> numerators, std::vector<Complex> denominators, Complex z,
                  const EvalContext& ctx) {
  const auto spec = hypergeometric(std::move(numerators), std::move(denominators));
  const bool unit = classify(spec, unit_weight(), z).kind != ConvergenceInfo::Kind::geometric;
  const SeriesResult r = eval_weighted(spec, unit_weight(), z, unit ? ctx.tol : ctx.geometric_tol,
                                       ctx.max_terms, ctx.accel);
  if (ctx.tally) ctx.tally->record(r);
  return r.value;
}

Complex f21(Complex a, Complex b, Complex c, Complex z, const EvalContext& ctx) {
  return sum_hyper({a, b}, {c}, z, ctx);
}

std::vector<Params> with_z(std::vector<Params> base, std::vector<Complex> zs) {
  std::vector<Params> out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    Params p = base[i];
    p["z"] = zs[i % zs.size()];
    out.push_back(std::move(p));
  }
  return out;
}

Complex kummer_constant(Complex a, Complex b) {
  const std::vector<Complex> num = {0.5, a + b + 0.5};
  const std::vector<Complex> den = {a + 0.5, b + 0.5};
  return gamma_ratio(num, den);
}

bool watson_convergent(Complex a, Complex b, Complex c, double eps) {
  const Complex sigma = a + b - c + eps / 2.0 - 0.5;
  return sigma.real() <= -0.1;
}

std::vector<Transformation> build_transformations() {
  std::vector<Transformation> out;
  const auto ab_points = pairs({{0.3, 0.45}, {0.25, kThird}, {Complex(0.2, 0.1), 0.1}});
  {
    Transformation t;
    t.id = "TR-2.11.2";
    t.citation = "Quadratic transformation z -> 4z(1-z) with c = a+b+1/2";
    t.parameters = {"a", "b", "z"};
    t.domain_text = "|z| <= 0.35, Re z < 1/2, |4z(1-z)| <= 0.9";
    t.legal = [](const Params& p) {
      const Complex z = get(p, "z");
      return std::abs(z) <= 0.35 && z.real() < 0.5 && std::abs(4.0 * z * (1.0 - z)) <= 0.9 &&
             off_pole(get(p, "a") + get(p, "b") + 0.5);
    };
    t.lhs = [](const Params& p, const EvalContext& ctx) {
      const Complex a = get(p, "a"), b = get(p, "b");
      return f21(2.0 * a, 2.0 * b, a + b + 0.5, get(p, "z"), ctx);
    };
    t.rhs = [](const Params& p, const EvalContext& ctx) {
      const Complex a = get(p, "a"), b = get(p, "b"), z = get(p, "z");
      return f21(a, b, a + b + 0.5, 4.0 * z * (1.0 - z), ctx);
    };
    t.default_points = with_z(ab_points, {0.2, Complex(-0.1, 0.1), 0.0});
    out.push_back(std::move(t));
  }
  {
    Transformation t;
    t.id = "TR-2.11.7";
    t.citation = "Quadratic transformation pairing arguments (1+z)/2 and (1-z)/2 with z^2";
    t.parameters = {"a", "b", "z"};
    t.domain_text = "|(1+z)/2| <= 0.9, |(1-z)/2| <= 0.9, |z^2| <= 0.9";
    t.legal = [](const Params& p) {
      const Complex z = get(p, "z");
      const Complex a = get(p, "a"), b = get(p, "b");
      return std::abs((1.0 + z) / 2.0) <= 0.9 && std::abs((1.0 - z) / 2.0) <= 0.9 &&
             std::abs(z * z) <= 0.9 && off_pole(a + b + 0.5) && off_pole(a + 0.5) &&
             off_pole(b + 0.5);
    };
    t.lhs = [](const Params& p, const EvalContext& ctx) {
      const Complex a = get(p, "a"), b = get(p, "b"), z = get(p, "z");
      return 2.0 * kummer_constant(a, b) * f21(a, b, 0.5, z * z, ctx);
    };
    t.rhs = [](const Params& p, const EvalContext& ctx) {
      const Complex a = get(p, "a"), b = get(p, "b"), z = get(p, "z");
      const Complex c = a + b + 0.5;
      return f21(2.0 * a, 2.0 * b, c, (1.0 + z) / 2.0, ctx) +
             f21(2.0 * a, 2.0 * b, c, (1.0 - z) / 2.0, ctx);
    };
    t.default_points = with_z(ab_points, {0.3, Complex(0.1, -0.4), -0.5});
    out.push_back(std::move(t));
  }
  {
    Transformation t;
    t.id = "TR-2.11.5";
    t.citation = "Quadratic transformation z -> 4z/(1+z)^2 with c = 2b";
    t.parameters = {"a", "b", "z"};
    t.domain_text = "|z| <= 0.5, |4z/(1+z)^2| <= 0.9";
    t.legal = [](const Params& p) {
      const Complex z = get(p, "z");
      const Complex b = get(p, "b");
      return std::abs(z) <= 0.5 && std::abs(4.0 * z / ((1.0 + z) * (1.0 + z))) <= 0.9 &&
             off_pole(2.0 * b) && off_pole(b + 0.5);
    };
    t.lhs = [](const Params& p, const EvalContext& ctx) {
      const Complex a = get(p, "a"), b = get(p, "b"), z = get(p, "z");
      return std::pow(1.0 + z, -2.0 * a) * f21(a, b, 2.0 * b, 4.0 * z / ((1.0 + z) * (1.0 + z)), ctx);
    };
    t.rhs = [](const Params& p, const EvalContext& ctx) {
      const Complex a = get(p, "a"), b = get(p, "b"), z = get(p, "z");
      return f21(a, a + 0.5 - b, b + 0.5, z * z, ctx);
    };
    t.default_points = with_z(ab_points, {0.2, Complex(0.1, 0.15), -0.15});
    out.push_back(std::move(t));
  }
  {
    Transformation t;
    t.id = "TR-4.5.1";
    t.citation = "Quadratic transformation of a well-poised 3F2, z -> 4z/(1+z)^2";
    t.parameters = {"a", "b", "c", "z"};
    t.domain_text = "|z| <= 0.5, |4z/(1+z)^2| <= 0.9; a-b+1, a-c+1 not non-positive integers";
    t.legal = [](const Params& p) {
      const Complex z = get(p, "z");
      const Complex a = get(p, "a"), b = get(p, "b"), c = get(p, "c");
      return std::abs(z) <= 0.5 && std::abs(4.0 * z / ((1.0 + z) * (1.0 + z))) <= 0.9 &&
             off_pole(a - b + 1.0) && off_pole(a - c + 1.0);
    };
    t.lhs = [](const Params& p, const EvalContext& ctx) {
      const Complex a = get(p, "a"), b = get(p, "b"), c = get(p, "c"), z = get(p, "z");
      return sum_hyper({a, b, c}, {a - b + 1.0, a - c + 1.0}, -z, ctx);
    };
    t.rhs = [](const Params& p, const EvalContext& ctx) {
      const Complex a = get(p, "a"), b = get(p, "b"), c = get(p, "c"), z = get(p, "z");
      return std::pow(1.0 + z, -a) * sum_hyper({a - b - c + 1.0, a / 2.0, (a + 1.0) / 2.0},
                                               {a - b + 1.0, a - c + 1.0},
                                               4.0 * z / ((1.0 + z) * (1.0 + z)), ctx);
    };
    t.default_points = {{{"a", 1.0}, {"b", 0.3}, {"c", 0.35}, {"z", 0.2}},
                        {{"a", 0.2}, {"b", 0.15}, {"c", 0.35}, {"z", 0.3}},
                        {{"a", Complex(0.4, 0.1)}, {"b", 0.25}, {"c", 0.1}, {"z", Complex(0.1, -0.2)}}};
    out.push_back(std::move(t));
  }
  {
    Transformation t;
    t.id = "SUM-2.8.46";
    t.citation = "Gauss' summation 2F1(a,b;c;1)";
    t.parameters = {"a", "b", "c"};
    t.domain_text = "Re(c-a-b) > 0; c, c-a, c-b not non-positive integers";
    t.legal = [](const Params& p) {
      const Complex a = get(p, "a"), b = get(p, "b"), c = get(p, "c");
      return (c - a - b).real() > 0.0 && off_pole(c) && off_pole(c - a) && off_pole(c - b);
    };
    t.lhs = [](const Params& p, const EvalContext& ctx) {
      return f21(get(p, "a"), get(p, "b"), get(p, "c"), 1.0, ctx);
    };
    t.rhs = [](const Params& p, const EvalContext&) {
      const Complex a = get(p, "a"), b = get(p, "b"), c = get(p, "c");
      const std::vector<Complex> num = {c, c - a - b};
      const std::vector<Complex> den = {c - a, c - b};
      return gamma_ratio(num, den);
    };
    t.default_points = {{{"a", 0.25}, {"b", 0.25}, {"c", 1.5}},
                        {{"a", 0.3}, {"b", 0.2}, {"c", 1.1}},
                        {{"a", Complex(0.1, 0.2)}, {"b", 0.3}, {"c", 1.4}}};
    t.tol = kUnitIdentityTolerance;
    out.push_back(std::move(t));
  }
  {
    Transformation t;
    t.id = "SUM-2.8.50";
    t.citation = "Kummer's summation at argument 1/2";
    t.parameters = {"a", "b"};
    t.domain_text = "a+b+1/2, a+1/2, b+1/2 not non-positive integers";
    t.legal = [](const Params& p) {
      const Complex a = get(p, "a"), b = get(p, "b");
      return off_pole(a + b + 0.5) && off_pole(a + 0.5) && off_pole(b + 0.5);
    };
    t.lhs = [](const Params& p, const EvalContext& ctx) {
      const Complex a = get(p, "a"), b = get(p, "b");
      return f21(2.0 * a, 2.0 * b, a + b + 0.5, 0.5, ctx);
    };
    t.rhs = [](const Params& p, const EvalContext&) {
      return kummer_constant(get(p, "a"), get(p, "b"));
    };
    t.default_points = pairs({{0.25, 0.25}, {0.2, 0.35}, {Complex(0.3, 0.1), Complex(0.2, -0.2)}});
    out.push_back(std::move(t));
  }
  {
    Transformation t;
    t.id = "SUM-2.8.51";
    t.citation = "Summation of 2F1(a,1-a;c+1;1/2)";
    t.parameters = {"a", "c"};
    t.domain_text = "c+1, (c-a)/2+1, (c+a+1)/2 not non-positive integers";
    t.legal = [](const Params& p) {
      const Complex a = get(p, "a"), c = get(p, "c");
      return off_pole(c + 1.0) && off_pole((c - a) / 2.0 + 1.0) &&
             off_pole((c + a + 1.0) / 2.0) && off_pole(c / 2.0 + 1.0) && off_pole((c + 1.0) / 2.0);
    };
    t.lhs = [](const Params& p, const EvalContext& ctx) {
      const Complex a = get(p, "a"), c = get(p, "c");
      return f21(a, 1.0 - a, c + 1.0, 0.5, ctx);
    };
    t.rhs = [](const Params& p, const EvalContext&) {
      const Complex a = get(p, "a"), c = get(p, "c");
      const std::vector<Complex> num = {c / 2.0 + 1.0, (c + 1.0) / 2.0};
      const std::vector<Complex> den = {(c - a) / 2.0 + 1.0, (c + a + 1.0) / 2.0};
      return gamma_ratio(num, den);
    };
    t.default_points = {{{"a", 0.2}, {"c", 0.4}},
                        {{"a", kThird}, {"c", 0.0}},
                        {{"a", Complex(0.3, 0.2)}, {"c", 1.3}}};
    out.push_back(std::move(t));
  }
  const std::vector<Params> watson_points = {
      {{"a", 0.2}, {"b", 0.15}, {"c", 0.9}},
      {{"a", 0.1}, {"b", 0.3}, {"c", 0.7}},
      {{"a", 0.25}, {"b", 0.25}, {"c", 1.2}},
      {{"a", Complex(0.1, 0.1)}, {"b", 0.2}, {"c", 0.8}}};
  {
    Transformation t;
    t.id = "WATSON";
    t.citation = "Watson's sum for 3F2(2a,2b,c;a+b+1/2,2c;1)";
    t.parameters = {"a", "b", "c"};
    t.domain_text = "Re(c-a-b) >= -0.4 (absolute convergence with margin); no gamma poles";
    t.legal = [](const Params& p) {
      const Complex a = get(p, "a"), b = get(p, "b"), c = get(p, "c");
      return watson_convergent(a, b, c, 0.0) && off_pole(a + b + 0.5) && off_pole(2.0 * c) &&
             off_pole(a + 0.5) && off_pole(b + 0.5) && off_pole(0.5 - a + c) &&
             off_pole(0.5 - b + c);
    };
    t.lhs = [](const Params& p, const EvalContext& ctx) {
      const Complex a = get(p, "a"), b = get(p, "b"), c = get(p, "c");
      return sum_hyper({2.0 * a, 2.0 * b, c}, {a + b + 0.5, 2.0 * c}, 1.0, ctx);
    };
    t.rhs = [](const Params& p, const EvalContext&) {
      const Complex a = get(p, "a"), b = get(p, "b"), c = get(p, "c");
      const std::vector<Complex> num = {0.5, a + b + 0.5, c + 0.5, 0.5 - a - b + c};
      const std::vector<Complex> den = {a + 0.5, b + 0.5, 0.5 - a + c, 0.5 - b + c};
      return gamma_ratio(num, den);
    };
    t.default_points = watson_points;
    t.tol = kUnitIdentityTolerance;
    out.push_back(std::move(t));
  }
  {
    Transformation t;
    t.id = "WATSON-PM";
    t.citation = "Watson-type sums 3F2(2a,2b,c+eps/2;a+b+1/2,2c;1), eps = +1 or -1";
    t.parameters = {"a", "b", "c", "eps"};
    t.domain_text = "eps = +1 or -1; Re(c-a-b) >= eps/2 - 0.4; no gamma poles";
    t.legal = [](const Params& p) {
      const Complex a = get(p, "a"), b = get(p, "b"), c = get(p, "c"), eps = get(p, "eps");
      if (eps != 1.0 && eps != -1.0) return false;
      return watson_convergent(a, b, c, eps.real()) && off_pole(a + b + 0.5) &&
             off_pole(2.0 * c) && off_pole(c) && off_pole(c - a - b) && off_pole(a + 0.5) &&
             off_pole(b + 0.5) && off_pole(a) && off_pole(b);
    };
    t.lhs = [](const Params& p, const EvalContext& ctx) {
      const Complex a = get(p, "a"), b = get(p, "b"), c = get(p, "c"), eps = get(p, "eps");
      return sum_hyper({2.0 * a, 2.0 * b, c + eps / 2.0}, {a + b + 0.5, 2.0 * c}, 1.0, ctx);
    };
    t.rhs = [](const Params& p, const EvalContext&) {
      const Complex a = get(p, "a"), b = get(p, "b"), c = get(p, "c"), eps = get(p, "eps");
      const std::vector<Complex> num = {0.5, c, a + b + 0.5, c - a - b};
      const std::vector<Complex> den_even = {a + 0.5, b + 0.5, c - a, c - b};
      const std::vector<Complex> den_odd = {a, b, c - a + 0.5, c - b + 0.5};
      return gamma_ratio(num, den_even) + eps * gamma_ratio(num, den_odd);
    };
    for (double eps : {1.0, -1.0}) {
      for (Params p : watson_points) {
        p["eps"] = eps;
        t.default_points.push_back(std::move(p));
      }
    }
    t.tol = kUnitIdentityTolerance;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

PochhammerRatioSeries SeriesTerm::spec(const Params& params) const {
  PochhammerRatioSeries s;
  for (const Expr& e : numerators) s.numerator_shifts.push_back(e.eval(params));
  for (const Expr& e : denominators) s.denominator_shifts.push_back(e.eval(params));
  s.factorial_power = factorial_power;
  s.geometric_ratio = ratio.eval(params);
  s.start_index = start_index;
  return s;
}

Registry::Registry(std::uint64_t seed)
    : seed_(seed),
      identities_(build_identities(seed)),
      transformations_(build_transformations()) {}

const Identity& Registry::identity(std::string_view id) const {
  for (const Identity& i : identities_) {
    if (i.id == id) return i;
  }
  throw NotFound("no identity with id '" + std::string(id) + "'");
}

const Transformation& Registry::transformation(std::string_view id) const {
  for (const Transformation& t : transformations_) {
    if (t.id == id) return t;
  }
  throw NotFound("no transformation with id '" + std::string(id) + "'");
}

bool Registry::contains(std::string_view id) const {
  const auto same = [id](const auto& entry) { return entry.id == id; };
  return std::any_of(identities_.begin(), identities_.end(), same) ||
         std::any_of(transformations_.begin(), transformations_.end(), same);
}

void Registry::replace_rhs(std::string_view id, Side rhs) {
  for (Identity& i : identities_) {
    if (i.id == id) {
      i.rhs = std::move(rhs);
      return;
    }
  }
  throw NotFound("no identity with id '" + std::string(id) + "'");
}

}  // namespace hyperharmonic
