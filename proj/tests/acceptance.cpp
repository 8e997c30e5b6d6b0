// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyperharmonic/catalog.hpp"
#include "hyperharmonic/cli.hpp"
#include "hyperharmonic/specialfn.hpp"
#include "support.hpp"

using namespace hyperharmonic;
using namespace hyperharmonic::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// tests/oracles/frozen_constants.py
constexpr double kEx1 = 0.21777516068448380718233503703;
constexpr double kEx2 = 0.192354742736257904750535052361;
constexpr double kEx3 = 0.313425019919352917497606932286;
constexpr double kEx4 = 0.332041644207653981254962775141;
constexpr double kSumMix = 0.600374597623960248443422618053;
constexpr double kCorD = 0.595689458198317832261971270395;
constexpr double kValAlg = 1.75145790952349681069234484267;
constexpr double kEllipKInvSqrt2 = 1.8540746773013719184338503472;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double rel(Complex got, double want) { return std::abs(got - want) / std::abs(want); }

// Relative error, or absolute error for a side that is identically zero.
double error_of(const VerificationResult& r) { return r.rhs == 0.0 ? r.abs_err : r.rel_err; }

struct Sweep {
  std::size_t points = 0;
  std::size_t passed = 0;
  double worst = 0.0;
  long max_terms = 0;
  std::string methods;
};

Sweep sweep(const Registry& reg, const std::string& id, const std::vector<Params>& points,
            double threshold) {
  Sweep s;
  for (const Params& p : points) {
    const VerificationResult r = verify(reg, id, p, threshold);
    ++s.points;
    const double e = error_of(r);
    if (r.pass && e <= threshold) ++s.passed;
    s.worst = std::max(s.worst, e);
    s.max_terms = std::max(s.max_terms, r.terms_used);
    if (s.methods.find(r.method) == std::string::npos) {
      s.methods += (s.methods.empty() ? "" : ",") + r.method;
    }
  }
  return s;
}

Sweep sweep_defaults(const Registry& reg, const std::string& id, double threshold) {
  return sweep(reg, id, reg.identity(id).default_points, threshold);
}

Outcome describe(const std::string& id, const Sweep& s, double threshold) {
  Outcome o;
  o.pass = s.points > 0 && s.passed == s.points;
  o.detail = id + " " + std::to_string(s.passed) + "/" + std::to_string(s.points) +
             " points, worst " + sci(s.worst) + " <= " + sci(threshold) + " [" + s.methods + "]";
  return o;
}

Outcome combine(const std::vector<Outcome>& parts) {
  Outcome o;
  for (const Outcome& p : parts) {
    o.pass = o.pass && p.pass;
    o.detail += (o.detail.empty() ? "" : "; ") + p.detail;
  }
  return o;
}

Outcome expect(bool ok, std::string detail) { return {ok, std::move(detail)}; }

Outcome example(const Registry& reg, const std::string& id, double oracle, long term_cap) {
  const VerificationResult r = verify(reg, id, {}, 1e-10);
  const double vs_oracle = rel(r.lhs, oracle);
  const bool ok = r.pass && r.rel_err <= 1e-10 && vs_oracle <= 1e-10 && r.terms_used <= term_cap;
  return expect(ok, id + " rel_err " + sci(r.rel_err) + ", lhs vs 30-digit oracle " +
                        sci(vs_oracle) + ", " + std::to_string(r.terms_used) + " terms");
}

std::vector<Params> tenths(const char* name) {
  std::vector<Params> out;
  for (int i = 1; i <= 9; ++i) out.push_back({{name, 0.1 * i}});
  return out;
}

Outcome criterion_5(const Registry& reg) {
  std::vector<Outcome> parts;
  for (const char* id : {"THM-A1", "THM-A2"}) {
    const auto& pts = reg.identity(id).default_points;
    bool complex = false;
    for (const Params& p : pts) complex = complex || p.at("a").imag() != 0.0 || p.at("b").imag() != 0.0;
    Outcome o = describe(id, sweep_defaults(reg, id, 1e-8), 1e-8);
    o.pass = o.pass && pts.size() == 20 && complex;
    parts.push_back(o);
  }
  return combine(parts);
}

Outcome criterion_7(const Registry& reg) {
  std::vector<Params> pts;
  for (double a : {1.0 / 6.0, 0.25, 1.0 / 3.0, 0.5, 0.7}) pts.push_back({{"a", a}});
  const Outcome cor = describe("COR-A2", sweep(reg, "COR-A2", pts, 1e-9), 1e-9);

  std::mt19937_64 rng(kDefaultSeed);
  const Transformation& t = reg.transformation("SUM-2.8.51");
  double worst = 0.0;
  int tested = 0;
  while (tested < 10) {
    const Params p{{"a", random_complex(rng, -0.8, 0.8)}, {"c", random_complex(rng, 0.1, 1.5)}};
    if (!t.legal(p)) continue;
    ++tested;
    worst = std::max(worst, check_transformation(reg, t.id, p, std::nullopt, 1e-12));
  }
  return combine({cor, expect(worst <= 1e-10, "SUM-2.8.51 worst residual " + sci(worst) +
                                                  " at 10 random (a,c)")});
}

Outcome criterion_8(const Registry& reg) {
  const Params quarter{{"a", 0.25}, {"b", 0.25}};
  const Outcome choi = describe("SUM-CHOI", sweep(reg, "SUM-CHOI", {quarter}, 1e-8), 1e-8);
  const VerificationResult mix = verify(reg, "SUM-MIX", {}, 1e-8);
  const double vs_oracle = rel(mix.rhs, kSumMix);
  return combine({choi, expect(mix.pass && mix.rel_err <= 1e-8 && vs_oracle <= 1e-12,
                               "SUM-MIX rel_err " + sci(mix.rel_err) + ", rhs vs oracle " +
                                   sci(vs_oracle))});
}

Outcome criterion_9(const Registry& reg) {
  const double lemniscate = rel(elliptic_K(1.0 / std::sqrt(2.0)), kEllipKInvSqrt2);
  return combine({describe("GF-K1", sweep(reg, "GF-K1", tenths("k"), 1e-9), 1e-9),
                  describe("GF-K2", sweep(reg, "GF-K2", tenths("k"), 1e-9), 1e-9),
                  expect(lemniscate <= 1e-14, "AGM K(1/sqrt2) vs oracle " + sci(lemniscate))});
}

Outcome criterion_10(const Registry& reg) {
  std::vector<Params> pts;
  for (double a : {0.5, 1.0 / 3.0, 0.25, 1.0 / 6.0}) {
    for (int i = 1; i <= 9; ++i) pts.push_back({{"a", a}, {"x", 0.1 * i}});
  }
  const Outcome values = describe("THM-B", sweep(reg, "THM-B", pts, 1e-8), 1e-8);
  const std::vector<double> grid{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  const double ode = ode_residual(0.5, grid, 1e-3);
  double slope_err = 0.0;
  for (double a : {0.5, 1.0 / 3.0, 0.25, 1.0 / 6.0}) {
    const double want = std::sin(kPi * a) / kPi;
    slope_err = std::max(slope_err, std::abs(boundary_log_slope(a, 1e-3, 1e-4) - want) / want);
  }
  return combine({values, expect(ode <= 1e-4, "ODE residual " + sci(ode) + " (h=1e-3)"),
                  expect(slope_err <= 0.05, "log-slope vs sin(pi a)/pi within " +
                                                sci(100.0 * slope_err) + "%")});
}

Outcome criterion_11(const Registry& reg) {
  std::vector<Outcome> parts;
  for (double j : {1.0, 2.0}) {
    const Params p{{"j", j}};
    const VerificationResult r = verify(reg, "VAL-ALG", p, 1e-9);
    const double vs_oracle = rel(r.rhs, kValAlg);
    parts.push_back(expect(r.pass && r.rel_err <= 1e-9 && vs_oracle <= 1e-13 &&
                               r.terms_used <= kDefaultMaxTerms && r.method == "direct",
                           std::string(j == 1.0 ? "x1" : "x2") + " rel_err " + sci(r.rel_err) +
                               ", " + std::to_string(r.terms_used) + " terms " + r.method));
  }
  return combine(parts);
}

Outcome criterion_13(const Registry& reg) {
  const auto& pts = reg.identity("THM-C").default_points;
  bool bounded = pts.size() == 6;
  for (const Params& p : pts) bounded = bounded && (p.at("a") + p.at("b")).real() <= 0.2;
  Outcome thm = describe("THM-C", sweep(reg, "THM-C", pts, 1e-6), 1e-6);
  thm.pass = thm.pass && bounded;
  return combine({thm, describe("SUM-GAUSSD", sweep(reg, "SUM-GAUSSD", pts, 1e-6), 1e-6)});
}

Outcome transformation_sweep(const Registry& reg, const std::string& id, double threshold) {
  const Transformation& t = reg.transformation(id);
  Sweep s;
  for (const Params& p : t.default_points) {
    const VerificationResult r = verify_transformation(reg, id, p, threshold);
    ++s.points;
    if (r.pass) ++s.passed;
    s.worst = std::max(s.worst, r.rel_err);
    if (s.methods.find(r.method) == std::string::npos) {
      s.methods += (s.methods.empty() ? "" : ",") + r.method;
    }
  }
  return describe(id, s, threshold);
}

Outcome criterion_14(const Registry& reg) {
  const auto& pm = reg.transformation("WATSON-PM").default_points;
  int plus = 0, minus = 0;
  for (const Params& p : pm) (p.at("eps") == 1.0 ? plus : minus)++;
  Outcome o = combine({transformation_sweep(reg, "WATSON", 1e-6),
                       transformation_sweep(reg, "WATSON-PM", 1e-6)});
  o.pass = o.pass && reg.transformation("WATSON").default_points.size() == 4 && plus == 4 &&
           minus == 4;
  return o;
}

Outcome criterion_15(const Registry& reg) {
  const auto& pts = reg.identity("THM-D").default_points;
  bool positive = pts.size() == 5;
  for (const Params& p : pts) positive = positive && (p.at("a") + p.at("b")).real() > 0.0;
  Outcome thm = describe("THM-D", sweep(reg, "THM-D", pts, 1e-6), 1e-6);
  thm.pass = thm.pass && positive;
  const VerificationResult cor = verify(reg, "COR-D", {}, 1e-8);
  const double vs_oracle = rel(cor.rhs, kCorD);
  return combine({thm, expect(cor.pass && cor.rel_err <= 1e-8 && vs_oracle <= 1e-13,
                              "COR-D rel_err " + sci(cor.rel_err) + ", rhs vs oracle " +
                                  sci(vs_oracle))});
}

Outcome criterion_16(const Registry& reg) {
  std::vector<Params> pts;
  for (double b : {0.75, 1.2, 2.0, 3.0}) pts.push_back({{"b", b}});
  std::vector<Outcome> parts{describe("THM-E", sweep(reg, "THM-E", pts, 1e-6), 1e-6)};
  for (int b : {2, 3}) {
    const FiniteSumInstance inst = finite_sum_instance(reg, "THM-E", b);
    parts.push_back(expect(inst.nonzero_terms == b - 1 && inst.last_index == b - 1 &&
                               inst.result.pass,
                           "b=" + std::to_string(b) + " finite sum has " +
                               std::to_string(inst.nonzero_terms) + " nonzero terms, rel_err " +
                               sci(inst.result.rel_err)));
  }
  return combine(parts);
}

Outcome criterion_17(const Registry& reg) {
  std::vector<Outcome> parts;
  {
    std::mt19937_64 rng(kDefaultSeed);
    double reflection = 0.0, recurrence = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Complex z(uniform(rng, 0.01, 0.99), uniform(rng, -3.0, 3.0));
      reflection = std::max(reflection,
                            std::abs(gamma(z) * gamma(1.0 - z) * std::sin(kPi * z) / kPi - 1.0));
      const Complex w(uniform(rng, -30.0, 30.0), uniform(rng, 0.5, 30.0));
      recurrence = std::max(recurrence, std::abs(digamma(w + 1.0) - digamma(w) - 1.0 / w) /
                                            std::abs(digamma(w + 1.0)));
      const Complex v(uniform(rng, -8.0, 20.0), uniform(rng, 0.05, 4.0));
      recurrence = std::max(recurrence, std::abs(gamma(v + 1.0) - v * gamma(v)) / std::abs(v * gamma(v)));
    }
    parts.push_back(expect(reflection <= 1e-12 && recurrence <= 1e-12,
                           "specialfn reflection " + sci(reflection) + ", recurrences " +
                               sci(recurrence)));
  }
  {
    double drift = 0.0;
    for (const Weight& w : {harmonic_weight(1, 0), harmonic_weight(2, 0), harmonic_weight(3, -1),
                            harmonic_sq_plus_gen2_weight(), digamma_diff_weight(0.3, 0.2)}) {
      WeightAccumulator acc(w, 0);
      for (long n = 0; n <= 10000; ++n) {
        if (n % 101 == 0 || n == 10000) {
          drift = std::max(drift, std::abs(acc.value() - w.at(n)) / std::max(1e-300, std::abs(w.at(n))));
        }
        acc.advance();
      }
    }
    std::mt19937_64 rng(kDefaultSeed);
    double oracle = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto spec = random_spec(rng);
      const Weight w = random_weight(rng);
      const Complex x = std::polar(uniform(rng, 0.05, 0.7), uniform(rng, -3.14, 3.14));
      const Complex got = eval_weighted(spec, w, x, 1e-15).value;
      const Complex want = naive_sum(spec, w, x, 400);
      oracle = std::max(oracle, std::abs(got - want) / std::abs(want));
    }
    parts.push_back(expect(drift <= 1e-13 && oracle <= 1e-11,
                           "weight incrementality " + sci(drift) + ", naive-loop oracle " +
                               sci(oracle) + " over 50 specs"));
  }
  {
    double d1 = 0.0, d2 = 0.0;
    for (long n = 1; n <= 50; ++n) {
      const auto f = [n](Complex c) {
        const std::array<Complex, 2> num{c + 1.0, static_cast<double>(n) + 1.0};
        const std::array<Complex, 1> den{c + static_cast<double>(n) + 1.0};
        return gamma_ratio(num, den);
      };
      const double h = harmonic(n);
      d1 = std::max(d1, std::abs(finite_difference(f, 0.0, 1) + h));
      d2 = std::max(d2, std::abs(finite_difference(f, 0.0, 2) - (h * h + generalized_harmonic(n, 2))));
    }
    parts.push_back(expect(d1 <= 1e-6 && d2 <= 1e-6,
                           "derivative lemma -H_n " + sci(d1) + ", H_n^2+H_n^(2) " + sci(d2)));
  }
  {
    std::mt19937_64 rng(kDefaultSeed + 17);
    double worst = 0.0;
    for (const char* id : {"TR-2.11.2", "TR-2.11.5", "TR-2.11.7", "TR-4.5.1"}) {
      const Transformation& t = reg.transformation(id);
      Params base = t.default_points.front();
      base.erase("z");
      int tested = 0;
      while (tested < 10) {
        const Complex z = std::polar(uniform(rng, 0.0, 0.6), uniform(rng, -kPi, kPi));
        Params full = base;
        full["z"] = z;
        if (!t.legal(full)) continue;
        ++tested;
        worst = std::max(worst, check_transformation(reg, id, base, z, 1e-13));
      }
    }
    parts.push_back(expect(worst <= 1e-10, "transformation residuals " + sci(worst) +
                                               " at 4x10 random legal z"));
  }
  return combine(parts);
}

std::string without_timestamp(const std::string& text) {
  auto j = nlohmann::ordered_json::parse(text);
  j["run"].erase("timestamp");
  return j.dump();
}

Outcome criterion_18() {
  std::ostringstream out1, out2, out3, err;
  const int first = cli::run({"verify", "--all"}, out1, err);
  const int second = cli::run({"verify", "--all", "--jobs", "1"}, out2, err);
  const bool deterministic = without_timestamp(out1.str()) == without_timestamp(out2.str());

  Registry broken;
  Side rhs = broken.identity("EX-1").rhs;
  rhs.closed = rhs.closed * (1.0 + 1e-6);
  broken.replace_rhs("EX-1", rhs);
  const int corrupted = cli::run({"verify", "--all"}, out3, err, &broken);

  const auto clean = nlohmann::ordered_json::parse(out1.str())["results"];
  const auto dirty = nlohmann::ordered_json::parse(out3.str())["results"];
  std::size_t flipped = 0;
  std::string flipped_id;
  for (std::size_t i = 0; i < clean.size() && i < dirty.size(); ++i) {
    if (clean[i]["pass"] != dirty[i]["pass"]) {
      ++flipped;
      flipped_id = dirty[i]["id"];
    }
  }
  const bool ok = first == 0 && second == 0 && deterministic && corrupted == 2 && flipped == 1 &&
                  flipped_id == "EX-1" && clean.size() == dirty.size();
  return expect(ok, "verify --all exit " + std::to_string(first) + " over " +
                        std::to_string(clean.size()) + " rows, deterministic=" +
                        (deterministic ? "yes" : "no") + "; corrupted EX-1 exit " +
                        std::to_string(corrupted) + ", " + std::to_string(flipped) +
                        " row flipped (" + flipped_id + ")");
}

}  // namespace

int main() {
  const Registry reg;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"EX-1 central-binomial H_n sum", [&] { return example(reg, "EX-1", kEx1, 300); }},
      {"EX-2 (3n)!/(n!)^3 H_n sum", [&] { return example(reg, "EX-2", kEx2, kDefaultMaxTerms); }},
      {"EX-3 central-binomial H_2n sum", [&] { return example(reg, "EX-3", kEx3, kDefaultMaxTerms); }},
      {"EX-4 (3n)!/(n!)^3 H_3n sum", [&] { return example(reg, "EX-4", kEx4, kDefaultMaxTerms); }},
      {"THM-A1/THM-A2 at 20 seeded points", [&] { return criterion_5(reg); }},
      {"COR-A1 on a = 0.1..0.9",
       [&] { return describe("COR-A1", sweep(reg, "COR-A1", tenths("a"), 1e-9), 1e-9); }},
      {"COR-A2 and SUM-2.8.51", [&] { return criterion_7(reg); }},
      {"SUM-CHOI and SUM-MIX at a=b=1/4", [&] { return criterion_8(reg); }},
      {"GF-K1/GF-K2 on k = 0.1..0.9", [&] { return criterion_9(reg); }},
      {"THM-B values, ODE and boundary slope", [&] { return criterion_10(reg); }},
      {"VAL-ALG at x1 and x2", [&] { return criterion_11(reg); }},
      {"EQ-H3N on x = 0.1..0.9",
       [&] { return describe("EQ-H3N", sweep(reg, "EQ-H3N", tenths("x"), 1e-9), 1e-9); }},
      {"THM-C and SUM-GAUSSD", [&] { return criterion_13(reg); }},
      {"WATSON and WATSON-PM", [&] { return criterion_14(reg); }},
      {"THM-D and COR-D", [&] { return criterion_15(reg); }},
      {"THM-E and its finite sums", [&] { return criterion_16(reg); }},
      {"property suites", [&] { return criterion_17(reg); }},
      {"CLI verify --all and fault injection", [] { return criterion_18(); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s %2zu  %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
  return failures == 0 ? 0 : 1;
}
