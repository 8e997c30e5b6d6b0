#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "hyperharmonic/catalog.hpp"
#include "hyperharmonic/errors.hpp"
#include "hyperharmonic/specialfn.hpp"
#include "hyperharmonic/weights.hpp"

using namespace hyperharmonic;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

// tests/oracles/frozen_constants.py
constexpr double kEx1 = 0.21777516068448380718233503703;
constexpr double kEx2 = 0.192354742736257904750535052361;
constexpr double kEx3 = 0.313425019919352917497606932286;
constexpr double kEx4 = 0.332041644207653981254962775141;
constexpr double kSumMix = 0.600374597623960248443422618053;
constexpr double kCorD = 0.595689458198317832261971270395;
constexpr double kValAlg = 1.75145790952349681069234484267;
constexpr double kKummerQuarter = 1.18034059901609622604533794056;
constexpr double kTwoLnTwo = 1.38629436111989061883446424292;

const Registry& registry() {
  static const Registry reg;
  return reg;
}

}  // namespace

TEST_CASE("registry holds exactly the documented ids") {
  const std::set<std::string> identities{
      "THM-A1", "THM-A2", "COR-A1", "COR-A2", "EX-1",   "EX-2",       "EX-3",
      "EX-4",   "SUM-CHOI", "SUM-MIX", "GF-K1", "GF-K2", "THM-B",     "EQ-H3N",
      "VAL-ALG", "THM-C",  "SUM-GAUSSD", "THM-D", "COR-D", "THM-E"};
  const std::set<std::string> transformations{"TR-2.11.2",  "TR-2.11.7",  "TR-2.11.5",
                                              "TR-4.5.1",   "SUM-2.8.46", "SUM-2.8.50",
                                              "SUM-2.8.51", "WATSON",     "WATSON-PM"};
  std::set<std::string> got_identities, got_transformations;
  for (const Identity& id : registry().identities()) got_identities.insert(id.id);
  for (const Transformation& t : registry().transformations()) got_transformations.insert(t.id);
  CHECK(got_identities == identities);
  CHECK(got_transformations == transformations);
  CHECK(registry().identities().size() == 20);
  CHECK(registry().transformations().size() == 9);

  const auto entries = list_identities(registry());
  REQUIRE(entries.size() == 29);
  CHECK(entries.front().id == "THM-A1");
  CHECK(entries[19].kind == "identity");
  CHECK(entries[20].kind == "transformation");
  for (const CatalogEntry& e : entries) {
    CHECK(!e.citation.empty());
    CHECK(e.default_points > 0);
  }
}

TEST_CASE("lookups") {
  CHECK(registry().identity("EX-1").citation.find("32^n") != std::string::npos);
  CHECK_THROWS_AS(registry().identity("NOPE"), NotFound);
  CHECK_THROWS_AS(registry().transformation("EX-1"), NotFound);
  CHECK_THROWS_AS(verify(registry(), "NOPE", {}), NotFound);
  CHECK(registry().contains("WATSON-PM"));
  CHECK(!registry().contains("nope"));
}

TEST_CASE("default points satisfy their domains") {
  for (const Identity& id : registry().identities()) {
    for (const Params& p : id.default_points) {
      CAPTURE(id.id);
      CHECK(id.domain(p));
    }
  }
  for (const Transformation& t : registry().transformations()) {
    for (const Params& p : t.default_points) {
      CAPTURE(t.id);
      CHECK(t.legal(p));
    }
  }
}

TEST_CASE("seeded points are deterministic and mix real and complex values") {
  const Registry again(kDefaultSeed);
  const Registry other(kDefaultSeed + 1);
  const auto& pts = registry().identity("THM-A1").default_points;
  REQUIRE(pts.size() == 20);
  CHECK(pts == again.identity("THM-A1").default_points);
  CHECK(pts != other.identity("THM-A1").default_points);
  bool real = false, complex = false;
  for (const Params& p : pts) {
    const bool is_complex = p.at("a").imag() != 0.0 || p.at("b").imag() != 0.0;
    (is_complex ? complex : real) = true;
  }
  CHECK(real);
  CHECK(complex);
}

TEST_CASE("closed forms against oracles") {
  CHECK(rel(eval_rhs(registry(), "EX-1", {}), kEx1) < 1e-13);
  CHECK(rel(eval_rhs(registry(), "EX-2", {}), kEx2) < 1e-13);
  CHECK(rel(eval_rhs(registry(), "EX-3", {}), kEx3) < 1e-13);
  CHECK(rel(eval_rhs(registry(), "EX-4", {}), kEx4) < 1e-13);
  CHECK(rel(eval_rhs(registry(), "SUM-MIX", {}), kSumMix) < 1e-13);
  CHECK(rel(eval_rhs(registry(), "COR-D", {}), kCorD) < 1e-13);
  CHECK(rel(eval_rhs(registry(), "VAL-ALG", {{"j", 1.0}}), kValAlg) < 1e-13);
  CHECK(rel(eval_rhs(registry(), "COR-A1", {{"a", 0.5}}), kTwoLnTwo) < 1e-13);
}

TEST_CASE("left sides against oracles") {
  const auto ex1 = eval_lhs(registry(), "EX-1", {}, 1e-12);
  CHECK(rel(ex1.value, kEx1) < 1e-10);
  CHECK(ex1.terms_used <= 300);
  CHECK(rel(eval_lhs(registry(), "VAL-ALG", {{"j", 2.0}}, 1e-12).value, kValAlg) < 1e-9);
  CHECK(std::abs(eval_lhs(registry(), "THM-A1", {{"a", 0.0}, {"b", 0.3}}, 1e-10).value) == 0.0);
}

TEST_CASE("verify examples") {
  const auto ex2 = verify(registry(), "EX-2", {});
  CHECK(ex2.pass);
  CHECK(ex2.rel_err <= 1e-10);
  const auto cor_d = verify(registry(), "COR-D", {});
  CHECK(cor_d.pass);
  CHECK(cor_d.rel_err <= 1e-8);
  const auto thm_a = verify(registry(), "THM-A1", {{"a", 0.25}, {"b", 0.25}});
  CHECK(thm_a.pass);
  CHECK(thm_a.rel_err <= 1e-9);
  CHECK(thm_a.id == "THM-A1");
  CHECK(thm_a.parameter_order == std::vector<std::string>{"a", "b"});
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(verify(registry(), "COR-A1", {}), DomainError);
  CHECK_THROWS_AS(verify(registry(), "COR-A1", {{"a", 0.5}, {"q", 1.0}}), DomainError);
  CHECK_THROWS_AS(verify(registry(), "THM-B", {{"a", 0.5}, {"x", 0.99}}), DomainError);
  CHECK_THROWS_AS(verify(registry(), "THM-C", {{"a", 0.4}, {"b", 0.4}}), DomainError);
  CHECK_THROWS_AS(check_transformation(registry(), "TR-2.11.2", {{"a", 0.3}, {"b", 0.45}}, 0.9, 1e-10),
                  DomainError);
}

TEST_CASE("a tolerance below double precision fails honestly") {
  const auto r = verify(registry(), "EX-1", {}, 1e-30);
  CHECK(!r.pass);
  CHECK(!r.note.empty());
}

TEST_CASE("fault injection flips a row") {
  Registry broken;
  Side rhs = broken.identity("EX-1").rhs;
  rhs.closed = rhs.closed * (1.0 + 1e-6);
  broken.replace_rhs("EX-1", rhs);
  CHECK(!verify(broken, "EX-1", {}).pass);
  CHECK(verify(broken, "EX-2", {}).pass);
}

TEST_CASE("property: THM-A sides are symmetric in a and b") {
  for (const std::string id : {"THM-A1", "THM-A2"}) {
    for (const Params& p : registry().identity(id).default_points) {
      const Params swapped{{"a", p.at("b")}, {"b", p.at("a")}};
      CAPTURE(id);
      const Complex l1 = eval_lhs(registry(), id, p, 1e-14).value;
      const Complex l2 = eval_lhs(registry(), id, swapped, 1e-14).value;
      CHECK(std::abs(l1 - l2) <= 1e-12 * std::max(1.0, std::abs(l1)));
      const Complex r1 = eval_rhs(registry(), id, p);
      const Complex r2 = eval_rhs(registry(), id, swapped);
      CHECK(std::abs(r1 - r2) <= 1e-12 * std::max(1.0, std::abs(r1)));
    }
  }
}

TEST_CASE("property: THM-B at x = 1/2 reproduces COR-A2") {
  for (double a : {1.0 / 6.0, 0.25, 1.0 / 3.0, 0.5, 0.7}) {
    const Params gf{{"a", a}, {"x", 0.5}};
    const Params cor{{"a", a}};
    CAPTURE(a);
    CHECK(rel(eval_lhs(registry(), "THM-B", gf, 1e-13).value,
              eval_lhs(registry(), "COR-A2", cor, 1e-13).value) <= 1e-10);
    CHECK(rel(eval_rhs(registry(), "THM-B", gf, 1e-13), eval_rhs(registry(), "COR-A2", cor, 1e-13)) <=
          1e-10);
  }
}

TEST_CASE("property: GF-K2 minus GF-K1 is the H_2n - H_n series") {
  const double k = 0.5;
  const Params p{{"k", k}};
  const Complex diff = eval_lhs(registry(), "GF-K2", p, 1e-13).value -
                       eval_lhs(registry(), "GF-K1", p, 1e-13).value;
  const PochhammerRatioSeries central{{0.5, 0.5}, {}, 2, 1.0, 1};
  const Weight w = linear_combo({{1.0, harmonic_weight(2, 0)}, {-1.0, harmonic_weight(1, 0)}});
  const Complex direct = eval_weighted(central, w, k * k, 1e-13).value;
  CHECK(std::abs(diff - direct) <= 1e-9 * std::abs(direct));
}

TEST_CASE("property: every default pass survives tol/10 and 4x max_terms") {
  for (const Identity& id : registry().identities()) {
    for (const Params& p : id.default_points) {
      CAPTURE(id.id);
      const auto loose = verify(registry(), id.id, p);
      const auto tight = verify(registry(), id.id, p, id.tol / 10.0, true, 4 * kDefaultMaxTerms);
      CHECK(loose.pass);
      CHECK(tight.pass);
    }
  }
  for (const Transformation& t : registry().transformations()) {
    for (const Params& p : t.default_points) {
      CAPTURE(t.id);
      CHECK(verify_transformation(registry(), t.id, p).pass);
      CHECK(verify_transformation(registry(), t.id, p, t.tol / 10.0, 4 * kDefaultMaxTerms).pass);
    }
  }
}

TEST_CASE("transformation examples") {
  const Params ab{{"a", 0.3}, {"b", 0.45}};
  CHECK(check_transformation(registry(), "TR-2.11.2", ab, 0.0, 1e-12) == 0.0);
  CHECK(check_transformation(registry(), "TR-2.11.2", ab, 0.2, 1e-13) <= 1e-11);
  const auto kummer = verify_transformation(registry(), "SUM-2.8.50", {{"a", 0.25}, {"b", 0.25}}, 1e-12);
  CHECK(kummer.pass);
  CHECK(rel(kummer.lhs, kKummerQuarter) <= 1e-12);
  CHECK(rel(kummer.rhs, kKummerQuarter) <= 1e-13);
}

TEST_CASE("property: the WATSON-PM pair averages to a Gauss sum") {
  const Transformation& pm = registry().transformation("WATSON-PM");
  const Transformation& gauss = registry().transformation("SUM-2.8.46");
  EvalContext ctx;
  ctx.tol = 1e-12;
  ctx.geometric_tol = 1e-15;
  for (std::size_t i = 0; i < 3; ++i) {
    Params p = pm.default_points[i];
    CAPTURE(i);
    REQUIRE(p.at("eps") == 1.0);
    const Complex a = p.at("a"), b = p.at("b");
    const Complex plus = pm.lhs(p, ctx);
    p["eps"] = -1.0;
    const Complex minus = pm.lhs(p, ctx);
    p.erase("eps");
    const std::array<Complex, 2> num{0.5, a + b + 0.5};
    const std::array<Complex, 2> den{a + 0.5, b + 0.5};
    const Complex expected = gamma_ratio(num, den) * gauss.lhs(p, ctx);
    CHECK(rel(0.5 * (plus + minus), expected) <= 1e-8);
    CHECK(rel(gauss.lhs(p, ctx), gauss.rhs(p, ctx)) <= 1e-8);
  }
}

TEST_CASE("property: transformation residuals at random legal z") {
  std::mt19937_64 rng(2024);
  const auto u = [&rng](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  for (const char* id : {"TR-2.11.2", "TR-2.11.7", "TR-2.11.5", "TR-4.5.1"}) {
    const Transformation& t = registry().transformation(id);
    Params base = t.default_points.front();
    base.erase("z");
    int tested = 0;
    double worst = 0.0;
    while (tested < 10) {
      const Complex z = std::polar(u(0.0, 0.6), u(-kPi, kPi));
      Params full = base;
      full["z"] = z;
      if (!t.legal(full)) continue;
      ++tested;
      worst = std::max(worst, check_transformation(registry(), id, base, z, 1e-13));
    }
    CAPTURE(id);
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("ODE for the THM-B generating function") {
  const std::vector<double> grid{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  CHECK(ode_residual(0.5, grid, 1e-3) <= 1e-4);
  CHECK(ode_residual(1.0 / 3.0, {0.5}, 1e-3) <= 1e-4);
  CHECK(ode_residual(0.5, grid, 1e-3, OdeSolution::homogeneous) <= 1e-4);
  CHECK_THROWS_AS(ode_residual(1.0, grid, 1e-3), DomainError);
}

TEST_CASE("boundary asymptotics near argument one") {
  const double r3 = boundary_asymptotic_check(0.5, 1e-3);
  const double r4 = boundary_asymptotic_check(0.5, 1e-4);
  CHECK(std::abs(r3 - r4) <= 1.0);
  CHECK(std::isfinite(boundary_asymptotic_check(1.0 / 3.0, 1e-3)));
  for (double a : {0.5, 1.0 / 3.0, 0.25, 1.0 / 6.0}) {
    const Complex slope = boundary_log_slope(a, 1e-3, 1e-4);
    CAPTURE(a);
    CHECK(std::abs(slope - std::sin(kPi * a) / kPi) <= 0.05 * std::sin(kPi * a) / kPi);
  }
}

TEST_CASE("THM-E finite sums at integer b") {
  for (int b : {2, 3, 4}) {
    const auto inst = finite_sum_instance(registry(), "THM-E", b);
    CAPTURE(b);
    CHECK(inst.nonzero_terms == b - 1);
    CHECK(inst.last_index == b - 1);
    CHECK(inst.result.pass);
  }
  CHECK_THROWS_AS(finite_sum_instance(registry(), "THM-E", 5), DomainError);
  CHECK_THROWS_AS(finite_sum_instance(registry(), "THM-D", 2), DomainError);
}
