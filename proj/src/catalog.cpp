#include "hyperharmonic/catalog.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "hyperharmonic/errors.hpp"

namespace hyperharmonic {

namespace {

// Series tolerances below this are not attainable in double precision.
constexpr double kSeriesToleranceFloor = 1e-15;
constexpr double kPrecisionLimit = 4.0 * std::numeric_limits<double>::epsilon();
constexpr double kOdeSeriesTolerance = 1e-13;
constexpr long kBoundaryMaxTerms = 2000000;

constexpr double kGeometricTolerance = 1e-13;

EvalContext context_for(double tol, long max_terms, bool accel, SeriesTally* tally) {
  const double series_tol = std::max(tol / 4.0, kSeriesToleranceFloor);
  const double geometric_tol =
      std::max(std::min(series_tol, kGeometricTolerance), kSeriesToleranceFloor);
  return {series_tol, geometric_tol, max_terms, accel, tally};
}

void check_point(const std::string& id, const std::vector<std::string>& names,
                 const std::string& domain_text,
                 const std::function<bool(const Params&)>& predicate, const Params& params) {
  for (const std::string& name : names) {
    if (!params.count(name)) throw DomainError(id + ": missing parameter '" + name + "'");
  }
  for (const auto& entry : params) {
    if (std::find(names.begin(), names.end(), entry.first) == names.end()) {
      throw DomainError(id + ": unknown parameter '" + entry.first + "'");
    }
  }
  if (!predicate(params)) throw DomainError(id + ": point outside domain (" + domain_text + ")");
}

SeriesResult eval_term(const SeriesTerm& term, const Params& params, const EvalContext& ctx) {
  const PochhammerRatioSeries spec = term.spec(params);
  const Weight weight = term.weight(params);
  const Complex x = term.argument.eval(params);
  const auto kind = classify(spec, weight, x).kind;
  const bool geometric = kind == ConvergenceInfo::Kind::geometric ||
                         kind == ConvergenceInfo::Kind::terminating;
  SeriesResult r = eval_weighted(spec, weight, x, geometric ? ctx.geometric_tol : ctx.tol,
                                 ctx.max_terms, ctx.accel);
  if (ctx.tally) ctx.tally->record(r);
  return r;
}

SeriesResult eval_side(const Side& side, const Params& params, const EvalContext& ctx) {
  SeriesResult total;
  total.value = side.closed.eval(params, ctx);
  total.converged = true;
  for (const SeriesTerm& term : side.series) {
    const SeriesResult r = eval_term(term, params, ctx);
    const Complex c = term.coefficient.eval(params);
    total.value += c * r.value;
    total.terms_used += r.terms_used;
    total.tail_bound += std::abs(c) * r.tail_bound;
    total.converged = total.converged && r.converged;
    if (total.method == SummationMethod::direct) total.method = r.method;
  }
  return total;
}

std::string precision_note(double tol) {
  if (tol >= kPrecisionLimit) return {};
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "tolerance %.3g is below double-precision resolution (%.3g); "
                "agreement to that level is unattainable",
                tol, kPrecisionLimit);
  return buf;
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::vector<CatalogEntry> list_identities(const Registry& registry) {
  std::vector<CatalogEntry> out;
  for (const Identity& i : registry.identities()) {
    out.push_back({i.id, "identity", i.citation, i.parameters, i.default_points.size()});
  }
  for (const Transformation& t : registry.transformations()) {
    out.push_back({t.id, "transformation", t.citation, t.parameters, t.default_points.size()});
  }
  return out;
}

SeriesResult eval_lhs(const Registry& registry, std::string_view id, const Params& params,
                      double tol, long max_terms, bool accel) {
  const Identity& identity = registry.identity(id);
  check_point(identity.id, identity.parameters, identity.domain_text, identity.domain, params);
  return eval_side(identity.lhs, params, {tol, tol, max_terms, accel, nullptr});
}

Complex eval_rhs(const Registry& registry, std::string_view id, const Params& params,
                 double tol, long max_terms, bool accel) {
  const Identity& identity = registry.identity(id);
  check_point(identity.id, identity.parameters, identity.domain_text, identity.domain, params);
  return eval_side(identity.rhs, params, {tol, tol, max_terms, accel, nullptr}).value;
}

VerificationResult verify(const Registry& registry, std::string_view id, const Params& params,
                          double tol, bool accel, long max_terms) {
  const auto start = std::chrono::steady_clock::now();
  const Identity& identity = registry.identity(id);
  check_point(identity.id, identity.parameters, identity.domain_text, identity.domain, params);
  if (tol <= 0.0) tol = identity.tol;
  SeriesTally tally;
  const EvalContext ctx = context_for(tol, max_terms, accel, &tally);
  VerificationResult r;
  r.id = identity.id;
  r.parameter_order = identity.parameters;
  r.point = params;
  r.tol = tol;
  r.lhs = eval_side(identity.lhs, params, ctx).value;
  r.rhs = eval_side(identity.rhs, params, ctx).value;
  r.abs_err = std::abs(r.lhs - r.rhs);
  const double scale = std::abs(r.rhs);
  r.rel_err = scale > 0.0 ? r.abs_err / scale : r.abs_err;
  r.pass = scale < 1.0 ? r.abs_err <= tol : r.rel_err <= tol;
  r.terms_used = tally.terms;
  r.method = tally.method_label();
  r.note = precision_note(tol);
  r.elapsed_seconds = elapsed_since(start);
  return r;
}

VerificationResult verify_transformation(const Registry& registry, std::string_view id,
                                         const Params& params, double tol, long max_terms) {
  const auto start = std::chrono::steady_clock::now();
  const Transformation& t = registry.transformation(id);
  check_point(t.id, t.parameters, t.domain_text, t.legal, params);
  if (tol <= 0.0) tol = t.tol;
  SeriesTally tally;
  const EvalContext ctx = context_for(tol, max_terms, true, &tally);
  VerificationResult r;
  r.id = t.id;
  r.parameter_order = t.parameters;
  r.point = params;
  r.tol = tol;
  r.lhs = t.lhs(params, ctx);
  r.rhs = t.rhs(params, ctx);
  r.abs_err = std::abs(r.lhs - r.rhs);
  r.rel_err = r.abs_err / std::max(1.0, std::abs(r.lhs));
  r.pass = r.rel_err <= tol;
  r.terms_used = tally.terms;
  r.method = tally.method_label();
  r.note = precision_note(tol);
  r.elapsed_seconds = elapsed_since(start);
  return r;
}

double check_transformation(const Registry& registry, std::string_view id, Params params,
                            std::optional<Complex> z, double tol) {
  if (z) params["z"] = *z;
  return verify_transformation(registry, id, params, tol).rel_err;
}

double ode_residual(Complex a, const std::vector<double>& x_grid, double h,
                    OdeSolution solution) {
  if (!(h > 0.0)) throw DomainError("ode_residual: step must be positive");
  if (std::abs(a - Complex(std::round(a.real()), 0.0)) < kPoleTolerance) {
    throw DomainError("ode_residual: a must not be an integer");
  }
  const PochhammerRatioSeries family{{a, 1.0 - a}, {}, 2, 1.0, 1};
  const auto v = [&](double x) -> Complex {
    if (solution == OdeSolution::homogeneous) {
      return hyp2f1(a, 1.0 - a, 1.0, x, kOdeSeriesTolerance);
    }
    return eval_weighted(family, harmonic_weight(), x, kOdeSeriesTolerance).value;
  };
  const Complex k = a * (1.0 - a);
  double worst = 0.0;
  for (double x : x_grid) {
    if (!(x > 2.0 * h && x < 1.0 - 2.0 * h)) {
      throw DomainError("ode_residual: grid point outside (2h, 1-2h)");
    }
    const Complex v0 = v(x), vp = v(x + h), vm = v(x - h);
    const Complex d1 = (vp - vm) / (2.0 * h);
    const Complex d2 = (vp - 2.0 * v0 + vm) / (h * h);
    const Complex f = solution == OdeSolution::homogeneous
                          ? Complex(0.0)
                          : k * hyp2f1(a + 1.0, 2.0 - a, 2.0, x, kOdeSeriesTolerance);
    const Complex lhs = x * (1.0 - x) * d2 + (1.0 - 2.0 * x) * d1 - k * v0;
    worst = std::max(worst, std::abs(lhs - f) / std::max(1.0, std::abs(f)));
  }
  return worst;
}

double boundary_asymptotic_check(Complex a, double x_small) {
  if (!(x_small > 0.0 && x_small <= 1e-3)) {
    throw DomainError("boundary_asymptotic_check: need 0 < x <= 1e-3");
  }
  const Complex f = hyp2f1(a, 1.0 - a, 1.0, 1.0 - x_small, kDefaultTolerance, kBoundaryMaxTerms);
  return std::abs(f - std::sin(std::numbers::pi * a) / std::numbers::pi * std::log(1.0 / x_small));
}

Complex boundary_log_slope(Complex a, double x1, double x2) {
  if (!(x1 > 0.0 && x1 <= 1e-3 && x2 > 0.0 && x2 <= 1e-3 && x1 != x2)) {
    throw DomainError("boundary_log_slope: need distinct 0 < x <= 1e-3");
  }
  const Complex f1 = hyp2f1(a, 1.0 - a, 1.0, 1.0 - x1, kDefaultTolerance, kBoundaryMaxTerms);
  const Complex f2 = hyp2f1(a, 1.0 - a, 1.0, 1.0 - x2, kDefaultTolerance, kBoundaryMaxTerms);
  return (f1 - f2) / (std::log(1.0 / x1) - std::log(1.0 / x2));
}

FiniteSumInstance finite_sum_instance(const Registry& registry, std::string_view id, int b) {
  if (id != "THM-E") throw DomainError("finite_sum_instance: only THM-E has finite instances");
  if (b < 2 || b > 4) throw DomainError("finite_sum_instance: b must be 2, 3 or 4");
  const Identity& identity = registry.identity(id);
  const Params point{{"b", static_cast<double>(b)}};
  FiniteSumInstance out;
  out.result = verify(registry, id, point, identity.tol, true);

  const SeriesTerm& term = identity.rhs.series.front();
  const PochhammerRatioSeries spec = term.spec(point);
  const ConvergenceInfo info = classify(spec, term.weight(point), 1.0);
  if (info.kind != ConvergenceInfo::Kind::terminating) {
    throw DomainError("finite_sum_instance: right-hand series does not terminate");
  }
  out.last_index = info.last_index;
  TermSequence terms(spec, 1.0);
  for (long n = spec.start_index; n <= info.last_index + 2; ++n, terms.advance()) {
    if (terms.value() != 0.0) ++out.nonzero_terms;
  }
  return out;
}

}  // namespace hyperharmonic
