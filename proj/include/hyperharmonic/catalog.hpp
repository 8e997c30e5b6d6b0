#ifndef HYPERHARMONIC_CATALOG_HPP_
#define HYPERHARMONIC_CATALOG_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperharmonic/expr.hpp"
#include "hyperharmonic/series.hpp"
#include "hyperharmonic/weights.hpp"

namespace hyperharmonic {

inline constexpr double kIdentityTolerance = 1e-9;
inline constexpr double kUnitIdentityTolerance = 1e-6;
inline constexpr std::uint64_t kDefaultSeed = 1729;

/// coefficient * sum_{n >= n0} t_n w_n z^n, every piece given in terms of
/// the identity's parameters.
struct SeriesTerm {
  Expr coefficient = 1.0;
  std::vector<Expr> numerators;
  std::vector<Expr> denominators;
  int factorial_power = 1;
  Expr ratio = 1.0;
  int start_index = 1;
  std::function<Weight(const Params&)> weight = [](const Params&) { return unit_weight(); };
  Expr argument = 1.0;

  PochhammerRatioSeries spec(const Params& params) const;
};

/// One side of an identity: a sum of weighted series plus a closed form.
struct Side {
  std::vector<SeriesTerm> series;
  Expr closed = 0.0;
};

struct Identity {
  std::string id;
  std::string citation;
  std::vector<std::string> parameters;
  std::string domain_text;
  std::function<bool(const Params&)> domain = [](const Params&) { return true; };
  Side lhs;
  Side rhs;
  std::vector<Params> default_points;
  bool accel_required = false;
  double tol = kIdentityTolerance;
};

/// A quadratic transformation or summation theorem for ordinary
/// hypergeometric functions, checked as a residual.
struct Transformation {
  std::string id;
  std::string citation;
  std::vector<std::string> parameters;  // z, when used, is listed last
  std::string domain_text;
  std::function<bool(const Params&)> legal = [](const Params&) { return true; };
  std::function<Complex(const Params&, const EvalContext&)> lhs;
  std::function<Complex(const Params&, const EvalContext&)> rhs;
  std::vector<Params> default_points;
  double tol = 1e-10;
};

/// The immutable set of identities and transformations. The seed fixes the
/// randomly drawn default points.
class Registry {
 public:
  explicit Registry(std::uint64_t seed = kDefaultSeed);

  std::uint64_t seed() const { return seed_; }
  const std::vector<Identity>& identities() const { return identities_; }
  const std::vector<Transformation>& transformations() const { return transformations_; }

  /// Throws NotFound.
  const Identity& identity(std::string_view id) const;
  const Transformation& transformation(std::string_view id) const;
  bool contains(std::string_view id) const;

  /// Replaces the right-hand closed form of one identity (fault injection).
  void replace_rhs(std::string_view id, Side rhs);

 private:
  std::uint64_t seed_;
  std::vector<Identity> identities_;
  std::vector<Transformation> transformations_;
};

struct CatalogEntry {
  std::string id;
  std::string kind;  // "identity" or "transformation"
  std::string citation;
  std::vector<std::string> parameters;
  std::size_t default_points = 0;
};

struct VerificationResult {
  std::string id;
  std::vector<std::string> parameter_order;
  Params point;
  Complex lhs;
  Complex rhs;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  long terms_used = 0;
  std::string method;
  double elapsed_seconds = 0.0;
  std::string note;
};

/// Registry order: identities first, then transformations.
std::vector<CatalogEntry> list_identities(const Registry& registry);

/// Throws DomainError when params miss a parameter, name an unknown one,
/// or fail the identity's domain predicate.
SeriesResult eval_lhs(const Registry& registry, std::string_view id, const Params& params,
                      double tol, long max_terms = kDefaultMaxTerms, bool accel = true);
Complex eval_rhs(const Registry& registry, std::string_view id, const Params& params,
                 double tol = kDefaultTolerance, long max_terms = kDefaultMaxTerms,
                 bool accel = true);

/// Both sides at series tolerance tol/4; pass iff rel_err <= tol (abs_err
/// when |rhs| < 1). A non-positive tol selects the identity's own. Mismatch
/// is reported through pass; numeric failures throw.
VerificationResult verify(const Registry& registry, std::string_view id, const Params& params,
                          double tol = 0.0, bool accel = true,
                          long max_terms = kDefaultMaxTerms);

/// Both sides of a transformation at one point (z given in params when the
/// transformation uses it). pass iff the residual |lhs-rhs|/max(1,|lhs|) <= tol.
VerificationResult verify_transformation(const Registry& registry, std::string_view id,
                                         const Params& params, double tol = 0.0,
                                         long max_terms = kDefaultMaxTerms);

/// Residual |lhs-rhs|/max(1,|lhs|) of a transformation at (params, z).
double check_transformation(const Registry& registry, std::string_view id, Params params,
                            std::optional<Complex> z, double tol);

enum class OdeSolution { generating_function, homogeneous };

/// Max over the grid of |x(1-x)v'' + (1-2x)v' - a(1-a)v - f| / max(1, |f|),
/// derivatives by central differences with step h. v is the H_n-weighted
/// generating function and f = d/dx 2F1(a,1-a;1;x), or v = 2F1(a,1-a;1;x)
/// and f = 0 for the homogeneous check.
double ode_residual(Complex a, const std::vector<double>& x_grid, double h,
                    OdeSolution solution = OdeSolution::generating_function);

/// |2F1(a,1-a;1;1-x) - (sin(pi a)/pi) log(1/x)| at x = x_small.
double boundary_asymptotic_check(Complex a, double x_small);

/// Two-point estimate of the log(1/x) coefficient of 2F1(a,1-a;1;1-x).
Complex boundary_log_slope(Complex a, double x1, double x2);

struct FiniteSumInstance {
  VerificationResult result;
  long nonzero_terms = 0;  // of the terminating right-hand series
  long last_index = 0;
};

/// THM-E at positive integer b in {2, 3, 4}: the right-hand series stops at
/// n = b - 1 and is summed exactly.
FiniteSumInstance finite_sum_instance(const Registry& registry, std::string_view id, int b);

}  // namespace hyperharmonic

#endif  // HYPERHARMONIC_CATALOG_HPP_
