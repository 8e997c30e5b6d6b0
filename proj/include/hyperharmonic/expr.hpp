#ifndef HYPERHARMONIC_EXPR_HPP_
#define HYPERHARMONIC_EXPR_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hyperharmonic/series.hpp"
#include "hyperharmonic/specialfn.hpp"

namespace hyperharmonic {

/// Named parameter assignment, e.g. {"a": 0.25, "b": 0.3+0.1i}.
using Params = std::map<std::string, Complex>;

/// Terms and methods used by every series summed during one evaluation.
struct SeriesTally {
  long terms = 0;
  std::vector<SummationMethod> methods;  // distinct, in order of first use

  void record(const SeriesResult& result);
  /// Methods joined by '+', e.g. "direct+richardson".
  std::string method_label() const;
};

/// Settings for the series that an expression evaluates internally.
/// Geometrically convergent series are cheap to sum tightly, so they get
/// their own tolerance; series needing acceleration use `tol`.
struct EvalContext {
  double tol = kDefaultTolerance;
  double geometric_tol = kDefaultTolerance;
  long max_terms = kDefaultMaxTerms;
  bool accel = true;
  SeriesTally* tally = nullptr;
};

/// Immutable closed-form expression tree over parameters.
class Expr {
 public:
  enum class Op {
    constant, parameter, add, subtract, multiply, divide, negate, power, sqrt, log, sin, cos,
    gamma, ln_gamma, digamma, elliptic_k, hyp2f1
  };

  Expr(double value);   // NOLINT(google-explicit-constructor)
  Expr(Complex value);  // NOLINT(google-explicit-constructor)

  static Expr param(std::string name);
  static Expr apply(Op op, std::vector<Expr> args);

  Op op() const;

  /// Throws DomainError for an unbound parameter or a non-finite result,
  /// PoleError from the gamma-family kernels, NonConvergent from hyp2f1.
  Complex eval(const Params& params, const EvalContext& ctx = {}) const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  Complex eval_node(const Params& params, const EvalContext& ctx) const;

  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& lhs, const Expr& rhs);
Expr operator-(const Expr& lhs, const Expr& rhs);
Expr operator*(const Expr& lhs, const Expr& rhs);
Expr operator/(const Expr& lhs, const Expr& rhs);
Expr operator-(const Expr& arg);

namespace ex {

Expr pow(const Expr& base, const Expr& exponent);
Expr sqrt(const Expr& arg);
Expr log(const Expr& arg);
Expr sin(const Expr& arg);
Expr cos(const Expr& arg);
Expr gamma(const Expr& arg);
Expr ln_gamma(const Expr& arg);
Expr digamma(const Expr& arg);
/// Complete elliptic integral of the first kind in the modulus convention;
/// the argument must evaluate to a real number in [0, 1).
Expr elliptic_K(const Expr& k);
Expr hyp2f1(const Expr& a, const Expr& b, const Expr& c, const Expr& z);

}  // namespace ex

}  // namespace hyperharmonic

#endif  // HYPERHARMONIC_EXPR_HPP_
