#include "hyperharmonic/expr.hpp"

#include <algorithm>
#include <cmath>

#include "hyperharmonic/errors.hpp"

namespace hyperharmonic {

namespace {

constexpr double kRealTolerance = 1e-12;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double real_argument(Complex z, const char* what) {
  if (std::abs(z.imag()) > kRealTolerance * std::max(1.0, std::abs(z.real()))) {
    throw DomainError(std::string(what) + ": argument must be real");
  }
  return z.real();
}

}  // namespace

void SeriesTally::record(const SeriesResult& result) {
  terms += result.terms_used;
  if (std::find(methods.begin(), methods.end(), result.method) == methods.end()) {
    methods.push_back(result.method);
  }
}

std::string SeriesTally::method_label() const {
  std::string label;
  for (SummationMethod m : methods) {
    if (!label.empty()) label += '+';
    label += to_string(m);
  }
  return label.empty() ? "closed_form" : label;
}

struct Expr::Node {
  Op op = Op::constant;
  Complex value = 0.0;
  std::string name;
  std::vector<Expr> args;
};

Expr::Expr(double value) : Expr(Complex(value)) {}

Expr::Expr(Complex value) {
  auto node = std::make_shared<Node>();
  node->value = value;
  node_ = std::move(node);
}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::param(std::string name) {
  auto node = std::make_shared<Node>();
  node->op = Op::parameter;
  node->name = std::move(name);
  return Expr(std::move(node));
}

Expr Expr::apply(Op op, std::vector<Expr> args) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->args = std::move(args);
  return Expr(std::move(node));
}

Expr::Op Expr::op() const { return node_->op; }

Complex Expr::eval(const Params& params, const EvalContext& ctx) const {
  const Complex v = eval_node(params, ctx);
  if (!finite(v)) throw DomainError("expression evaluated to a non-finite value");
  return v;
}

Complex Expr::eval_node(const Params& params, const EvalContext& ctx) const {
  const Node& n = *node_;
  auto arg = [&](std::size_t i) { return n.args[i].eval_node(params, ctx); };
  switch (n.op) {
    case Op::constant:
      return n.value;
    case Op::parameter: {
      const auto it = params.find(n.name);
      if (it == params.end()) throw DomainError("unbound parameter '" + n.name + "'");
      return it->second;
    }
    case Op::add:
      return arg(0) + arg(1);
    case Op::subtract:
      return arg(0) - arg(1);
    case Op::multiply:
      return arg(0) * arg(1);
    case Op::divide: {
      const Complex d = arg(1);
      if (d == 0.0) throw DomainError("division by zero in expression");
      return arg(0) / d;
    }
    case Op::negate:
      return -arg(0);
    case Op::power: {
      const Complex base = arg(0);
      const Complex exponent = arg(1);
      if (base.imag() == 0.0 && base.real() >= 0.0 && exponent.imag() == 0.0) {
        return std::pow(base.real(), exponent.real());
      }
      return std::pow(base, exponent);
    }
    case Op::sqrt:
      return std::sqrt(arg(0));
    case Op::log: {
      const Complex x = arg(0);
      if (x == 0.0) throw DomainError("logarithm of zero");
      return std::log(x);
    }
    case Op::sin:
      return std::sin(arg(0));
    case Op::cos:
      return std::cos(arg(0));
    case Op::gamma:
      return gamma(arg(0));
    case Op::ln_gamma:
      return ln_gamma(arg(0));
    case Op::digamma:
      return digamma(arg(0));
    case Op::elliptic_k:
      return elliptic_K(real_argument(arg(0), "elliptic_K"));
    case Op::hyp2f1: {
      const auto result = eval_hyper(hypergeometric({arg(0), arg(1)}, {arg(2)}), arg(3),
                                     ctx.geometric_tol,
                                     ctx.max_terms);
      if (ctx.tally) ctx.tally->record(result);
      return result.value;
    }
  }
  throw DomainError("unknown expression node");
}

Expr operator+(const Expr& lhs, const Expr& rhs) { return Expr::apply(Expr::Op::add, {lhs, rhs}); }
Expr operator-(const Expr& lhs, const Expr& rhs) {
  return Expr::apply(Expr::Op::subtract, {lhs, rhs});
}
Expr operator*(const Expr& lhs, const Expr& rhs) {
  return Expr::apply(Expr::Op::multiply, {lhs, rhs});
}
Expr operator/(const Expr& lhs, const Expr& rhs) {
  return Expr::apply(Expr::Op::divide, {lhs, rhs});
}
Expr operator-(const Expr& arg) { return Expr::apply(Expr::Op::negate, {arg}); }

namespace ex {

Expr pow(const Expr& base, const Expr& exponent) {
  return Expr::apply(Expr::Op::power, {base, exponent});
}
Expr sqrt(const Expr& arg) { return Expr::apply(Expr::Op::sqrt, {arg}); }
Expr log(const Expr& arg) { return Expr::apply(Expr::Op::log, {arg}); }
Expr sin(const Expr& arg) { return Expr::apply(Expr::Op::sin, {arg}); }
Expr cos(const Expr& arg) { return Expr::apply(Expr::Op::cos, {arg}); }
Expr gamma(const Expr& arg) { return Expr::apply(Expr::Op::gamma, {arg}); }
Expr ln_gamma(const Expr& arg) { return Expr::apply(Expr::Op::ln_gamma, {arg}); }
Expr digamma(const Expr& arg) { return Expr::apply(Expr::Op::digamma, {arg}); }
Expr elliptic_K(const Expr& k) { return Expr::apply(Expr::Op::elliptic_k, {k}); }
Expr hyp2f1(const Expr& a, const Expr& b, const Expr& c, const Expr& z) {
  return Expr::apply(Expr::Op::hyp2f1, {a, b, c, z});
}

}  // namespace ex

}  // namespace hyperharmonic
