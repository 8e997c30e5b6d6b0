#include "hyperharmonic/acceleration.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hyperharmonic/errors.hpp"

namespace hyperharmonic {

namespace {

constexpr double kTinyDifference = 1e-300;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Complex wynn_epsilon(std::span<const Complex> partial_sums) {
  if (partial_sums.size() < 5) {
    throw DomainError("wynn_epsilon: needs at least 5 partial sums, got " +
                      std::to_string(partial_sums.size()));
  }
  std::size_t use = std::min<std::size_t>(partial_sums.size(), kWynnMaxDepth + 1);
  if (use % 2 == 0) --use;
  const auto tail = partial_sums.subspan(partial_sums.size() - use);

  std::vector<Complex> previous(use, Complex(0.0));  // column -1
  std::vector<Complex> current(tail.begin(), tail.end());
  Complex best = current.back();
  for (int column = 0; current.size() > 1; ++column) {
    std::vector<Complex> next(current.size() - 1);
    for (std::size_t i = 0; i + 1 < current.size(); ++i) {
      const Complex diff = current[i + 1] - current[i];
      if (std::abs(diff) < kTinyDifference) {
        if (column % 2 == 0) return current.back();
        throw AccelerationBreakdown("wynn_epsilon: singular odd column " +
                                    std::to_string(column));
      }
      next[i] = previous[i + 1] + 1.0 / diff;
      if (!finite(next[i])) {
        throw AccelerationBreakdown("wynn_epsilon: non-finite entry in column " +
                                    std::to_string(column + 1));
      }
    }
    previous = std::move(current);
    current = std::move(next);
    if ((column + 1) % 2 == 0) best = current.back();
  }
  return best;
}

Complex richardson_limit(std::span<const Complex> sums, std::span<const long> indices,
                         Complex sigma, int log_degree, int orders) {
  if (sums.size() != indices.size()) {
    throw DomainError("richardson_limit: sums and indices differ in length");
  }
  const int unknowns = 1 + orders * (log_degree + 1);
  if (static_cast<int>(sums.size()) < unknowns) {
    throw DomainError("richardson_limit: fewer samples than basis functions");
  }
  const auto rows = static_cast<Eigen::Index>(sums.size());
  const auto [lo, hi] = std::minmax_element(indices.begin(), indices.end());
  // Powers and logs measured from the middle of the sample range, and sums
  // from the last one, so the basis columns are far from collinear.
  const double log_mid = 0.5 * (std::log(static_cast<double>(*lo)) + std::log(static_cast<double>(*hi)));
  const Complex anchor = sums.back();
  Eigen::MatrixXcd basis(rows, unknowns);
  Eigen::VectorXcd rhs(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double log_n = std::log(static_cast<double>(indices[static_cast<std::size_t>(r)])) - log_mid;
    basis(r, 0) = 1.0;
    Eigen::Index col = 1;
    for (int j = 0; j < orders; ++j) {
      const Complex power = std::exp((sigma - static_cast<double>(j)) * log_n);
      double log_power = 1.0;
      for (int m = 0; m <= log_degree; ++m) {
        basis(r, col++) = power * log_power;
        log_power *= log_n;
      }
    }
    rhs(r) = sums[static_cast<std::size_t>(r)] - anchor;
  }
  const Eigen::VectorXd scale = basis.cwiseAbs().colwise().maxCoeff().transpose();
  for (Eigen::Index c = 0; c < basis.cols(); ++c) basis.col(c) /= scale(c);
  const Eigen::VectorXcd coeffs = basis.colPivHouseholderQr().solve(rhs);
  const Complex limit = anchor + coeffs(0) / scale(0);
  if (!finite(limit)) throw AccelerationBreakdown("richardson_limit: non-finite fit");
  return limit;
}

}  // namespace hyperharmonic
