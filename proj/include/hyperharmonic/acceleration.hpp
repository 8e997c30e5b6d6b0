#ifndef HYPERHARMONIC_ACCELERATION_HPP_
#define HYPERHARMONIC_ACCELERATION_HPP_

#include <span>

#include "hyperharmonic/specialfn.hpp"

namespace hyperharmonic {

/// Deepest even column the epsilon table is built to.
inline constexpr int kWynnMaxDepth = 20;

/// Wynn epsilon extrapolation of a partial-sum sequence.
///
/// Uses the last (at most kWynnMaxDepth + 1, odd count) entries and returns
/// the highest even-column entry. A vanishing difference inside an even
/// column means that column has already converged and its latest entry is
/// returned; a vanishing difference inside an odd column, or a non-finite
/// entry, throws AccelerationBreakdown. Needs at least 5 partial sums.
Complex wynn_epsilon(std::span<const Complex> partial_sums);

/// Limit S of partial sums obeying
///   S_N ~ S + sum_{j<orders} sum_{m<=log_degree} c_jm N^(sigma-j) log^m N,
/// by least squares over the sampled (index, sum) pairs. `sums[i]` is the
/// partial sum through term `indices[i]`.
Complex richardson_limit(std::span<const Complex> sums, std::span<const long> indices,
                         Complex sigma, int log_degree, int orders);

}  // namespace hyperharmonic

#endif  // HYPERHARMONIC_ACCELERATION_HPP_
