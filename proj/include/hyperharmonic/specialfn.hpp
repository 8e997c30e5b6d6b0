#ifndef HYPERHARMONIC_SPECIALFN_HPP_
#define HYPERHARMONIC_SPECIALFN_HPP_

#include <complex>
#include <span>

namespace hyperharmonic {

using Complex = std::complex<double>;

/// Distance from a non-positive integer below which an argument counts as a pole.
inline constexpr double kPoleTolerance = 1e-12;

/// True when z lies within kPoleTolerance of 0, -1, -2, ...
bool is_gamma_pole(Complex z);

/// Principal-branch log Gamma. Lanczos (g = 7, 9 terms) for Re z >= 1/2,
/// reflection below. Throws PoleError at non-positive integers.
Complex ln_gamma(Complex z);

/// Gamma(z) = exp(ln_gamma(z)).
Complex gamma(Complex z);

/// Gamma(num[0]) ... Gamma(num[k]) / (Gamma(den[0]) ... Gamma(den[m])).
///
/// Evaluated in log space and exponentiated once, so ratios such as
/// Gamma(c+1) Gamma(n+1) / Gamma(c+n+1) stay finite for large n. A numerator
/// pole is accepted only when it can be paired with a denominator pole; the
/// pair is replaced by the ratio of the two residues. Any unpaired pole
/// throws PoleError.
Complex gamma_ratio(std::span<const Complex> numerators,
                    std::span<const Complex> denominators);

/// psi(z) = Gamma'(z) / Gamma(z).
Complex digamma(Complex z);

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), (a)_0 = 1.
/// Direct product for n <= 64, log-gamma ratio above.
Complex pochhammer(Complex a, long n);

/// Complete elliptic integral of the first kind in the modulus convention,
/// K(k) = int_0^{pi/2} (1 - k^2 sin^2 t)^{-1/2} dt, via the AGM.
/// Throws DomainError unless 0 <= k < 1.
double elliptic_K(double k);

}  // namespace hyperharmonic

#endif  // HYPERHARMONIC_SPECIALFN_HPP_
