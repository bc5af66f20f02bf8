#pragma once

#include <complex>
#include <span>

namespace starkphase {

using Complex = std::complex<double>;

/// Principal branch of ln Gamma(z).
///
/// Lanczos series (g = 607/128, 15 terms) for Re z >= 1/2; upward recurrence
/// for smaller real parts, so the imaginary part matches the principal branch
/// (cut along the negative real axis). Very negative real parts (< -1000) fall
/// back to the reflection formula and are then correct only modulo 2 pi i.
/// Throws PoleError within 1e-14 of a nonpositive integer.
Complex log_gamma(Complex z);

/// Reduces an angle to (-pi, pi].
double wrap_to_pi(double angle);

/// arg[ prod Gamma(numerators) / prod Gamma(denominators) ] in (-pi, pi],
/// computed from log-gamma sums so large arguments cannot overflow.
double arg_gamma_ratio(std::span<const Complex> numerators, std::span<const Complex> denominators);

}  // namespace starkphase
