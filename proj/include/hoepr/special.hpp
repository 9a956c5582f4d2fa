#pragma once

#include <complex>

namespace hoepr {

/// Complete elliptic integral of the first kind K(k), modulus convention,
/// via the arithmetic-geometric mean. Requires 0 <= k < 1.
double elliptic_K(double k);

/// Bessel function J0 for real argument.
double bessel_j0(double x);

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz) (Weideman rational expansion).
std::complex<double> faddeeva_w(std::complex<double> z);

/// Error function of a complex argument.
std::complex<double> erf(std::complex<double> z);

/// exp(log_scale) * erfc(z), evaluated without forming exp(-z^2) separately,
/// so large cancelling exponents stay finite.
std::complex<double> scaled_erfc(std::complex<double> z, std::complex<double> log_scale);

}  // namespace hoepr
