#pragma once

// Eigenvalues of the (nonsymmetric) compressed matrix M by routes that never
// touch the symmetric eigensolver, so they can cross-check it.

#include "distlap/matrix.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace distlap {

// Coefficients c_0..c_n of det(xI - M), c_n = 1 (Faddeev-LeVerrier, long double).
std::vector<long double> characteristic_polynomial(const Matrix& m);

// All complex roots of sum c_k x^k by Aberth-Ehrlich iteration.
std::vector<std::complex<long double>> polynomial_roots(std::span<const long double> coeffs);

// Largest matrix handled by the characteristic-polynomial route.
inline constexpr std::size_t kCompanionRouteMax = 11;

struct NonsymmetricSpectrum {
    std::string route;              // "companion" or "general"
    std::vector<double> values;     // real parts, ascending
    double max_imaginary = 0.0;
};

// Characteristic polynomial + Aberth roots, each root polished by Newton
// steps on det(M - xI) through an LU factorization. Sizes up to
// kCompanionRouteMax.
NonsymmetricSpectrum companion_route_spectrum(const Matrix& m);
// Hessenberg-QR through Eigen's general eigensolver.
NonsymmetricSpectrum general_route_spectrum(const Matrix& m);
// Companion route when small enough, general route otherwise.
NonsymmetricSpectrum nonsymmetric_spectrum(const Matrix& m);

// Inverse iteration for an eigenvector of a general square matrix near
// `shift`; returns a vector with unit infinity norm.
std::vector<double> inverse_iteration(const Matrix& m, double shift, int iterations = 3);

}  // namespace distlap
