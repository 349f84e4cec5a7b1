#pragma once

#include <complex>
#include <vector>

namespace bql {

// Eigenvalues of a real symmetric matrix by the cyclic Jacobi method,
// returned ascending. Suitable for the modest matrix sizes here (m <= 64).
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a);

// Eigenvalues of a Hermitian matrix via the real symmetric embedding
// [[Re, -Im], [Im, Re]], whose spectrum is the Hermitian spectrum doubled;
// returns the m distinct values ascending.
std::vector<double> hermitian_eigenvalues(
    const std::vector<std::vector<std::complex<double>>>& h);

}  // namespace bql
