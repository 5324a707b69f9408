#pragma once

#include <vector>

#include "anderson/lattice.hpp"
#include "anderson/types.hpp"

namespace anderson {

/// Full real-symmetric eigendecomposition H = V diag(lambda) V^T with
/// eigenvalues ascending and orthonormal real eigenvectors.
struct SpectralDecomposition {
    Vector eigenvalues;
    Matrix eigenvectors;

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// U(t) = e^{+iHt}, so U[r][r'] is the amplitude for a particle at site r'
/// at t=0 to reach site r at time t. The sign in the exponent follows the
/// convention used throughout; every observable computed here depends only
/// on moduli of U products and is unchanged under conjugation.
struct Propagator {
    ComplexMatrix elements;
    double time = 0.0;

    int size() const { return static_cast<int>(elements.rows()); }
};

/// Throws ConfigError if H is asymmetric beyond 1e-12. Uses a dedicated
/// tridiagonal path when the matrix is tridiagonal (1D chains), the dense
/// self-adjoint solver otherwise; both are deterministic.
SpectralDecomposition decompose(const Hamiltonian& h);
SpectralDecomposition decompose(const Matrix& h);

Propagator evolve(const SpectralDecomposition& sd, double t);

/// Columns of U(t) for the given source sites only; O(N^2) per column
/// instead of the O(N^3) full matrix. evolve_columns(sd, t, {j}).col(0)
/// equals evolve(sd, t).elements.col(j).
ComplexMatrix evolve_columns(const SpectralDecomposition& sd, double t,
                             const std::vector<int>& sources);

/// n_r = |U[r][source]|^2. Sums to 1 by unitarity.
Vector single_particle_density(const Propagator& u, int source);

}  // namespace anderson
