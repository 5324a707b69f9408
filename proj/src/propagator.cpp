#include "anderson/propagator.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "anderson/errors.hpp"

namespace anderson {

namespace {

bool is_tridiagonal(const Matrix& h) {
    const int n = static_cast<int>(h.rows());
    for (int j = 0; j < n; ++j)
        for (int i = j + 2; i < n; ++i)
            if (h(i, j) != 0.0) return false;
    return true;
}

}  // namespace

SpectralDecomposition decompose(const Matrix& h) {
    if (h.rows() != h.cols())
        throw ConfigError("decompose: matrix is not square");
    if (max_abs(h - h.transpose()) > 1e-12)
        throw ConfigError("decompose: matrix asymmetry exceeds 1e-12");

    const int n = static_cast<int>(h.rows());
    Eigen::SelfAdjointEigenSolver<Matrix> solver;
    if (is_tridiagonal(h)) {
        Vector diag = h.diagonal();
        Vector sub(n - 1);
        for (int i = 0; i + 1 < n; ++i) sub(i) = h(i + 1, i);
        solver.computeFromTridiagonal(diag, sub);
    } else {
        solver.compute(h);
    }
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("decompose: eigensolver failed");

    SpectralDecomposition sd;
    sd.eigenvalues = solver.eigenvalues();
    sd.eigenvectors = solver.eigenvectors();
    return sd;
}

SpectralDecomposition decompose(const Hamiltonian& h) {
    return decompose(h.elements);
}

Propagator evolve(const SpectralDecomposition& sd, double t) {
    const Vector phase = sd.eigenvalues * t;
    const Vector c = phase.array().cos();
    const Vector s = phase.array().sin();
    const Matrix& v = sd.eigenvectors;

    Propagator u;
    u.time = t;
    u.elements.resize(sd.size(), sd.size());
    u.elements.real() = v * c.asDiagonal() * v.transpose();
    u.elements.imag() = v * s.asDiagonal() * v.transpose();
    return u;
}

ComplexMatrix evolve_columns(const SpectralDecomposition& sd, double t,
                             const std::vector<int>& sources) {
    const int n = sd.size();
    ComplexVector phase(n);
    for (int k = 0; k < n; ++k) {
        const double a = sd.eigenvalues(k) * t;
        phase(k) = Complex(std::cos(a), std::sin(a));
    }
    const Matrix& v = sd.eigenvectors;
    ComplexMatrix cols(n, static_cast<int>(sources.size()));
    for (std::size_t j = 0; j < sources.size(); ++j) {
        const int src = sources[j];
        if (src < 0 || src >= n)
            throw ConfigError("evolve_columns: source " + std::to_string(src) +
                              " out of range");
        // U e_src = V (phase .* V^T e_src), done as two real mat-vecs
        ComplexVector w = phase.cwiseProduct(v.row(src).transpose().cast<Complex>());
        cols.col(j).real() = v * w.real();
        cols.col(j).imag() = v * w.imag();
    }
    return cols;
}

Vector single_particle_density(const Propagator& u, int source) {
    if (source < 0 || source >= u.size())
        throw ConfigError("single_particle_density: source out of range");
    return u.elements.col(source).cwiseAbs2();
}

}  // namespace anderson
