#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "anderson/correlations.hpp"
#include "anderson/lattice.hpp"
#include "anderson/types.hpp"

namespace anderson {

/// Explicit (anti)symmetrized two-particle basis over N sites: ordered site
/// pairs (n <= m for bosons, n < m for fermions), sorted lexicographically.
/// Dimension is N(N+1)/2 or N(N-1)/2. This is a brute-force test fixture;
/// construction refuses N > 64.
struct TwoParticleBasis {
    int sites = 0;
    bool fermionic = false;
    std::vector<std::pair<int, int>> pairs;

    int dimension() const { return static_cast<int>(pairs.size()); }
    int index_of(int n, int m) const;  // -1 if absent (fermion equal pair)
};

TwoParticleBasis make_two_particle_basis(int n_sites, bool fermionic);

/// Second-quantized matrix of the one-particle Hamiltonian in the basis,
/// including the sqrt(2) factors that couple singly and doubly occupied
/// boson states. Its spectrum equals pairwise sums of the one-particle
/// spectrum (non-interacting separability), which the tests assert.
Matrix fock_hamiltonian(const Hamiltonian& h, const TwoParticleBasis& basis);

/// Normalized amplitude vector for the input state over the basis.
ComplexVector prepare_input(const TwoParticleInput& input,
                            const TwoParticleBasis& basis);

/// Gamma_qr = <psi(t)| a+_q a+_r a_r a_q |psi(t)> via direct state evolution
/// in the two-particle basis. Independent of the propagator-product route in
/// correlations.hpp; used to certify it.
CorrelationMatrix fock_evolve_correlation(const Hamiltonian& h,
                                          const TwoParticleInput& input,
                                          double t);

/// Correlation evaluator signature, so the checker can be pointed at a
/// deliberately corrupted formula in negative-control tests.
using CorrelationFormula = std::function<CorrelationMatrix(
    const Propagator&, const TwoParticleInput&)>;

struct OracleCheckReport {
    bool passed = true;
    int trials = 0;
    double worst_error = 0.0;
    // worst offender
    int worst_q = -1, worst_r = -1;
    double worst_time = 0.0;
    std::string worst_variant;

    std::string summary() const;
};

/// Runs `trials` random (H, t, variant) instances on `size` sites and
/// compares the formula route against the Fock evolution elementwise at
/// tolerance 1e-9. Times cycle through {0.5, 2, 8}; variants cycle through
/// boson, fermion, and path-entangled with theta in {0, pi/2, pi}.
OracleCheckReport run_oracle_check(int size, int trials, std::uint64_t seed,
                                   const CorrelationFormula& formula = {});

}  // namespace anderson
