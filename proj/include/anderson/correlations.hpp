#pragma once

#include "anderson/lattice.hpp"
#include "anderson/propagator.hpp"
#include "anderson/types.hpp"

namespace anderson {

enum class InputKind { separable_boson, separable_fermion, path_entangled };

/// Initial two-particle state. Separable variants put one particle on each
/// of two distinct sites; the path-entangled variant puts both particles on
/// site_a OR both on site_b with relative phase theta:
///   (1/2) [ (a+_A)^2 + e^{i theta} (a+_B)^2 ] |0>.
struct TwoParticleInput {
    InputKind kind = InputKind::separable_boson;
    int site_a = 0;
    int site_b = 1;
    double theta = 0.0;  // used by path_entangled only

    bool fermionic() const { return kind == InputKind::separable_fermion; }
};

/// Throws ConfigError on equal sites, out-of-range sites (when n_sites is
/// known) or theta outside [0, 2*pi).
void validate(const TwoParticleInput& input, int n_sites = -1);

/// Gamma[q][r] = probability of detecting one particle at q and one at r.
/// Nonnegative, symmetric, sums to 2; identically zero diagonal for
/// fermions.
struct CorrelationMatrix {
    Matrix values;
    TwoParticleInput input;
    double time = 0.0;

    int size() const { return static_cast<int>(values.rows()); }
};

/// Single-realization correlation matrix from the two propagator columns
/// amp_a = U(t) e_A and amp_b = U(t) e_B:
///   separable:      Gamma_qr = |amp_a[q] amp_b[r] +- amp_b[q] amp_a[r]|^2
///   path-entangled: Gamma_qr = |amp_a[q] amp_a[r] + e^{i theta} amp_b[q] amp_b[r]|^2
/// The path-entangled closed form is validated against the Fock-space
/// oracle (fock_oracle.hpp) before being trusted; the oracle-equivalence
/// suite keeps guarding it.
CorrelationMatrix correlation_from_columns(const ComplexVector& amp_a,
                                           const ComplexVector& amp_b,
                                           const TwoParticleInput& input,
                                           double time);

CorrelationMatrix correlation_single(const Propagator& u,
                                     const TwoParticleInput& input);

/// n_q = sum_r Gamma_qr; sums to 2. Identical for boson and fermion inputs
/// on the same propagator and sites.
Vector density_marginal(const CorrelationMatrix& gamma);

/// g(Delta) = sum_q Gamma_{q,q+Delta}, Delta in [-(N-1), N-1], returned as
/// a vector of length 2N-1 with g(Delta) at index Delta + N - 1.
Vector interparticle_distance(const CorrelationMatrix& gamma);

/// Same, restricted to pairs with both sites inside [window_lo, window_hi]
/// (used for distance statistics within the localized region).
Vector interparticle_distance(const CorrelationMatrix& gamma, int window_lo,
                              int window_hi);

/// 2D variant: distances along one axis between sites sharing the other
/// coordinate. Returns a vector of length 2*extent[axis]-1.
Vector interparticle_distance_axis(const CorrelationMatrix& gamma,
                                   const LatticeSpec& spec, int axis);

}  // namespace anderson
