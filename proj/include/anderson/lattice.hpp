#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "anderson/types.hpp"

namespace anderson {

enum class DisorderKind { none, off_diagonal, diagonal, both };

/// Declarative description of an open-boundary tight-binding lattice:
/// geometry, base tunneling T, and the disorder model applied per
/// realization. Boundaries are hard walls; callers must size the lattice
/// so wavefronts stay clear of the edges (see analysis::edge_leakage).
struct LatticeSpec {
    int dimension = 1;                 // 1 or 2
    std::array<int, 2> extent{2, 1};   // site counts per axis; axis 1 unused in 1D
    double base_tunneling = 1.0;       // T > 0, energy units with hbar = 1
    DisorderKind disorder_kind = DisorderKind::none;
    double disorder_strength = 0.0;    // relative width (off-diagonal) or
                                       // absolute half-width (diagonal)

    int total_sites() const {
        return dimension == 1 ? extent[0] : extent[0] * extent[1];
    }
};

/// Throws ConfigError if the spec violates its invariants
/// (sites < 2, T <= 0, W < 0, W >= 2 with off-diagonal disorder, bad dimension).
void validate(const LatticeSpec& spec);

/// One disorder realization of H = sum_n W_n a+_n a_n - sum_<n,m> T_nm a+_n a_m,
/// stored dense. Exactly symmetric by construction; off-diagonal entries are
/// -T_nm on nearest-neighbor bonds and zero elsewhere.
struct Hamiltonian {
    Matrix elements;
    LatticeSpec spec;
    std::uint64_t seed = 0;

    int size() const { return static_cast<int>(elements.rows()); }
};

/// Undirected nearest-neighbor bonds, each exactly once, in a fixed
/// row-major order: bonds along axis 1 (stride 1) first, row by row, then
/// bonds along axis 0. Disorder draws follow this order.
std::vector<std::pair<int, int>> neighbor_pairs(const LatticeSpec& spec);

/// Row-major flattening of coordinates; inverse of unflatten.
int site_index(const LatticeSpec& spec, const std::array<int, 2>& coords);
std::array<int, 2> unflatten(const LatticeSpec& spec, int index);

/// Builds one disorder realization. Same (spec, seed) gives a bit-identical
/// matrix. Off-diagonal disorder draws T_nm = T*(1 + W*u), u uniform on
/// [-1/2,+1/2), one u per bond in neighbor_pairs order; diagonal disorder
/// then draws W_n uniform on [-W,+W), one per site in index order.
Hamiltonian build_hamiltonian(const LatticeSpec& spec, std::uint64_t seed);

}  // namespace anderson
