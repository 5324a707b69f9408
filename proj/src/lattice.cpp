#include "anderson/lattice.hpp"

#include <string>

#include "anderson/errors.hpp"
#include "anderson/rng.hpp"

namespace anderson {

void validate(const LatticeSpec& spec) {
    if (spec.dimension != 1 && spec.dimension != 2)
        throw ConfigError("lattice: dimension must be 1 or 2, got " +
                          std::to_string(spec.dimension));
    if (spec.extent[0] < 1 || (spec.dimension == 2 && spec.extent[1] < 1))
        throw ConfigError("lattice: extent entries must be positive");
    if (spec.total_sites() < 2)
        throw ConfigError("lattice: need at least 2 sites, got " +
                          std::to_string(spec.total_sites()));
    if (!(spec.base_tunneling > 0.0))
        throw ConfigError("lattice: base_tunneling must be > 0");
    if (spec.disorder_strength < 0.0)
        throw ConfigError("lattice: disorder_strength must be >= 0");
    const bool off_diag = spec.disorder_kind == DisorderKind::off_diagonal ||
                          spec.disorder_kind == DisorderKind::both;
    if (off_diag && spec.disorder_strength >= 2.0)
        throw ConfigError(
            "lattice: off-diagonal disorder_strength must be < 2 "
            "(tunneling sign could flip)");
}

std::vector<std::pair<int, int>> neighbor_pairs(const LatticeSpec& spec) {
    validate(spec);
    std::vector<std::pair<int, int>> bonds;
    if (spec.dimension == 1) {
        const int n = spec.extent[0];
        bonds.reserve(n - 1);
        for (int i = 0; i + 1 < n; ++i) bonds.emplace_back(i, i + 1);
        return bonds;
    }
    const int n0 = spec.extent[0];
    const int n1 = spec.extent[1];
    bonds.reserve(n0 * (n1 - 1) + n1 * (n0 - 1));
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j + 1 < n1; ++j)
            bonds.emplace_back(i * n1 + j, i * n1 + j + 1);
    for (int i = 0; i + 1 < n0; ++i)
        for (int j = 0; j < n1; ++j)
            bonds.emplace_back(i * n1 + j, (i + 1) * n1 + j);
    return bonds;
}

int site_index(const LatticeSpec& spec, const std::array<int, 2>& coords) {
    validate(spec);
    if (coords[0] < 0 || coords[0] >= spec.extent[0])
        throw ConfigError("site_index: coordinate 0 out of range");
    if (spec.dimension == 1) return coords[0];
    if (coords[1] < 0 || coords[1] >= spec.extent[1])
        throw ConfigError("site_index: coordinate 1 out of range");
    return coords[0] * spec.extent[1] + coords[1];
}

std::array<int, 2> unflatten(const LatticeSpec& spec, int index) {
    validate(spec);
    if (index < 0 || index >= spec.total_sites())
        throw ConfigError("unflatten: index out of range");
    if (spec.dimension == 1) return {index, 0};
    return {index / spec.extent[1], index % spec.extent[1]};
}

Hamiltonian build_hamiltonian(const LatticeSpec& spec, std::uint64_t seed) {
    validate(spec);
    const int n = spec.total_sites();
    const double t0 = spec.base_tunneling;
    const double w = spec.disorder_strength;
    const bool off_diag = spec.disorder_kind == DisorderKind::off_diagonal ||
                          spec.disorder_kind == DisorderKind::both;
    const bool on_site = spec.disorder_kind == DisorderKind::diagonal ||
                         spec.disorder_kind == DisorderKind::both;

    Hamiltonian h;
    h.spec = spec;
    h.seed = seed;
    h.elements = Matrix::Zero(n, n);

    UniformStream rng(seed);
    for (const auto& [a, b] : neighbor_pairs(spec)) {
        double t = t0;
        if (off_diag) t = t0 * (1.0 + w * rng.next_centered());
        h.elements(a, b) = -t;
        h.elements(b, a) = -t;
    }
    if (on_site) {
        for (int i = 0; i < n; ++i) h.elements(i, i) = rng.next_symmetric(w);
    }
    return h;
}

}  // namespace anderson
