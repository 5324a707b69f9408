#include "anderson/correlations.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "anderson/errors.hpp"

namespace anderson {

void validate(const TwoParticleInput& input, int n_sites) {
    if (input.site_a == input.site_b)
        throw ConfigError("two-particle input: sites must be distinct");
    if (input.site_a < 0 || input.site_b < 0)
        throw ConfigError("two-particle input: negative site index");
    if (n_sites >= 0 && (input.site_a >= n_sites || input.site_b >= n_sites))
        throw ConfigError("two-particle input: site index out of range for " +
                          std::to_string(n_sites) + " sites");
    if (input.kind == InputKind::path_entangled) {
        if (!(input.theta >= 0.0 && input.theta < 2.0 * std::numbers::pi))
            throw ConfigError("two-particle input: theta must lie in [0, 2*pi)");
    } else if (input.theta != 0.0) {
        throw ConfigError("two-particle input: separable variants carry no phase");
    }
}

CorrelationMatrix correlation_from_columns(const ComplexVector& amp_a,
                                           const ComplexVector& amp_b,
                                           const TwoParticleInput& input,
                                           double time) {
    const int n = static_cast<int>(amp_a.size());
    validate(input, n);

    ComplexMatrix m(n, n);
    switch (input.kind) {
        case InputKind::separable_boson:
            m = amp_a * amp_b.transpose() + amp_b * amp_a.transpose();
            break;
        case InputKind::separable_fermion:
            m = amp_a * amp_b.transpose() - amp_b * amp_a.transpose();
            break;
        case InputKind::path_entangled: {
            const Complex phase(std::cos(input.theta), std::sin(input.theta));
            m = amp_a * amp_a.transpose() + phase * (amp_b * amp_b.transpose());
            break;
        }
    }

    CorrelationMatrix gamma;
    gamma.values = m.cwiseAbs2();
    gamma.input = input;
    gamma.time = time;
    return gamma;
}

CorrelationMatrix correlation_single(const Propagator& u,
                                     const TwoParticleInput& input) {
    validate(input, u.size());
    return correlation_from_columns(u.elements.col(input.site_a),
                                    u.elements.col(input.site_b), input, u.time);
}

Vector density_marginal(const CorrelationMatrix& gamma) {
    return gamma.values.rowwise().sum();
}

Vector interparticle_distance(const CorrelationMatrix& gamma) {
    return interparticle_distance(gamma, 0, gamma.size() - 1);
}

Vector interparticle_distance(const CorrelationMatrix& gamma, int window_lo,
                              int window_hi) {
    const int n = gamma.size();
    if (window_lo < 0 || window_hi >= n || window_lo > window_hi)
        throw ConfigError("interparticle_distance: bad window");
    Vector g = Vector::Zero(2 * n - 1);
    for (int q = window_lo; q <= window_hi; ++q)
        for (int r = window_lo; r <= window_hi; ++r)
            g(r - q + n - 1) += gamma.values(q, r);
    return g;
}

Vector interparticle_distance_axis(const CorrelationMatrix& gamma,
                                   const LatticeSpec& spec, int axis) {
    validate(spec);
    if (spec.dimension != 2)
        throw ConfigError("interparticle_distance_axis: spec must be 2D");
    if (axis != 0 && axis != 1)
        throw ConfigError("interparticle_distance_axis: axis must be 0 or 1");
    if (gamma.size() != spec.total_sites())
        throw ConfigError("interparticle_distance_axis: size mismatch");

    const int n_axis = spec.extent[axis];
    const int n_perp = spec.extent[1 - axis];
    Vector g = Vector::Zero(2 * n_axis - 1);
    for (int p = 0; p < n_perp; ++p) {
        for (int i = 0; i < n_axis; ++i) {
            for (int j = 0; j < n_axis; ++j) {
                const int q = axis == 0 ? site_index(spec, {i, p})
                                        : site_index(spec, {p, i});
                const int r = axis == 0 ? site_index(spec, {j, p})
                                        : site_index(spec, {p, j});
                g(j - i + n_axis - 1) += gamma.values(q, r);
            }
        }
    }
    return g;
}

}  // namespace anderson
