#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anderson/correlations.hpp"
#include "anderson/errors.hpp"
#include "anderson/propagator.hpp"

using namespace anderson;

namespace {

LatticeSpec chain(int n, double w = 0.0,
                  DisorderKind kind = DisorderKind::none) {
    LatticeSpec spec;
    spec.dimension = 1;
    spec.extent = {n, 1};
    spec.base_tunneling = 1.0;
    spec.disorder_kind = kind;
    spec.disorder_strength = w;
    return spec;
}

Propagator disordered_u(int n, double t, std::uint64_t seed) {
    return evolve(decompose(build_hamiltonian(
                      chain(n, 0.8, DisorderKind::both), seed)),
                  t);
}

Propagator identity_u(int n) {
    Hamiltonian h;
    h.elements = Matrix::Zero(n, n);
    return evolve(decompose(h), 0.0);
}

constexpr auto kBoson = InputKind::separable_boson;
constexpr auto kFermion = InputKind::separable_fermion;
constexpr auto kEntangled = InputKind::path_entangled;

}  // namespace

TEST_CASE("t=0 boson pair sits where it started") {
    const CorrelationMatrix gamma =
        correlation_single(identity_u(5), {kBoson, 0, 1, 0.0});
    for (int q = 0; q < 5; ++q)
        for (int r = 0; r < 5; ++r) {
            const double expect =
                ((q == 0 && r == 1) || (q == 1 && r == 0)) ? 1.0 : 0.0;
            CHECK(gamma.values(q, r) == doctest::Approx(expect).epsilon(1e-14));
        }
}

TEST_CASE("t=0 path-entangled pair is doubly occupied on its two sites") {
    const CorrelationMatrix gamma =
        correlation_single(identity_u(5), {kEntangled, 0, 1, 0.0});
    CHECK(gamma.values(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma.values(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma.values.sum() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("fermion diagonal cancels exactly") {
    const Propagator u = disordered_u(13, 2.7, 5);
    const CorrelationMatrix gamma = correlation_single(u, {kFermion, 4, 9, 0.0});
    CHECK(gamma.values.diagonal().maxCoeff() < 1e-16);
}

TEST_CASE("every variant obeys the two-particle sum rule and symmetry") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u}) {
        const Propagator u = disordered_u(11, 1.9, seed);
        for (const TwoParticleInput input :
             {TwoParticleInput{kBoson, 2, 7, 0.0},
              TwoParticleInput{kFermion, 2, 7, 0.0},
              TwoParticleInput{kEntangled, 2, 7, 1.1}}) {
            const CorrelationMatrix gamma = correlation_single(u, input);
            CHECK(gamma.values.minCoeff() >= 0.0);
            CHECK(std::abs(gamma.values.sum() - 2.0) < 1e-9);
            CHECK(max_abs(gamma.values - gamma.values.transpose()) < 1e-12);
        }
    }
}

TEST_CASE("swapping the input sites leaves separable correlations unchanged") {
    const Propagator u = disordered_u(9, 3.3, 12);
    for (auto kind : {kBoson, kFermion}) {
        const CorrelationMatrix ab = correlation_single(u, {kind, 2, 6, 0.0});
        const CorrelationMatrix ba = correlation_single(u, {kind, 6, 2, 0.0});
        CHECK(max_abs(ab.values - ba.values) < 1e-12);
    }
}

TEST_CASE("input validation rejects bad sites and phases") {
    const Propagator u = identity_u(4);
    CHECK_THROWS_AS(correlation_single(u, {kBoson, 2, 2, 0.0}), ConfigError);
    CHECK_THROWS_AS(correlation_single(u, {kBoson, 0, 4, 0.0}), ConfigError);
    CHECK_THROWS_AS(correlation_single(u, {kEntangled, 0, 1, -0.1}), ConfigError);
    CHECK_THROWS_AS(
        correlation_single(u, {kEntangled, 0, 1, 2.0 * std::numbers::pi}),
        ConfigError);
    CHECK_THROWS_AS(correlation_single(u, {kBoson, 0, 1, 0.5}), ConfigError);
}

TEST_CASE("marginal is statistics-blind and matches the column densities") {
    const Propagator u = disordered_u(17, 4.1, 21);
    const CorrelationMatrix boson = correlation_single(u, {kBoson, 5, 11, 0.0});
    const CorrelationMatrix fermion = correlation_single(u, {kFermion, 5, 11, 0.0});
    const Vector mb = density_marginal(boson);
    const Vector mf = density_marginal(fermion);
    CHECK(max_abs(mb - mf) < 1e-12);
    CHECK(mb.sum() == doctest::Approx(2.0).epsilon(1e-9));

    const Vector expected =
        u.elements.col(5).cwiseAbs2() + u.elements.col(11).cwiseAbs2();
    CHECK(max_abs(mb - expected) < 1e-12);

    const CorrelationMatrix pe = correlation_single(u, {kEntangled, 5, 11, 2.3});
    CHECK(max_abs(density_marginal(pe) - expected) < 1e-12);
}

TEST_CASE("t=0 marginal puts one particle on each input site") {
    const Vector m = density_marginal(
        correlation_single(identity_u(6), {kBoson, 1, 4, 0.0}));
    CHECK(m(1) == doctest::Approx(1.0));
    CHECK(m(4) == doctest::Approx(1.0));
    CHECK(m.sum() == doctest::Approx(2.0));
}

TEST_CASE("interparticle distance: symmetry, sum rule, Pauli zero") {
    const Propagator u = disordered_u(15, 2.2, 30);
    const CorrelationMatrix fermion = correlation_single(u, {kFermion, 6, 8, 0.0});
    const Vector g = interparticle_distance(fermion);
    const int zero = 14;
    CHECK(g(zero) < 1e-16);
    CHECK(std::abs(g.sum() - 2.0) < 1e-9);
    for (int d = 1; d < 15; ++d)
        CHECK(std::abs(g(zero + d) - g(zero - d)) < 1e-12);
}

TEST_CASE("t=0 adjacent input has all mass at separation one") {
    const Vector g = interparticle_distance(
        correlation_single(identity_u(7), {kBoson, 3, 4, 0.0}));
    const int zero = 6;
    CHECK(g(zero + 1) == doctest::Approx(1.0));
    CHECK(g(zero - 1) == doctest::Approx(1.0));
    CHECK(g.sum() == doctest::Approx(2.0));
}

TEST_CASE("windowed distance only counts pairs inside the window") {
    const CorrelationMatrix gamma =
        correlation_single(identity_u(8), {kBoson, 1, 6, 0.0});
    const Vector g = interparticle_distance(gamma, 0, 3);
    CHECK(g.sum() == doctest::Approx(0.0));  // pair (1,6) straddles the window
    const Vector g_full = interparticle_distance(gamma, 0, 7);
    CHECK(g_full.sum() == doctest::Approx(2.0));
}

TEST_CASE("theta=0 and theta=pi path-entangled states differ for generic U") {
    const Propagator u = disordered_u(9, 1.4, 77);
    const CorrelationMatrix g0 =
        correlation_single(u, {kEntangled, 3, 5, 0.0});
    const CorrelationMatrix gpi =
        correlation_single(u, {kEntangled, 3, 5, std::numbers::pi});
    CHECK(max_abs(g0.values - gpi.values) > 1e-6);
}

TEST_CASE("2D axis-resolved distance sums same-row pairs only") {
    LatticeSpec spec;
    spec.dimension = 2;
    spec.extent = {3, 4};
    spec.base_tunneling = 1.0;
    const int a = site_index(spec, {1, 1});
    const int b = site_index(spec, {1, 2});
    Hamiltonian h;
    h.elements = Matrix::Zero(12, 12);
    h.spec = spec;
    const CorrelationMatrix gamma =
        correlation_single(evolve(decompose(h), 0.0), {kBoson, a, b, 0.0});
    const Vector g1 = interparticle_distance_axis(gamma, spec, 1);
    CHECK(g1.size() == 7);
    CHECK(g1(3 + 1) == doctest::Approx(1.0));
    CHECK(g1(3 - 1) == doctest::Approx(1.0));
    const Vector g0 = interparticle_distance_axis(gamma, spec, 0);
    CHECK(g0.size() == 5);
    // the input pair straddles two columns, so no pair shares a column and
    // the axis-0 restriction sees no mass at all
    CHECK(g0.sum() == doctest::Approx(0.0));
}
