#include <doctest.h>

#include <cmath>

#include "anderson/ensemble.hpp"
#include "anderson/errors.hpp"
#include "anderson/propagator.hpp"
#include "anderson/rng.hpp"

using namespace anderson;

namespace {

LatticeSpec chain(int n, double w, DisorderKind kind) {
    LatticeSpec spec;
    spec.dimension = 1;
    spec.extent = {n, 1};
    spec.base_tunneling = 1.0;
    spec.disorder_kind = kind;
    spec.disorder_strength = w;
    return spec;
}

EnsembleConfig pair_config(int n, double w, std::uint64_t r,
                           std::uint64_t seed, std::vector<double> times) {
    EnsembleConfig config;
    config.lattice = chain(n, w, DisorderKind::off_diagonal);
    config.input = TwoParticleInput{InputKind::separable_boson, n / 2, n / 2 + 1, 0.0};
    config.times = std::move(times);
    config.realizations = r;
    config.master_seed = seed;
    return config;
}

}  // namespace

TEST_CASE("R=1 reproduces the single-realization pipeline") {
    EnsembleConfig config = pair_config(31, 0.7, 1, 99, {1.5, 4.0});
    const EnsembleResult result = run_ensemble(config);

    const Hamiltonian h =
        build_hamiltonian(config.lattice, derive_seed(config.master_seed, 0));
    const SpectralDecomposition sd = decompose(h);
    const auto& input = std::get<TwoParticleInput>(config.input);
    for (std::size_t s = 0; s < config.times.size(); ++s) {
        const Propagator u = evolve(sd, config.times[s]);
        const CorrelationMatrix gamma = correlation_single(u, input);
        CHECK(max_abs(result.slices[s].gamma - gamma.values) < 1e-14);
        CHECK(max_abs(result.slices[s].density - density_marginal(gamma)) < 1e-14);
    }
}

TEST_CASE("zero disorder is deterministic for any R") {
    EnsembleConfig one = pair_config(21, 0.0, 1, 5, {2.0});
    one.lattice.disorder_kind = DisorderKind::none;
    EnsembleConfig many = one;
    many.realizations = 8;
    many.master_seed = 123;
    const EnsembleResult a = run_ensemble(one);
    const EnsembleResult b = run_ensemble(many);
    CHECK(max_abs(a.slices[0].gamma - b.slices[0].gamma) < 1e-13);
}

TEST_CASE("result is bit-identical across worker counts") {
    EnsembleConfig config = pair_config(25, 0.9, 24, 7, {1.0, 3.0});
    config.workers = 1;
    const EnsembleResult w1 = run_ensemble(config);
    config.workers = 4;
    const EnsembleResult w4 = run_ensemble(config);
    config.workers = 16;
    const EnsembleResult w16 = run_ensemble(config);
    for (std::size_t s = 0; s < config.times.size(); ++s) {
        CHECK(w1.slices[s].gamma == w4.slices[s].gamma);
        CHECK(w1.slices[s].gamma == w16.slices[s].gamma);
        CHECK(w1.slices[s].density == w4.slices[s].density);
        CHECK(w1.slices[s].density == w16.slices[s].density);
    }
}

TEST_CASE("single-particle ensembles average the source-column density") {
    EnsembleConfig config;
    config.lattice = chain(41, 1.0, DisorderKind::off_diagonal);
    config.input = SingleParticleSource{20};
    config.times = {0.0, 5.0};
    config.realizations = 16;
    config.master_seed = 55;
    const EnsembleResult result = run_ensemble(config);
    CHECK(result.slices[0].density(20) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.slices[1].density.sum() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(result.slices[1].gamma.size() == 0);
}

TEST_CASE("streamed reducers equal reductions of the full run") {
    EnsembleConfig config = pair_config(33, 0.8, 24, 31, {2.0, 6.0});
    const EnsembleResult full = run_ensemble(config);

    const auto densities = stream_observable(config, Reducer::density);
    const auto distances = stream_observable(config, Reducer::g_of_delta);
    RegionPartition p;
    p.sites = 33;
    p.center_lo = 12;
    p.center_hi = 20;
    p.left_lo = 0;
    p.left_hi = 4;
    p.right_lo = 28;
    p.right_hi = 32;
    const auto masses = stream_observable(config, Reducer::region_mass, p);

    for (std::size_t s = 0; s < config.times.size(); ++s) {
        CHECK(max_abs(densities[s] - full.slices[s].density) < 1e-12);
        CorrelationMatrix gamma;
        gamma.values = full.slices[s].gamma;
        gamma.input = std::get<TwoParticleInput>(config.input);
        CHECK(max_abs(distances[s] - interparticle_distance(gamma)) < 1e-12);
        const PairClassification c = classify_pair_mass(full.slices[s].gamma, p);
        CHECK(masses[s](0) == doctest::Approx(c.both_localized).epsilon(1e-10));
        CHECK(masses[s](3) == doctest::Approx(c.split).epsilon(1e-10));
        CHECK(masses[s].sum() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("R=2 mean equals the hand-computed average of both realizations") {
    EnsembleConfig config = pair_config(19, 0.6, 2, 1234, {2.5});
    const EnsembleResult result = run_ensemble(config);

    Matrix sum = Matrix::Zero(19, 19);
    const auto& input = std::get<TwoParticleInput>(config.input);
    for (std::uint64_t i = 0; i < 2; ++i) {
        const Hamiltonian h =
            build_hamiltonian(config.lattice, derive_seed(config.master_seed, i));
        sum += correlation_single(evolve(decompose(h), 2.5), input).values;
    }
    CHECK(max_abs(result.slices[0].gamma - sum / 2.0) < 1e-14);
}

TEST_CASE("averaged correlation keeps the matrix invariants") {
    EnsembleConfig config = pair_config(27, 1.0, 40, 77, {3.0});
    config.input = TwoParticleInput{InputKind::separable_fermion, 13, 14, 0.0};
    const EnsembleResult result = run_ensemble(config);
    const Matrix& gamma = result.slices[0].gamma;
    CHECK(gamma.minCoeff() >= 0.0);
    CHECK(std::abs(gamma.sum() - 2.0) < 1e-8);
    CHECK(max_abs(gamma - gamma.transpose()) < 1e-12);
    CHECK(gamma.diagonal().maxCoeff() < 1e-16);
}

TEST_CASE("variance of g(0) shrinks roughly as 1/R") {
    // compare half-ensemble scatter at R=100 vs R=400 over a few seed pairs
    auto g0_of = [&](std::uint64_t seed, std::uint64_t r) {
        EnsembleConfig config = pair_config(33, 1.0, r, seed, {8.0});
        const auto g = stream_observable(config, Reducer::g_of_delta);
        return g[0](32);  // Delta = 0 for N = 33
    };
    double var100 = 0.0, var400 = 0.0;
    const int pairs = 12;
    for (int k = 0; k < pairs; ++k) {
        const double a100 = g0_of(7000 + 2 * k, 50), b100 = g0_of(7001 + 2 * k, 50);
        const double a400 = g0_of(8000 + 2 * k, 200), b400 = g0_of(8001 + 2 * k, 200);
        var100 += (a100 - b100) * (a100 - b100) / 2.0;
        var400 += (a400 - b400) * (a400 - b400) / 2.0;
    }
    var100 /= pairs;
    var400 /= pairs;
    const double ratio = var100 / var400;  // ideal: 4
    CHECK(ratio > 2.0);
    CHECK(ratio < 8.0);
}

TEST_CASE("config validation rejects bad ensembles before running") {
    EnsembleConfig config = pair_config(11, 0.5, 1, 1, {1.0});
    config.realizations = 0;
    CHECK_THROWS_AS(validate(config), ConfigError);

    config = pair_config(11, 0.5, 1, 1, {2.0, 1.0});
    CHECK_THROWS_AS(validate(config), ConfigError);

    config = pair_config(11, 0.5, 1, 1, {-1.0, 1.0});
    CHECK_THROWS_AS(validate(config), ConfigError);

    config = pair_config(11, 0.5, 1, 1, {1.0});
    config.input = TwoParticleInput{InputKind::separable_boson, 5, 11, 0.0};
    CHECK_THROWS_AS(validate(config), ConfigError);

    config = pair_config(11, 0.5, 1, 1, {1.0});
    config.input = SingleParticleSource{11};
    CHECK_THROWS_AS(validate(config), ConfigError);

    // memory guard: a config whose buffers would exceed the budget
    config = pair_config(40000, 0.5, 1, 1, {1.0});
    CHECK_THROWS_AS(run_ensemble(config), ResourceError);
}

TEST_CASE("stream_observable input constraints") {
    EnsembleConfig config = pair_config(15, 0.5, 2, 9, {1.0});
    config.input = SingleParticleSource{7};
    CHECK_THROWS_AS(stream_observable(config, Reducer::g_of_delta), ConfigError);
    config = pair_config(15, 0.5, 2, 9, {1.0});
    CHECK_THROWS_AS(stream_observable(config, Reducer::region_mass), ConfigError);
}
