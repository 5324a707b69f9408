#include "anderson/ensemble.hpp"

#include <algorithm>
#include <condition_variable>
#include <map>
#include <mutex>
#include <string>
#include <thread>

#include "anderson/errors.hpp"
#include "anderson/propagator.hpp"
#include "anderson/rng.hpp"

namespace anderson {

namespace {

constexpr std::uint64_t kMemoryBudgetBytes = 4ull << 30;

unsigned resolve_workers(unsigned hint) {
    if (hint > 0) return hint;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Per-realization observable buffers, one entry per grid time.
struct RealizationBuffers {
    std::vector<Vector> vectors;
    std::vector<Matrix> matrices;  // empty when not accumulating full Gamma
};

/// Runs realizations on a worker pool and folds their buffers into `fold`
/// strictly in realization-index order, so the floating-point reduction is
/// independent of the worker count and schedule.
void run_ordered(std::uint64_t realizations, unsigned workers,
                 const std::function<RealizationBuffers(std::uint64_t)>& compute,
                 const std::function<void(RealizationBuffers&&)>& fold,
                 const ProgressFn& progress) {
    std::mutex mutex;
    std::condition_variable drained;
    std::map<std::uint64_t, RealizationBuffers> pending;
    std::uint64_t next_to_claim = 0;
    std::uint64_t next_to_fold = 0;
    const std::size_t pending_cap = 2 * workers + 4;
    std::exception_ptr failure;

    auto worker_loop = [&] {
        for (;;) {
            std::uint64_t index;
            {
                std::lock_guard<std::mutex> lock(mutex);
                if (failure || next_to_claim >= realizations) return;
                index = next_to_claim++;
            }
            RealizationBuffers buffers;
            try {
                buffers = compute(index);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mutex);
                if (!failure) failure = std::current_exception();
                drained.notify_all();
                return;
            }
            std::unique_lock<std::mutex> lock(mutex);
            drained.wait(lock, [&] {
                return failure || index < next_to_fold + pending_cap;
            });
            if (failure) return;
            pending.emplace(index, std::move(buffers));
            while (!pending.empty() && pending.begin()->first == next_to_fold) {
                auto node = pending.extract(pending.begin());
                fold(std::move(node.mapped()));
                ++next_to_fold;
                if (progress) progress(next_to_fold, realizations);
            }
            drained.notify_all();
        }
    };

    if (workers <= 1) {
        worker_loop();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker_loop);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

void validate(const EnsembleConfig& config) {
    validate(config.lattice);
    if (config.realizations < 1)
        throw ConfigError("ensemble: need at least one realization");
    if (config.times.empty())
        throw ConfigError("ensemble: empty time grid");
    double prev = -1.0;
    for (double t : config.times) {
        if (t < 0.0) throw ConfigError("ensemble: times must be >= 0");
        if (t <= prev) throw ConfigError("ensemble: times must be strictly ascending");
        prev = t;
    }
    const int n = config.lattice.total_sites();
    if (const auto* single = std::get_if<SingleParticleSource>(&config.input)) {
        if (single->site < 0 || single->site >= n)
            throw ConfigError("ensemble: source site out of range for " +
                              std::to_string(n) + " sites");
    } else {
        validate(std::get<TwoParticleInput>(config.input), n);
    }
}

EnsembleResult run_ensemble(const EnsembleConfig& config,
                            const ProgressFn& progress) {
    validate(config);
    const int n = config.lattice.total_sites();
    const std::size_t n_times = config.times.size();
    const unsigned workers = resolve_workers(config.workers);
    const bool pair = config.two_particle();

    const std::uint64_t per_realization =
        n_times * (static_cast<std::uint64_t>(n) * (pair ? n : 1) + n) * sizeof(double);
    const std::uint64_t estimate =
        per_realization * (2 * workers + 6) + 2 * per_realization;
    if (estimate > kMemoryBudgetBytes)
        throw ResourceError(
            "ensemble: estimated working set " + std::to_string(estimate >> 20) +
            " MiB exceeds the " + std::to_string(kMemoryBudgetBytes >> 20) +
            " MiB budget; reduce lattice size, times, or workers");

    EnsembleResult result;
    result.config = config;
    result.realizations = config.realizations;
    result.slices.resize(n_times);
    for (std::size_t s = 0; s < n_times; ++s) {
        result.slices[s].time = config.times[s];
        result.slices[s].density = Vector::Zero(n);
        if (pair) result.slices[s].gamma = Matrix::Zero(n, n);
    }

    auto compute = [&](std::uint64_t index) {
        const Hamiltonian h =
            build_hamiltonian(config.lattice, derive_seed(config.master_seed, index));
        const SpectralDecomposition sd = decompose(h);
        RealizationBuffers buffers;
        buffers.vectors.resize(n_times);
        if (pair) buffers.matrices.resize(n_times);
        if (pair) {
            const auto& input = std::get<TwoParticleInput>(config.input);
            for (std::size_t s = 0; s < n_times; ++s) {
                const ComplexMatrix cols = evolve_columns(
                    sd, config.times[s], {input.site_a, input.site_b});
                CorrelationMatrix gamma = correlation_from_columns(
                    cols.col(0), cols.col(1), input, config.times[s]);
                buffers.vectors[s] = density_marginal(gamma);
                buffers.matrices[s] = std::move(gamma.values);
            }
        } else {
            const int src = std::get<SingleParticleSource>(config.input).site;
            for (std::size_t s = 0; s < n_times; ++s) {
                const ComplexMatrix col = evolve_columns(sd, config.times[s], {src});
                buffers.vectors[s] = col.col(0).cwiseAbs2();
            }
        }
        return buffers;
    };

    auto fold = [&](RealizationBuffers&& buffers) {
        for (std::size_t s = 0; s < n_times; ++s) {
            result.slices[s].density += buffers.vectors[s];
            if (pair) result.slices[s].gamma += buffers.matrices[s];
        }
    };

    run_ordered(config.realizations, workers, compute, fold, progress);

    const double inv = 1.0 / static_cast<double>(config.realizations);
    for (auto& slice : result.slices) {
        slice.density *= inv;
        if (pair) slice.gamma *= inv;
    }
    return result;
}

std::vector<Vector> stream_observable(
    const EnsembleConfig& config, Reducer reducer,
    const std::optional<RegionPartition>& partition, const ProgressFn& progress) {
    validate(config);
    const int n = config.lattice.total_sites();
    const std::size_t n_times = config.times.size();
    const bool pair = config.two_particle();
    if (!pair && reducer != Reducer::density)
        throw ConfigError(
            "stream_observable: single-particle inputs only support the density "
            "reducer");
    if (reducer == Reducer::region_mass && !partition)
        throw ConfigError("stream_observable: region_mass needs a partition");
    if (partition) {
        RegionPartition p = *partition;
        p.sites = n;
        p.validate();
    }

    // raw (un-normalized) masses accumulate linearly; normalization at the end
    std::vector<Vector> totals(n_times);
    std::vector<double> gamma_mass(n_times, 0.0);
    const int out_len = reducer == Reducer::density      ? n
                        : reducer == Reducer::g_of_delta ? 2 * n - 1
                                                         : 5;
    for (auto& v : totals) v = Vector::Zero(out_len);

    auto reduce_gamma = [&](const CorrelationMatrix& gamma) -> Vector {
        switch (reducer) {
            case Reducer::density:
                return density_marginal(gamma);
            case Reducer::g_of_delta:
                return interparticle_distance(gamma);
            case Reducer::region_mass: {
                const PairClassification c =
                    classify_pair_mass(gamma.values, *partition);
                Vector v(5);
                v << c.both_localized, c.both_ballistic_same_side,
                    c.both_ballistic_opposite_sides, c.split, c.unclassified;
                return v * gamma.values.sum();  // back to raw mass (linear)
            }
        }
        throw std::logic_error("unreachable");
    };

    auto compute = [&](std::uint64_t index) {
        const Hamiltonian h =
            build_hamiltonian(config.lattice, derive_seed(config.master_seed, index));
        const SpectralDecomposition sd = decompose(h);
        RealizationBuffers buffers;
        buffers.vectors.resize(n_times);
        if (pair) {
            const auto& input = std::get<TwoParticleInput>(config.input);
            buffers.matrices.resize(1);  // reuse slot 0 for per-time gamma mass
            buffers.matrices[0] = Matrix::Zero(1, n_times);
            for (std::size_t s = 0; s < n_times; ++s) {
                const ComplexMatrix cols = evolve_columns(
                    sd, config.times[s], {input.site_a, input.site_b});
                const CorrelationMatrix gamma = correlation_from_columns(
                    cols.col(0), cols.col(1), input, config.times[s]);
                buffers.vectors[s] = reduce_gamma(gamma);
                buffers.matrices[0](0, s) = gamma.values.sum();
            }
        } else {
            const int src = std::get<SingleParticleSource>(config.input).site;
            for (std::size_t s = 0; s < n_times; ++s) {
                const ComplexMatrix col = evolve_columns(sd, config.times[s], {src});
                buffers.vectors[s] = col.col(0).cwiseAbs2();
            }
        }
        return buffers;
    };

    auto fold = [&](RealizationBuffers&& buffers) {
        for (std::size_t s = 0; s < n_times; ++s) {
            totals[s] += buffers.vectors[s];
            if (pair) gamma_mass[s] += buffers.matrices[0](0, s);
        }
    };

    run_ordered(config.realizations, resolve_workers(config.workers), compute,
                fold, progress);

    const double inv = 1.0 / static_cast<double>(config.realizations);
    for (std::size_t s = 0; s < n_times; ++s) {
        if (reducer == Reducer::region_mass)
            totals[s] /= gamma_mass[s];  // fractions of total pair mass
        else
            totals[s] *= inv;
    }
    return totals;
}

}  // namespace anderson
