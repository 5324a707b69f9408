#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "anderson/analysis.hpp"
#include "anderson/correlations.hpp"
#include "anderson/lattice.hpp"
#include "anderson/types.hpp"

namespace anderson {

struct SingleParticleSource {
    int site = 0;
};

using EnsembleInput = std::variant<SingleParticleSource, TwoParticleInput>;

/// Disorder-ensemble run description. Realization i draws its Hamiltonian
/// from derive_seed(master_seed, i); observables are arithmetic means over
/// realizations, accumulated in realization-index order so the result is
/// bit-identical for any worker count.
struct EnsembleConfig {
    LatticeSpec lattice;
    EnsembleInput input = SingleParticleSource{};
    std::vector<double> times;
    std::uint64_t realizations = 1;
    std::uint64_t master_seed = 1;
    unsigned workers = 0;  // 0 = hardware concurrency

    bool two_particle() const {
        return std::holds_alternative<TwoParticleInput>(input);
    }
};

void validate(const EnsembleConfig& config);

/// Averaged observables at one grid time. For two-particle inputs `density`
/// is the marginal of the averaged correlation matrix (sums to 2) and
/// `gamma` is that matrix; for single-particle inputs `density` sums to 1
/// and `gamma` is empty.
struct TimeSlice {
    double time = 0.0;
    Vector density;
    Matrix gamma;
};

struct EnsembleResult {
    EnsembleConfig config;
    std::vector<TimeSlice> slices;
    std::uint64_t realizations = 0;
};

using ProgressFn = std::function<void(std::uint64_t done, std::uint64_t total)>;

EnsembleResult run_ensemble(const EnsembleConfig& config,
                            const ProgressFn& progress = {});

enum class Reducer { density, g_of_delta, region_mass };

/// Memory-bounded alternative to run_ensemble for linear reducers: per
/// realization the correlation matrix is reduced immediately and only the
/// reduced vectors are accumulated. Returns one vector per grid time:
///   density      -> length N (marginal),
///   g_of_delta   -> length 2N-1,
///   region_mass  -> the five PairClassification fractions.
/// Values are identical (to ~1e-12) to reducing run_ensemble's output.
std::vector<Vector> stream_observable(
    const EnsembleConfig& config, Reducer reducer,
    const std::optional<RegionPartition>& partition = std::nullopt,
    const ProgressFn& progress = {});

}  // namespace anderson
