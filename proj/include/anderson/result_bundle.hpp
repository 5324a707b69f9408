#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "anderson/analysis.hpp"
#include "anderson/ensemble.hpp"
#include "anderson/run_config.hpp"

namespace anderson {

/// Decimal text with 17 significant digits (round-trips doubles exactly).
std::string format_double17(double value);

/// Shortest decimal that round-trips `value`, used in file names and metric
/// keys ("26", "2.5").
std::string time_label(double value);

/// Advisory lock: creates `<directory>/.lock` exclusively, removes it on
/// destruction. A second lock on the same directory throws ResourceError.
class DirectoryLock {
public:
    explicit DirectoryLock(const std::filesystem::path& directory);
    ~DirectoryLock();
    DirectoryLock(const DirectoryLock&) = delete;
    DirectoryLock& operator=(const DirectoryLock&) = delete;

private:
    std::filesystem::path path_;
};

/// Writes an EnsembleResult as a bundle under `directory`:
///   meta.json                     config echo, seed, version, derived metrics
///   density_t<label>.csv          one value per line
///   gamma_t<label>.csv            N comma-separated values per row (two-particle)
///   g_t<label>.csv                2N-1 values, Delta ascending (two-particle)
/// Deterministic: the same result writes byte-identical files.
/// Returns the list of relative file names written (meta.json first).
std::vector<std::string> write_bundle(const EnsembleResult& result,
                                      const RunConfig& config,
                                      const std::filesystem::path& directory);

Matrix load_matrix_csv(const std::filesystem::path& path);
Vector load_vector_csv(const std::filesystem::path& path);

/// Re-loads a bundle and checks every invariant that must hold for its
/// files (correlation-matrix invariants, density/g sum rules, config echo
/// round-trip). Throws CheckError with a diagnostic on the first violation.
void validate_bundle(const std::filesystem::path& directory);

}  // namespace anderson
