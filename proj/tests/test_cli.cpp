#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "anderson/errors.hpp"
#include "anderson/result_bundle.hpp"
#include "anderson/run_config.hpp"

using namespace anderson;
namespace fs = std::filesystem;

namespace {

const char* kPairConfig = R"({
  "lattice": {"dimension": 1, "extent": [21], "tunneling": 1.0,
              "disorder_kind": "off_diagonal", "disorder_strength": 0.5},
  "input": {"variant": "fermion", "site_a": 10, "site_b": 11},
  "evolution": {"times": [1.5, 4]},
  "ensemble": {"realizations": 12, "master_seed": 9, "workers": 2},
  "output": {"directory": "out", "formats": ["csv"]}
})";

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("anderson_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("run config parses, validates, and round-trips") {
    const RunConfig rc = parse_run_config(kPairConfig);
    CHECK(rc.ensemble.lattice.extent[0] == 21);
    CHECK(rc.ensemble.two_particle());
    CHECK(std::get<TwoParticleInput>(rc.ensemble.input).kind ==
          InputKind::separable_fermion);
    CHECK(rc.ensemble.times == std::vector<double>{1.5, 4.0});
    CHECK(rc.ensemble.workers == 2);
    CHECK(rc.output_directory == "out");

    const RunConfig again = parse_run_config(serialize_run_config(rc));
    CHECK(again == rc);
}

TEST_CASE("unknown and ill-typed keys are rejected with their path") {
    std::string bad = kPairConfig;
    bad.replace(bad.find("\"tunneling\""), 11, "\"tunnelling\"");
    CHECK_THROWS_WITH_AS(parse_run_config(bad),
                         doctest::Contains("lattice.tunnelling"), ConfigError);

    CHECK_THROWS_AS(parse_run_config("{]"), ConfigError);
    CHECK_THROWS_AS(parse_run_config("{}"), ConfigError);

    std::string extra = kPairConfig;
    extra.insert(extra.rfind('}'), ", \"notes\": 1");
    CHECK_THROWS_WITH_AS(parse_run_config(extra), doctest::Contains("notes"),
                         ConfigError);
}

TEST_CASE("config semantic validation routes through the ensemble checks") {
    std::string bad = kPairConfig;
    bad.replace(bad.find("\"site_b\": 11"), 12, "\"site_b\": 21");
    CHECK_THROWS_AS(parse_run_config(bad), ConfigError);

    bad = kPairConfig;
    bad.replace(bad.find("[1.5, 4]"), 8, "[4, 1.5]");
    CHECK_THROWS_AS(parse_run_config(bad), ConfigError);

    bad = kPairConfig;
    bad.replace(bad.find("\"variant\": \"fermion\""), 20,
                "\"variant\": \"anyon\"");
    CHECK_THROWS_WITH_AS(parse_run_config(bad), doctest::Contains("variant"),
                         ConfigError);

    // single-particle config must not carry site_b
    bad = kPairConfig;
    bad.replace(bad.find("\"variant\": \"fermion\""), 20,
                "\"variant\": \"single_particle\"");
    CHECK_THROWS_AS(parse_run_config(bad), ConfigError);

    // theta only for path_entangled
    bad = kPairConfig;
    bad.replace(bad.find("\"site_b\": 11"), 12, "\"site_b\": 11, \"theta\": 0.5");
    CHECK_THROWS_AS(parse_run_config(bad), ConfigError);

    std::string pe = kPairConfig;
    pe.replace(pe.find("\"variant\": \"fermion\""), 20,
               "\"variant\": \"path_entangled\"");
    CHECK_THROWS_AS(parse_run_config(pe), ConfigError);  // missing theta
    pe.replace(pe.find("\"site_b\": 11"), 12, "\"site_b\": 11, \"theta\": 3.1");
    CHECK_NOTHROW(parse_run_config(pe));
}

TEST_CASE("seventeen-digit floats round-trip exactly") {
    std::mt19937_64 engine(4);
    std::uniform_real_distribution<double> mag(-30.0, 30.0);
    for (int i = 0; i < 500; ++i) {
        const double x = std::copysign(std::exp(mag(engine)),
                                       mag(engine) >= 0 ? 1.0 : -1.0);
        const double back = std::strtod(format_double17(x).c_str(), nullptr);
        CHECK(back == x);
    }
    CHECK(format_double17(0.0) == "0");
}

TEST_CASE("time labels use the shortest round-trip form") {
    CHECK(time_label(15.0) == "15");
    CHECK(time_label(2.5) == "2.5");
    CHECK(time_label(0.0) == "0");
    CHECK(time_label(120.0) == "120");
}

TEST_CASE("bundle writes are byte-deterministic and validate clean") {
    const RunConfig rc = parse_run_config(kPairConfig);
    const EnsembleResult result = run_ensemble(rc.ensemble);

    const fs::path dir_a = temp_dir("bundle_a");
    const fs::path dir_b = temp_dir("bundle_b");
    const auto files = write_bundle(result, rc, dir_a);
    write_bundle(result, rc, dir_b);
    CHECK(files.size() == 1 + 3 * rc.ensemble.times.size());
    for (const auto& name : files) CHECK(slurp(dir_a / name) == slurp(dir_b / name));

    CHECK_NOTHROW(validate_bundle(dir_a));

    // reload and compare numerically
    const Matrix gamma = load_matrix_csv(dir_a / "gamma_t1.5.csv");
    CHECK(max_abs(gamma - result.slices[0].gamma) == 0.0);
    const Vector density = load_vector_csv(dir_a / "density_t4.csv");
    CHECK(max_abs(density - result.slices[1].density) == 0.0);

    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("bundle validation catches corruption") {
    const RunConfig rc = parse_run_config(kPairConfig);
    const EnsembleResult result = run_ensemble(rc.ensemble);
    const fs::path dir = temp_dir("bundle_corrupt");
    write_bundle(result, rc, dir);

    // corrupt one matrix entry: breaks the sum rule
    Matrix gamma = load_matrix_csv(dir / "gamma_t1.5.csv");
    gamma(0, 0) += 0.5;
    std::ofstream out(dir / "gamma_t1.5.csv", std::ios::trunc);
    for (int i = 0; i < gamma.rows(); ++i) {
        for (int j = 0; j < gamma.cols(); ++j)
            out << (j ? "," : "") << format_double17(gamma(i, j));
        out << "\n";
    }
    out.close();
    CHECK_THROWS_AS(validate_bundle(dir), CheckError);
    fs::remove_all(dir);
}

TEST_CASE("metrics include parity contrast and classification when available") {
    RunConfig rc = parse_run_config(kPairConfig);
    const EnsembleResult result = run_ensemble(rc.ensemble);
    const fs::path dir = temp_dir("bundle_meta");
    write_bundle(result, rc, dir);
    const std::string meta = slurp(dir / "meta.json");
    CHECK(meta.find("parity_contrast_ell10") != std::string::npos);
    CHECK(meta.find("sum_gamma") != std::string::npos);
    CHECK(meta.find("\"version\"") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("directory lock rejects concurrent use") {
    const fs::path dir = temp_dir("lock");
    {
        DirectoryLock lock(dir);
        CHECK_THROWS_AS(DirectoryLock second(dir), ResourceError);
    }
    CHECK_NOTHROW(DirectoryLock third{dir});  // released on destruction
    fs::remove_all(dir);
}
