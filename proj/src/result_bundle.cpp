#include "anderson/result_bundle.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "anderson/errors.hpp"
#include "anderson/version.hpp"

namespace anderson {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string format_double17(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 17);
    if (ec != std::errc()) throw std::runtime_error("format_double17 failed");
    return std::string(buf, ptr);
}

std::string time_label(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("time_label failed");
    return std::string(buf, ptr);
}

DirectoryLock::DirectoryLock(const fs::path& directory) {
    fs::create_directories(directory);
    path_ = directory / ".lock";
    std::error_code ec;
    if (fs::exists(path_, ec))
        throw ResourceError("output directory '" + directory.string() +
                            "' is locked by another run (stale? remove " +
                            path_.string() + ")");
    std::ofstream lock(path_, std::ios::out | std::ios::trunc);
    if (!lock)
        throw ResourceError("cannot create lock file " + path_.string());
    lock << "anderson_pairs\n";
}

DirectoryLock::~DirectoryLock() {
    std::error_code ec;
    fs::remove(path_, ec);
}

namespace {

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::out | std::ios::trunc | std::ios::binary);
    if (!out) throw ResourceError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw ResourceError("short write to " + path.string());
}

std::string matrix_to_csv(const Matrix& m) {
    std::string text;
    text.reserve(static_cast<std::size_t>(m.size()) * 20);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) text += ',';
            text += format_double17(m(i, j));
        }
        text += '\n';
    }
    return text;
}

std::string vector_to_csv(const Vector& v) {
    std::string text;
    text.reserve(static_cast<std::size_t>(v.size()) * 20);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        text += format_double17(v(i));
        text += '\n';
    }
    return text;
}

int input_center(const EnsembleConfig& config) {
    if (const auto* single = std::get_if<SingleParticleSource>(&config.input))
        return single->site;
    const auto& two = std::get<TwoParticleInput>(config.input);
    return (two.site_a + two.site_b) / 2;
}

ordered_json fit_to_json(const LocalizationFit& fit) {
    ordered_json j;
    j["xi"] = fit.xi;
    j["residual"] = fit.residual;
    j["points"] = fit.points;
    return j;
}

ordered_json partition_to_json(const RegionPartition& p) {
    ordered_json j;
    j["center"] = {p.center_lo, p.center_hi};
    j["left"] = {p.left_lo, p.left_hi};
    j["right"] = {p.right_lo, p.right_hi};
    return j;
}

/// Derived scalar metrics recorded per grid time. Analysis steps that do
/// not apply at a given time (fit failures, infeasible partitions) record
/// their reason instead of failing the run.
ordered_json slice_metrics(const EnsembleResult& result, std::size_t index,
                           const LatticeSpec& lattice, int center) {
    const TimeSlice& slice = result.slices[index];
    const bool pair = result.config.two_particle();
    ordered_json m;
    m["sum_density"] = slice.density.sum();
    const Vector single_density = pair ? (slice.density / 2.0).eval() : slice.density;
    m["edge_leakage_margin5"] =
        lattice.dimension == 1 && slice.density.size() > 10
            ? ordered_json(edge_leakage(single_density, 5))
            : ordered_json();

    try {
        m["localization"] = fit_to_json(localization_fit(single_density, center));
    } catch (const FitError& e) {
        m["localization"] = nullptr;
        m["localization_note"] = e.what();
    }

    if (!pair) return m;

    CorrelationMatrix gamma;
    gamma.values = slice.gamma;
    gamma.input = std::get<TwoParticleInput>(result.config.input);
    gamma.time = slice.time;
    m["sum_gamma"] = slice.gamma.sum();
    m["diag_mass_fraction"] = slice.gamma.trace() / slice.gamma.sum();
    if (lattice.dimension == 1) {
        m["parity_contrast_ell10"] =
            parity_contrast(interparticle_distance(gamma), 10);
    } else {
        m["parity_contrast_axis1_ell10"] =
            parity_contrast(interparticle_distance_axis(gamma, lattice, 1), 10);
    }

    if (lattice.dimension == 1) {
        try {
            const Vector& late = result.slices.back().density;
            const RegionPartition p =
                make_region_partition(single_density, (late / 2.0).eval(), center);
            m["partition"] = partition_to_json(p);
            const PairClassification c = classify_pair_mass(slice.gamma, p);
            m["classification"] = {
                {"both_localized", c.both_localized},
                {"both_ballistic_same_side", c.both_ballistic_same_side},
                {"both_ballistic_opposite_sides", c.both_ballistic_opposite_sides},
                {"split", c.split},
                {"unclassified", c.unclassified}};
            m["parity_contrast_localized"] = parity_contrast(
                interparticle_distance(gamma, p.center_lo, p.center_hi), 10);
        } catch (const std::exception& e) {
            m["partition"] = nullptr;
            m["partition_note"] = e.what();
        }
    }
    return m;
}

}  // namespace

std::vector<std::string> write_bundle(const EnsembleResult& result,
                                      const RunConfig& config,
                                      const fs::path& directory) {
    fs::create_directories(directory);
    const bool pair = result.config.two_particle();
    const int center = input_center(result.config);

    std::vector<std::string> files{"meta.json"};
    ordered_json meta;
    meta["version"] = kVersionTag;
    meta["config"] = ordered_json::parse(serialize_run_config(config));
    meta["master_seed"] = result.config.master_seed;
    meta["realizations"] = result.realizations;

    ordered_json file_list;
    ordered_json metrics;
    for (std::size_t s = 0; s < result.slices.size(); ++s) {
        const TimeSlice& slice = result.slices[s];
        const std::string label = time_label(slice.time);

        const std::string density_name = "density_t" + label + ".csv";
        write_text_file(directory / density_name, vector_to_csv(slice.density));
        file_list["density"].push_back(density_name);
        files.push_back(density_name);

        if (pair) {
            const std::string gamma_name = "gamma_t" + label + ".csv";
            write_text_file(directory / gamma_name, matrix_to_csv(slice.gamma));
            file_list["gamma"].push_back(gamma_name);
            files.push_back(gamma_name);

            CorrelationMatrix gamma;
            gamma.values = slice.gamma;
            gamma.input = std::get<TwoParticleInput>(result.config.input);
            gamma.time = slice.time;
            const std::string g_name = "g_t" + label + ".csv";
            write_text_file(directory / g_name,
                            vector_to_csv(interparticle_distance(gamma)));
            file_list["g"].push_back(g_name);
            files.push_back(g_name);
        }
        metrics["t" + label] =
            slice_metrics(result, s, result.config.lattice, center);
    }
    meta["files"] = file_list;
    meta["metrics"] = metrics;
    write_text_file(directory / "meta.json", meta.dump(2) + "\n");
    return files;
}

namespace {

std::vector<std::vector<double>> load_csv_rows(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw CheckError("cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        const char* p = line.c_str();
        char* end = nullptr;
        for (;;) {
            const double v = std::strtod(p, &end);
            if (end == p)
                throw CheckError("bad number in " + path.string() + ": '" + line + "'");
            row.push_back(v);
            p = end;
            if (*p == ',') {
                ++p;
            } else if (*p == '\0') {
                break;
            } else {
                throw CheckError("unexpected delimiter in " + path.string());
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw CheckError("empty data file " + path.string());
    return rows;
}

}  // namespace

Matrix load_matrix_csv(const fs::path& path) {
    const auto rows = load_csv_rows(path);
    const std::size_t cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw CheckError("ragged rows in " + path.string());
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Vector load_vector_csv(const fs::path& path) {
    const auto rows = load_csv_rows(path);
    Vector v(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != 1)
            throw CheckError("expected one value per line in " + path.string());
        v(i) = rows[i][0];
    }
    return v;
}

void validate_bundle(const fs::path& directory) {
    std::ifstream in(directory / "meta.json");
    if (!in) throw CheckError("missing meta.json in " + directory.string());
    ordered_json meta;
    try {
        meta = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw CheckError(std::string("meta.json is not valid JSON: ") + e.what());
    }

    // config echo must re-parse to an identical document
    const std::string echoed = meta.at("config").dump(2) + "\n";
    const RunConfig parsed = parse_run_config(echoed);
    if (serialize_run_config(parsed) != echoed)
        throw CheckError("config echo does not round-trip");

    const bool pair = parsed.ensemble.two_particle();
    const int n = parsed.ensemble.lattice.total_sites();
    const bool fermionic =
        pair && std::get<TwoParticleInput>(parsed.ensemble.input).fermionic();

    for (const auto& name : meta.at("files").value("density", ordered_json::array())) {
        const Vector d = load_vector_csv(directory / name.get<std::string>());
        if (static_cast<int>(d.size()) != n)
            throw CheckError("density length mismatch in " + name.get<std::string>());
        if (d.minCoeff() < 0.0)
            throw CheckError("negative density in " + name.get<std::string>());
        const double expect = pair ? 2.0 : 1.0;
        if (std::abs(d.sum() - expect) > 1e-8)
            throw CheckError("density sum " + format_double17(d.sum()) +
                             " != " + format_double17(expect) + " in " +
                             name.get<std::string>());
    }
    if (pair) {
        for (const auto& name : meta.at("files").value("gamma", ordered_json::array())) {
            const Matrix g = load_matrix_csv(directory / name.get<std::string>());
            const std::string file = name.get<std::string>();
            if (g.rows() != n || g.cols() != n)
                throw CheckError("gamma shape mismatch in " + file);
            if (g.minCoeff() < 0.0) throw CheckError("negative gamma in " + file);
            if (max_abs(g - g.transpose()) > 1e-12)
                throw CheckError("gamma asymmetry exceeds 1e-12 in " + file);
            if (std::abs(g.sum() - 2.0) > 1e-8)
                throw CheckError("gamma sum " + format_double17(g.sum()) +
                                 " != 2 in " + file);
            if (fermionic && g.diagonal().maxCoeff() > 1e-16)
                throw CheckError("fermion gamma diagonal above 1e-16 in " + file);
        }
        for (const auto& name : meta.at("files").value("g", ordered_json::array())) {
            const Vector g = load_vector_csv(directory / name.get<std::string>());
            const std::string file = name.get<std::string>();
            if (static_cast<int>(g.size()) != 2 * n - 1)
                throw CheckError("g length mismatch in " + file);
            if (std::abs(g.sum() - 2.0) > 1e-8)
                throw CheckError("g sum != 2 in " + file);
            for (int d = 1; d < n; ++d)
                if (std::abs(g(n - 1 + d) - g(n - 1 - d)) > 1e-12)
                    throw CheckError("g(Delta) asymmetry in " + file);
        }
    }
}

}  // namespace anderson
