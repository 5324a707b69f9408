#include "anderson/figures.hpp"

#include <fstream>
#include <map>

#include "anderson/errors.hpp"
#include "anderson/presets.hpp"
#include "anderson/result_bundle.hpp"

namespace anderson {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write " + path.string());
    out << text;
}

void copy_into(const fs::path& src, const fs::path& panel_dir,
               const std::string& as_name) {
    fs::create_directories(panel_dir);
    fs::copy_file(src, panel_dir / as_name, fs::copy_options::overwrite_existing);
}

std::string gp_header() {
    return "set datafile separator comma\n";
}

/// Stacks per-time density files of a run into map.csv (one row per time).
void emit_density_map(const EnsembleResult& result, const fs::path& panel_dir) {
    fs::create_directories(panel_dir);
    std::string map_text, times_text;
    for (const auto& slice : result.slices) {
        times_text += time_label(slice.time) + "\n";
        for (Eigen::Index i = 0; i < slice.density.size(); ++i) {
            if (i) map_text += ',';
            map_text += format_double17(slice.density(i));
        }
        map_text += '\n';
    }
    write_text(panel_dir / "map.csv", map_text);
    write_text(panel_dir / "times.csv", times_text);
    write_text(panel_dir / "plot.gp",
               gp_header() +
                   "set xlabel 'site'\nset ylabel 'time index'\n"
                   "plot 'map.csv' matrix with image notitle\n");
}

void emit_gamma_panel(const fs::path& run_dir, const std::string& label,
                      const fs::path& panel_dir, int zoom_lo, int zoom_hi) {
    copy_into(run_dir / ("gamma_t" + label + ".csv"), panel_dir, "gamma.csv");
    std::string gp = gp_header();
    if (zoom_lo >= 0)
        gp += "set xrange [" + std::to_string(zoom_lo) + ":" +
              std::to_string(zoom_hi) + "]\nset yrange [" +
              std::to_string(zoom_lo) + ":" + std::to_string(zoom_hi) + "]\n";
    gp += "set xlabel 'site r'\nset ylabel 'site q'\n"
          "plot 'gamma.csv' matrix with image notitle\n";
    write_text(panel_dir / "plot.gp", gp);
}

void emit_vector_panel(const std::map<std::string, fs::path>& curves,
                       const fs::path& panel_dir, int x_offset,
                       const std::string& xlabel) {
    fs::create_directories(panel_dir);
    std::string gp = gp_header() + "set xlabel '" + xlabel + "'\nplot ";
    bool first = true;
    for (const auto& [title, src] : curves) {
        const std::string name = title + ".csv";
        copy_into(src, panel_dir, name);
        if (!first) gp += ", ";
        gp += "'" + name + "' using ($0-" + std::to_string(x_offset) +
              "):1 with lines title '" + title + "'";
        first = false;
    }
    gp += "\n";
    write_text(panel_dir / "plot.gp", gp);
}

}  // namespace

void emit_figure(const std::string& preset_name, const fs::path& out_dir,
                 unsigned workers, const ProgressFn& progress) {
    const Preset& p = preset(preset_name);
    const fs::path fig_dir = out_dir / p.name;

    std::map<std::string, EnsembleResult> results;
    std::map<std::string, fs::path> run_dirs;
    for (const auto& run : p.runs) {
        RunConfig rc = run.config;
        if (workers > 0) rc.ensemble.workers = workers;
        const fs::path run_dir = fig_dir / "runs" / run.name;
        EnsembleResult result = run_ensemble(rc.ensemble, progress);
        write_bundle(result, run.config, run_dir);
        run_dirs[run.name] = run_dir;
        results.emplace(run.name, std::move(result));
    }
    write_text(fig_dir / "README.txt",
               p.name + ": " + p.description +
                   "\nEach panel directory holds plot-ready CSV data and a "
                   "gnuplot script (gnuplot plot.gp).\n");

    const int n = p.runs.front().config.ensemble.lattice.total_sites();
    const int center = n / 2;

    if (p.name == "fig1") {
        emit_density_map(results.at("periodic"), fig_dir / "panel_a");
        const std::string late =
            time_label(results.at("periodic").slices.back().time);
        emit_vector_panel({{"periodic_t" + late,
                            run_dirs.at("periodic") / ("density_t" + late + ".csv")}},
                          fig_dir / "panel_b", 0, "site");
        emit_density_map(results.at("realization_a"), fig_dir / "panel_c");
        emit_density_map(results.at("realization_b"), fig_dir / "panel_d");
        emit_density_map(results.at("averaged"), fig_dir / "panel_e");
        emit_vector_panel(
            {{"averaged_t26", run_dirs.at("averaged") / "density_t26.csv"},
             {"averaged_t60", run_dirs.at("averaged") / "density_t60.csv"}},
            fig_dir / "panel_f", 0, "site");
        return;
    }

    if (p.name == "fig2" || p.name == "fig3") {
        const std::string mid = time_label(p.runs.front().config.ensemble.times[0]);
        const int zoom = 25;
        emit_gamma_panel(run_dirs.at("boson"), mid, fig_dir / "panel_a", -1, -1);
        emit_gamma_panel(run_dirs.at("boson"), mid, fig_dir / "panel_b",
                         center - zoom, center + zoom);
        emit_gamma_panel(run_dirs.at("fermion"), mid, fig_dir / "panel_c", -1, -1);
        emit_gamma_panel(run_dirs.at("fermion"), mid, fig_dir / "panel_d",
                         center - zoom, center + zoom);
        emit_vector_panel(
            {{"boson_t" + mid, run_dirs.at("boson") / ("density_t" + mid + ".csv")},
             {"fermion_t" + mid,
              run_dirs.at("fermion") / ("density_t" + mid + ".csv")}},
            fig_dir / "panel_e", 0, "site");
        emit_vector_panel(
            {{"boson_t" + mid, run_dirs.at("boson") / ("g_t" + mid + ".csv")},
             {"fermion_t" + mid, run_dirs.at("fermion") / ("g_t" + mid + ".csv")}},
            fig_dir / "panel_f", n - 1, "separation");
        return;
    }

    if (p.name == "fig4") {
        const std::string late =
            time_label(p.runs.front().config.ensemble.times.back());
        const int zoom = 25;
        emit_gamma_panel(run_dirs.at("theta0_adjacent"), late, fig_dir / "panel_a",
                         -1, -1);
        emit_gamma_panel(run_dirs.at("theta0_adjacent"), late, fig_dir / "panel_b",
                         center - zoom, center + zoom);
        emit_gamma_panel(run_dirs.at("thetapi_separated"), late,
                         fig_dir / "panel_c", -1, -1);
        emit_gamma_panel(run_dirs.at("thetapi_separated"), late,
                         fig_dir / "panel_d", center - zoom, center + zoom);
        return;
    }

    throw ConfigError("no panel layout for preset '" + p.name + "'");
}

}  // namespace anderson
