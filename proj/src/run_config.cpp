#include "anderson/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "anderson/errors.hpp"

namespace anderson {

namespace {

using nlohmann::ordered_json;

void reject_unknown_keys(const ordered_json& obj, const std::string& section,
                         const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key))
            throw ConfigError("config: unknown key '" + section + "." + key + "'");
    }
}

const ordered_json& require(const ordered_json& obj, const std::string& section,
                            const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError("config: missing key '" + section + "." + key + "'");
    return *it;
}

DisorderKind parse_disorder_kind(const std::string& s) {
    if (s == "none") return DisorderKind::none;
    if (s == "off_diagonal") return DisorderKind::off_diagonal;
    if (s == "diagonal") return DisorderKind::diagonal;
    if (s == "both") return DisorderKind::both;
    throw ConfigError("config: lattice.disorder_kind must be one of "
                      "none|off_diagonal|diagonal|both, got '" + s + "'");
}

std::string disorder_kind_name(DisorderKind k) {
    switch (k) {
        case DisorderKind::none: return "none";
        case DisorderKind::off_diagonal: return "off_diagonal";
        case DisorderKind::diagonal: return "diagonal";
        case DisorderKind::both: return "both";
    }
    return "none";
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown_keys(doc, "", {"lattice", "input", "evolution", "ensemble",
                                  "output"});

    RunConfig rc;
    try {
        const auto& lat = require(doc, "", "lattice");
        reject_unknown_keys(lat, "lattice",
                            {"dimension", "extent", "tunneling", "disorder_kind",
                             "disorder_strength"});
        LatticeSpec& spec = rc.ensemble.lattice;
        spec.dimension = require(lat, "lattice", "dimension").get<int>();
        const auto& ext = require(lat, "lattice", "extent");
        if (!ext.is_array() || ext.empty() || ext.size() > 2 ||
            static_cast<int>(ext.size()) != spec.dimension)
            throw ConfigError(
                "config: lattice.extent must be an array matching the dimension");
        spec.extent = {ext[0].get<int>(),
                       ext.size() == 2 ? ext[1].get<int>() : 1};
        spec.base_tunneling = require(lat, "lattice", "tunneling").get<double>();
        spec.disorder_kind = parse_disorder_kind(
            require(lat, "lattice", "disorder_kind").get<std::string>());
        spec.disorder_strength =
            require(lat, "lattice", "disorder_strength").get<double>();

        const auto& input = require(doc, "", "input");
        reject_unknown_keys(input, "input", {"variant", "site_a", "site_b", "theta"});
        const std::string variant =
            require(input, "input", "variant").get<std::string>();
        if (variant == "single_particle") {
            if (input.contains("site_b") || input.contains("theta"))
                throw ConfigError(
                    "config: single_particle input takes only input.site_a");
            rc.ensemble.input =
                SingleParticleSource{require(input, "input", "site_a").get<int>()};
        } else {
            TwoParticleInput two;
            if (variant == "boson") {
                two.kind = InputKind::separable_boson;
            } else if (variant == "fermion") {
                two.kind = InputKind::separable_fermion;
            } else if (variant == "path_entangled") {
                two.kind = InputKind::path_entangled;
            } else {
                throw ConfigError(
                    "config: input.variant must be one of "
                    "single_particle|boson|fermion|path_entangled, got '" +
                    variant + "'");
            }
            two.site_a = require(input, "input", "site_a").get<int>();
            two.site_b = require(input, "input", "site_b").get<int>();
            if (two.kind == InputKind::path_entangled)
                two.theta = require(input, "input", "theta").get<double>();
            else if (input.contains("theta"))
                throw ConfigError("config: input.theta is only valid for "
                                  "path_entangled inputs");
            rc.ensemble.input = two;
        }

        const auto& evo = require(doc, "", "evolution");
        reject_unknown_keys(evo, "evolution", {"times"});
        const auto& times = require(evo, "evolution", "times");
        if (!times.is_array() || times.empty())
            throw ConfigError("config: evolution.times must be a non-empty array");
        for (const auto& t : times)
            rc.ensemble.times.push_back(t.get<double>());

        const auto& ens = require(doc, "", "ensemble");
        reject_unknown_keys(ens, "ensemble",
                            {"realizations", "master_seed", "workers"});
        rc.ensemble.realizations =
            require(ens, "ensemble", "realizations").get<std::uint64_t>();
        rc.ensemble.master_seed =
            require(ens, "ensemble", "master_seed").get<std::uint64_t>();
        if (ens.contains("workers"))
            rc.ensemble.workers = ens["workers"].get<unsigned>();

        if (doc.contains("output")) {
            const auto& out = doc["output"];
            reject_unknown_keys(out, "output", {"directory", "formats"});
            if (out.contains("directory"))
                rc.output_directory = out["directory"].get<std::string>();
            if (out.contains("formats")) {
                rc.output_formats.clear();
                for (const auto& f : out["formats"]) {
                    const std::string name = f.get<std::string>();
                    if (name != "csv")
                        throw ConfigError(
                            "config: output.formats supports only 'csv', got '" +
                            name + "'");
                    rc.output_formats.push_back(name);
                }
                if (rc.output_formats.empty())
                    throw ConfigError("config: output.formats must not be empty");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    validate(rc.ensemble);
    return rc;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str());
}

std::string serialize_run_config(const RunConfig& rc) {
    ordered_json doc;
    const LatticeSpec& spec = rc.ensemble.lattice;
    doc["lattice"]["dimension"] = spec.dimension;
    if (spec.dimension == 1)
        doc["lattice"]["extent"] = {spec.extent[0]};
    else
        doc["lattice"]["extent"] = {spec.extent[0], spec.extent[1]};
    doc["lattice"]["tunneling"] = spec.base_tunneling;
    doc["lattice"]["disorder_kind"] = disorder_kind_name(spec.disorder_kind);
    doc["lattice"]["disorder_strength"] = spec.disorder_strength;

    if (const auto* single = std::get_if<SingleParticleSource>(&rc.ensemble.input)) {
        doc["input"]["variant"] = "single_particle";
        doc["input"]["site_a"] = single->site;
    } else {
        const auto& two = std::get<TwoParticleInput>(rc.ensemble.input);
        switch (two.kind) {
            case InputKind::separable_boson:
                doc["input"]["variant"] = "boson";
                break;
            case InputKind::separable_fermion:
                doc["input"]["variant"] = "fermion";
                break;
            case InputKind::path_entangled:
                doc["input"]["variant"] = "path_entangled";
                break;
        }
        doc["input"]["site_a"] = two.site_a;
        doc["input"]["site_b"] = two.site_b;
        if (two.kind == InputKind::path_entangled)
            doc["input"]["theta"] = two.theta;
    }

    doc["evolution"]["times"] = rc.ensemble.times;
    doc["ensemble"]["realizations"] = rc.ensemble.realizations;
    doc["ensemble"]["master_seed"] = rc.ensemble.master_seed;
    doc["ensemble"]["workers"] = rc.ensemble.workers;
    doc["output"]["directory"] = rc.output_directory;
    doc["output"]["formats"] = rc.output_formats;
    return doc.dump(2) + "\n";
}

bool operator==(const LatticeSpec& a, const LatticeSpec& b) {
    return a.dimension == b.dimension && a.extent == b.extent &&
           a.base_tunneling == b.base_tunneling &&
           a.disorder_kind == b.disorder_kind &&
           a.disorder_strength == b.disorder_strength;
}

bool operator==(const SingleParticleSource& a, const SingleParticleSource& b) {
    return a.site == b.site;
}

bool operator==(const TwoParticleInput& a, const TwoParticleInput& b) {
    return a.kind == b.kind && a.site_a == b.site_a && a.site_b == b.site_b &&
           a.theta == b.theta;
}

bool operator==(const EnsembleConfig& a, const EnsembleConfig& b) {
    return a.lattice == b.lattice && a.input == b.input && a.times == b.times &&
           a.realizations == b.realizations && a.master_seed == b.master_seed &&
           a.workers == b.workers;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.ensemble == b.ensemble &&
           a.output_directory == b.output_directory &&
           a.output_formats == b.output_formats;
}

}  // namespace anderson
