#include <string>

#include "cfstream/config.hpp"
#include "cfstream/errors.hpp"
#include "cfstream/streamgen.hpp"

namespace cfstream {

namespace {

Shape parse_shape(const ConfigFile& cfg, const std::string& section) {
    const std::string name = cfg.get_string_or(section, "shape", "linear");
    if (name == "linear") return Shape::linear;
    if (name == "logarithmic") return Shape::logarithmic;
    if (name == "exponential") return Shape::exponential;
    throw ConfigError(cfg.name() + ": " + section + ".shape: unknown shape `" + name + "`");
}

ModeSpec parse_mode_body(const ConfigFile& cfg, const std::string& section) {
    ModeSpec mode;
    const std::string dist = cfg.get_string_or(section, "dist", "normal");
    if (dist == "normal") {
        mode.dist = Dist::normal;
        mode.mean = cfg.get_doubles(section, "mean");
        mode.stddev = cfg.get_doubles(section, "std");
    } else if (dist == "uniform") {
        mode.dist = Dist::uniform;
        mode.low = cfg.get_doubles(section, "low");
        mode.high = cfg.get_doubles(section, "high");
    } else {
        throw ConfigError(cfg.name() + ": " + section + ".dist: unknown distribution `" + dist +
                          "`");
    }
    mode.dwell = cfg.get_double_or(section, "dwell", 0.99);
    return mode;
}

}  // namespace

StreamConfig StreamConfig::from_file(const std::string& path) {
    return from_config(ConfigFile::parse_file(path));
}

StreamConfig StreamConfig::from_config(const ConfigFile& cfg) {
    StreamConfig out;
    cfg.require_keys("stream", {"p", "seed", "n", "substreams"});
    out.p = static_cast<int>(cfg.get_int("stream", "p"));
    out.seed = cfg.get_uint_or("stream", "seed", 0);
    out.n = cfg.get_int_or("stream", "n", 0);
    out.substreams = static_cast<int>(cfg.get_int_or("stream", "substreams", 10));

    // mode.<id> sections must be contiguous from 0
    for (int id = 0;; ++id) {
        const std::string section = "mode." + std::to_string(id);
        if (!cfg.has_section(section)) break;
        cfg.require_keys(section, {"dist", "mean", "std", "low", "high", "dwell"});
        out.modes.push_back(parse_mode_body(cfg, section));
    }
    if (out.modes.empty()) {
        throw ConfigError(cfg.name() + ": at least one [mode.0] section is required");
    }

    const std::size_t m = out.modes.size();
    out.transitions.assign(m, std::vector<TransitionSpec>(m));
    std::vector<bool> row_has_entries(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const std::string section =
                "transition." + std::to_string(i) + "." + std::to_string(j);
            if (!cfg.has_section(section)) continue;
            cfg.require_keys(section, {"prob", "shape", "duration"});
            TransitionSpec& edge = out.transitions[i][j];
            edge.prob = cfg.get_double(section, "prob");
            edge.shape = parse_shape(cfg, section);
            edge.duration = static_cast<int>(cfg.get_int_or(section, "duration", 1));
            row_has_entries[i] = true;
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (!row_has_entries[i]) out.transitions[i][i].prob = 1.0;  // implicit self-row
    }

    if (cfg.has_section("outliers")) {
        cfg.require_keys("outliers", {"type1_prob", "type1_halfwidth", "type2_appear",
                                      "type2_last", "type2_offset"});
        out.type1.prob = cfg.get_double_or("outliers", "type1_prob", 0.0);
        out.type1.halfwidth = cfg.get_double_or("outliers", "type1_halfwidth", 0.0);
        out.type2.appear = cfg.get_double_or("outliers", "type2_appear", 0.0);
        out.type2.last = cfg.get_double_or("outliers", "type2_last", 0.0);
        if (cfg.has("outliers", "type2_offset")) {
            out.type2.offset = cfg.get_doubles("outliers", "type2_offset");
        }
    }

    for (int k = 0;; ++k) {
        const std::string section = "alteration." + std::to_string(k);
        if (!cfg.has_section(section)) break;
        Alteration alt;
        alt.trigger = cfg.get_int(section, "trigger");
        const std::string kind = cfg.get_string(section, "kind");
        if (kind == "mean_shift") {
            cfg.require_keys(section, {"kind", "trigger", "mode", "delta"});
            alt.kind = Alteration::Kind::mean_shift;
            alt.mode_id = static_cast<int>(cfg.get_int(section, "mode"));
            alt.delta = cfg.get_doubles(section, "delta");
        } else if (kind == "global_offset") {
            cfg.require_keys(section, {"kind", "trigger", "delta"});
            alt.kind = Alteration::Kind::global_offset;
            alt.delta = cfg.get_doubles(section, "delta");
        } else if (kind == "add_mode") {
            cfg.require_keys(section, {"kind", "trigger", "entry_prob", "entry_shape",
                                       "entry_duration", "dist", "mean", "std", "low", "high",
                                       "dwell"});
            alt.kind = Alteration::Kind::add_mode;
            alt.new_mode = parse_mode_body(cfg, section);
            alt.entry_prob = cfg.get_double_or(section, "entry_prob", 0.1);
            alt.entry_shape = parse_shape(cfg, section + "#entry");
            if (cfg.has(section, "entry_shape")) {
                const std::string name = cfg.get_string(section, "entry_shape");
                if (name == "linear") alt.entry_shape = Shape::linear;
                else if (name == "logarithmic") alt.entry_shape = Shape::logarithmic;
                else if (name == "exponential") alt.entry_shape = Shape::exponential;
                else {
                    throw ConfigError(cfg.name() + ": " + section +
                                      ".entry_shape: unknown shape `" + name + "`");
                }
            } else {
                alt.entry_shape = Shape::linear;
            }
            alt.entry_duration = static_cast<int>(cfg.get_int_or(section, "entry_duration", 50));
        } else {
            throw ConfigError(cfg.name() + ": " + section + ".kind: unknown alteration `" + kind +
                              "`");
        }
        out.alterations.push_back(std::move(alt));
    }

    // reject unknown sections
    for (const std::string& section : cfg.sections()) {
        if (section == "stream" || section == "outliers") continue;
        if (section.starts_with("mode.") || section.starts_with("transition.") ||
            section.starts_with("alteration.")) {
            continue;
        }
        throw ConfigError(cfg.name() + ": unknown section [" + section + "]");
    }

    out.validate();
    return out;
}

}  // namespace cfstream
