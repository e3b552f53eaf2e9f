#include "cfstream/streamgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cfstream/errors.hpp"

namespace cfstream {

std::string label_name(Label label) {
    switch (label) {
        case Label::normal: return "normal";
        case Label::type1: return "type1";
        case Label::type2: return "type2";
    }
    throw InputError("label_name: invalid label value");
}

Label label_from_name(const std::string& name) {
    if (name == "normal") return Label::normal;
    if (name == "type1") return Label::type1;
    if (name == "type2") return Label::type2;
    throw InputError("label_from_name: unknown label `" + name + "`");
}

Point ModeSpec::center() const {
    if (dist == Dist::normal) return mean;
    Point c(low.size());
    for (std::size_t i = 0; i < low.size(); ++i) c[i] = 0.5 * (low[i] + high[i]);
    return c;
}

Point ModeSpec::spread() const {
    if (dist == Dist::normal) return stddev;
    Point s(low.size());
    for (std::size_t i = 0; i < low.size(); ++i) s[i] = 0.5 * (high[i] - low[i]);
    return s;
}

double shape_value(Shape shape, double u) {
    switch (shape) {
        case Shape::linear: return u;
        case Shape::logarithmic: return std::log1p(9.0 * u) / std::log(10.0);
        case Shape::exponential: return (std::pow(10.0, u) - 1.0) / 9.0;
    }
    throw InputError("shape_value: invalid shape value");
}

namespace {

Shape shape_from_name(const std::string& name, const std::string& where) {
    if (name == "linear") return Shape::linear;
    if (name == "logarithmic") return Shape::logarithmic;
    if (name == "exponential") return Shape::exponential;
    throw ConfigError(where + ": unknown shape `" + name + "`");
}

void validate_mode(const ModeSpec& mode, int p, const std::string& where) {
    if (mode.dist == Dist::normal) {
        if (static_cast<int>(mode.mean.size()) != p) {
            throw ConfigError(where + ".mean must have " + std::to_string(p) + " entries");
        }
        if (static_cast<int>(mode.stddev.size()) != p) {
            throw ConfigError(where + ".std must have " + std::to_string(p) + " entries");
        }
        for (double s : mode.stddev) {
            if (s < 0.0) throw ConfigError(where + ".std entries must be non-negative");
        }
    } else {
        if (static_cast<int>(mode.low.size()) != p || static_cast<int>(mode.high.size()) != p) {
            throw ConfigError(where + ".low/.high must have " + std::to_string(p) + " entries");
        }
        for (std::size_t i = 0; i < mode.low.size(); ++i) {
            if (mode.low[i] > mode.high[i]) {
                throw ConfigError(where + ": low exceeds high in coordinate " + std::to_string(i));
            }
        }
    }
    if (mode.dwell < 0.0 || mode.dwell > 1.0) {
        throw ConfigError(where + ".dwell must lie in [0, 1]");
    }
}

}  // namespace

void StreamConfig::validate() const {
    if (p < 1) throw ConfigError("stream.p must be >= 1");
    if (modes.empty()) throw ConfigError("at least one mode.<id> section is required");
    for (std::size_t m = 0; m < modes.size(); ++m) {
        validate_mode(modes[m], p, "mode." + std::to_string(m));
    }
    if (transitions.size() != modes.size()) {
        throw ConfigError("transition matrix must have one row per mode");
    }
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        const auto& row = transitions[i];
        if (row.size() != modes.size()) {
            throw ConfigError("transition." + std::to_string(i) + " row size mismatch");
        }
        double sum = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const std::string where =
                "transition." + std::to_string(i) + "." + std::to_string(j);
            if (row[j].prob < 0.0 || row[j].prob > 1.0) {
                throw ConfigError(where + ".prob must lie in [0, 1]");
            }
            if (row[j].duration < 1) throw ConfigError(where + ".duration must be >= 1");
            sum += row[j].prob;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw ConfigError("transition." + std::to_string(i) + " probabilities sum to " +
                              std::to_string(sum) + ", expected 1");
        }
    }
    if (type1.prob < 0.0 || type1.prob > 1.0) {
        throw ConfigError("outliers.type1_prob must lie in [0, 1]");
    }
    if (type1.halfwidth < 0.0) throw ConfigError("outliers.type1_halfwidth must be >= 0");
    if (type2.appear < 0.0 || type2.appear > 1.0) {
        throw ConfigError("outliers.type2_appear must lie in [0, 1]");
    }
    if (type2.last < 0.0 || type2.last > 1.0) {
        throw ConfigError("outliers.type2_last must lie in [0, 1]");
    }
    if (type2.appear > 0.0 && static_cast<int>(type2.offset.size()) != p) {
        throw ConfigError("outliers.type2_offset must have " + std::to_string(p) + " entries");
    }
    std::int64_t last_trigger = -1;
    for (std::size_t k = 0; k < alterations.size(); ++k) {
        const std::string where = "alteration." + std::to_string(k);
        const Alteration& a = alterations[k];
        if (a.trigger <= last_trigger) {
            throw ConfigError(where + ".trigger indices must be strictly increasing");
        }
        last_trigger = a.trigger;
        if (a.trigger < 0) throw ConfigError(where + ".trigger must be >= 0");
        switch (a.kind) {
            case Alteration::Kind::mean_shift:
                if (a.mode_id < 0 || a.mode_id >= static_cast<int>(modes.size())) {
                    throw ConfigError(where + ".mode names an unknown mode");
                }
                [[fallthrough]];
            case Alteration::Kind::global_offset:
                if (static_cast<int>(a.delta.size()) != p) {
                    throw ConfigError(where + ".delta must have " + std::to_string(p) +
                                      " entries");
                }
                break;
            case Alteration::Kind::add_mode:
                validate_mode(a.new_mode, p, where);
                if (a.entry_prob <= 0.0 || a.entry_prob >= 1.0) {
                    throw ConfigError(where + ".entry_prob must lie in (0, 1)");
                }
                if (a.entry_duration < 1) {
                    throw ConfigError(where + ".entry_duration must be >= 1");
                }
                break;
        }
    }
}

namespace {

struct Generator {
    const StreamConfig& cfg;
    std::mt19937_64 rng;
    std::uniform_real_distribution<double> unit{0.0, 1.0};
    std::normal_distribution<double> gauss{0.0, 1.0};

    std::vector<ModeSpec> modes;
    std::vector<std::vector<TransitionSpec>> trans;
    std::vector<double> offset;

    int mode = 0;
    bool in_transition = false;
    int t_from = 0, t_to = 0, t_step = 0, t_duration = 1;
    Shape t_shape = Shape::linear;
    bool episode = false;
    std::size_t next_alteration = 0;

    Generator(const StreamConfig& c, std::uint64_t seed)
        : cfg(c), rng(seed), modes(c.modes), trans(c.transitions),
          offset(static_cast<std::size_t>(c.p), 0.0) {}

    void apply_alterations(std::int64_t index) {
        while (next_alteration < cfg.alterations.size() &&
               cfg.alterations[next_alteration].trigger == index) {
            const Alteration& a = cfg.alterations[next_alteration];
            switch (a.kind) {
                case Alteration::Kind::mean_shift: {
                    ModeSpec& m = modes[static_cast<std::size_t>(a.mode_id)];
                    if (m.dist == Dist::normal) {
                        for (std::size_t i = 0; i < m.mean.size(); ++i) m.mean[i] += a.delta[i];
                    } else {
                        for (std::size_t i = 0; i < m.low.size(); ++i) {
                            m.low[i] += a.delta[i];
                            m.high[i] += a.delta[i];
                        }
                    }
                    break;
                }
                case Alteration::Kind::global_offset:
                    for (std::size_t i = 0; i < offset.size(); ++i) offset[i] += a.delta[i];
                    break;
                case Alteration::Kind::add_mode: {
                    const std::size_t new_id = modes.size();
                    modes.push_back(a.new_mode);
                    for (auto& row : trans) {
                        for (auto& edge : row) edge.prob *= 1.0 - a.entry_prob;
                        row.push_back({a.entry_prob, a.entry_shape, a.entry_duration});
                    }
                    // the new mode leaves uniformly towards the old ones
                    std::vector<TransitionSpec> row(new_id + 1);
                    for (std::size_t j = 0; j < new_id; ++j) {
                        row[j] = {1.0 / static_cast<double>(new_id), a.entry_shape,
                                  a.entry_duration};
                    }
                    trans.push_back(std::move(row));
                    break;
                }
            }
            ++next_alteration;
        }
    }

    int draw_destination(const std::vector<TransitionSpec>& row) {
        const double r = unit(rng);
        double acc = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            acc += row[j].prob;
            if (r < acc) return static_cast<int>(j);
        }
        return static_cast<int>(row.size() - 1);
    }

    Point draw_from_mode(const ModeSpec& m) {
        Point x(static_cast<std::size_t>(cfg.p));
        if (m.dist == Dist::normal) {
            for (int i = 0; i < cfg.p; ++i) {
                x[static_cast<std::size_t>(i)] =
                    m.mean[static_cast<std::size_t>(i)] +
                    m.stddev[static_cast<std::size_t>(i)] * gauss(rng);
            }
        } else {
            for (int i = 0; i < cfg.p; ++i) {
                const auto k = static_cast<std::size_t>(i);
                x[k] = m.low[k] + (m.high[k] - m.low[k]) * unit(rng);
            }
        }
        return x;
    }

    Point noise_around(const Point& center, const ModeSpec& m) {
        Point x(center);
        const Point s = m.spread();
        if (m.dist == Dist::normal) {
            for (int i = 0; i < cfg.p; ++i) x[static_cast<std::size_t>(i)] += s[static_cast<std::size_t>(i)] * gauss(rng);
        } else {
            for (int i = 0; i < cfg.p; ++i) {
                x[static_cast<std::size_t>(i)] +=
                    s[static_cast<std::size_t>(i)] * (2.0 * unit(rng) - 1.0);
            }
        }
        return x;
    }

    LabeledSample next(std::int64_t index) {
        apply_alterations(index);

        if (!in_transition && unit(rng) >= modes[static_cast<std::size_t>(mode)].dwell) {
            const int dest = draw_destination(trans[static_cast<std::size_t>(mode)]);
            if (dest != mode) {
                in_transition = true;
                t_from = mode;
                t_to = dest;
                t_step = 0;
                const TransitionSpec& edge =
                    trans[static_cast<std::size_t>(mode)][static_cast<std::size_t>(dest)];
                t_duration = edge.duration;
                t_shape = edge.shape;
            }
        }

        Point center;
        Point value;
        if (in_transition) {
            const double u = static_cast<double>(t_step + 1) / static_cast<double>(t_duration);
            const double w = shape_value(t_shape, u);
            const Point from = modes[static_cast<std::size_t>(t_from)].center();
            const Point to = modes[static_cast<std::size_t>(t_to)].center();
            center.resize(static_cast<std::size_t>(cfg.p));
            for (int i = 0; i < cfg.p; ++i) {
                const auto k = static_cast<std::size_t>(i);
                center[k] = from[k] + w * (to[k] - from[k]);
            }
            value = noise_around(center, modes[static_cast<std::size_t>(t_to)]);
            if (++t_step >= t_duration) {
                in_transition = false;
                mode = t_to;
            }
        } else {
            center = modes[static_cast<std::size_t>(mode)].center();
            value = draw_from_mode(modes[static_cast<std::size_t>(mode)]);
        }

        Label label = Label::normal;
        if (episode) {
            for (int i = 0; i < cfg.p; ++i) {
                value[static_cast<std::size_t>(i)] += cfg.type2.offset[static_cast<std::size_t>(i)];
            }
            label = Label::type2;
            episode = unit(rng) < cfg.type2.last;
        } else if (cfg.type2.appear > 0.0 && unit(rng) < cfg.type2.appear) {
            for (int i = 0; i < cfg.p; ++i) {
                value[static_cast<std::size_t>(i)] += cfg.type2.offset[static_cast<std::size_t>(i)];
            }
            label = Label::type2;
            episode = unit(rng) < cfg.type2.last;
        } else if (cfg.type1.prob > 0.0 && unit(rng) < cfg.type1.prob) {
            for (int i = 0; i < cfg.p; ++i) {
                value[static_cast<std::size_t>(i)] =
                    center[static_cast<std::size_t>(i)] +
                    (2.0 * unit(rng) - 1.0) * cfg.type1.halfwidth;
            }
            label = Label::type1;
        }

        for (int i = 0; i < cfg.p; ++i) {
            value[static_cast<std::size_t>(i)] += offset[static_cast<std::size_t>(i)];
        }
        return LabeledSample{std::move(value), index, label};
    }
};

}  // namespace

std::vector<LabeledSample> generate(const StreamConfig& config, std::int64_t n,
                                    std::uint64_t seed) {
    config.validate();
    if (n < 1) throw InputError("generate: n must be >= 1");
    Generator gen(config, seed);
    std::vector<LabeledSample> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t index = 0; index < n; ++index) out.push_back(gen.next(index));
    return out;
}

std::vector<LabeledSample> generate(const StreamConfig& config, std::int64_t n) {
    return generate(config, n, config.seed);
}

std::vector<LabeledSample> generate_two_disks(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double small_r = 1.0, large_r = 3.0;
    const double large_cx = 6.0;
    const double box_lo_x = -2.0, box_hi_x = 10.0, box_lo_y = -4.0, box_hi_y = 4.0;

    auto in_small = [&](double x, double y) { return x * x + y * y <= small_r * small_r; };
    auto in_large = [&](double x, double y) {
        const double dx = x - large_cx;
        return dx * dx + y * y <= large_r * large_r;
    };

    auto disk_point = [&](double cx, double r) {
        for (;;) {
            const double x = (2.0 * unit(rng) - 1.0) * r;
            const double y = (2.0 * unit(rng) - 1.0) * r;
            if (x * x + y * y <= r * r) return Point{cx + x, y};
        }
    };

    std::vector<LabeledSample> samples;
    samples.reserve(6050);
    for (int i = 0; i < 5000; ++i) samples.push_back({disk_point(0.0, small_r), 0, Label::normal});
    for (int i = 0; i < 1000; ++i) {
        samples.push_back({disk_point(large_cx, large_r), 0, Label::normal});
    }
    for (int i = 0; i < 50; ++i) {
        for (;;) {
            const double x = box_lo_x + (box_hi_x - box_lo_x) * unit(rng);
            const double y = box_lo_y + (box_hi_y - box_lo_y) * unit(rng);
            if (in_small(x, y) || in_large(x, y)) continue;
            samples.push_back({Point{x, y}, 0, Label::type1});
            break;
        }
    }
    std::shuffle(samples.begin(), samples.end(), rng);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i].index = static_cast<std::int64_t>(i);
    }
    return samples;
}

std::array<StreamConfig, 3> three_setups(std::uint64_t seed) {
    std::array<StreamConfig, 3> setups;

    {  // bivariate, one mode's mean shifts mid-stream
        StreamConfig& cfg = setups[0];
        cfg.p = 2;
        cfg.seed = seed;
        cfg.n = 200000;
        cfg.substreams = 10;
        cfg.modes = {
            ModeSpec{Dist::normal, {0.0, 0.0}, {1.0, 1.0}, {}, {}, 0.998},
            ModeSpec{Dist::normal, {10.0, 6.0}, {1.5, 1.0}, {}, {}, 0.998},
        };
        cfg.transitions = {
            {TransitionSpec{0.0, Shape::linear, 1}, TransitionSpec{1.0, Shape::linear, 100}},
            {TransitionSpec{1.0, Shape::logarithmic, 150}, TransitionSpec{0.0, Shape::linear, 1}},
        };
        cfg.type1 = {0.01, 12.0};
        cfg.type2 = {0.002, 0.7, {5.0, -5.0}};
        Alteration shift;
        shift.kind = Alteration::Kind::mean_shift;
        shift.trigger = 100000;
        shift.mode_id = 0;
        shift.delta = {5.0, 5.0};
        cfg.alterations = {shift};
    }

    {  // bivariate, a global offset hits every point mid-stream
        StreamConfig& cfg = setups[1];
        cfg.p = 2;
        cfg.seed = seed + 1;
        cfg.n = 200000;
        cfg.substreams = 10;
        cfg.modes = {
            ModeSpec{Dist::normal, {0.0, 0.0}, {1.0, 1.0}, {}, {}, 0.997},
            ModeSpec{Dist::uniform, {}, {}, {6.0, 2.0}, {10.0, 5.0}, 0.997},
        };
        cfg.transitions = {
            {TransitionSpec{0.0, Shape::linear, 1}, TransitionSpec{1.0, Shape::exponential, 80}},
            {TransitionSpec{1.0, Shape::linear, 120}, TransitionSpec{0.0, Shape::linear, 1}},
        };
        cfg.type1 = {0.01, 12.0};
        cfg.type2 = {0.002, 0.7, {-6.0, 6.0}};
        Alteration drift;
        drift.kind = Alteration::Kind::global_offset;
        drift.trigger = 100000;
        drift.delta = {5.0, 5.0};
        cfg.alterations = {drift};
    }

    {  // trivariate, a third mode appears mid-stream
        StreamConfig& cfg = setups[2];
        cfg.p = 3;
        cfg.seed = seed + 2;
        cfg.n = 200000;
        cfg.substreams = 10;
        cfg.modes = {
            ModeSpec{Dist::normal, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, {}, {}, 0.997},
            ModeSpec{Dist::normal, {8.0, 8.0, 8.0}, {1.0, 1.5, 1.0}, {}, {}, 0.997},
        };
        cfg.transitions = {
            {TransitionSpec{0.0, Shape::linear, 1},
             TransitionSpec{1.0, Shape::logarithmic, 100}},
            {TransitionSpec{1.0, Shape::exponential, 100}, TransitionSpec{0.0, Shape::linear, 1}},
        };
        cfg.type1 = {0.01, 14.0};
        cfg.type2 = {0.002, 0.6, {6.0, -6.0, 6.0}};
        Alteration grow;
        grow.kind = Alteration::Kind::add_mode;
        grow.trigger = 100000;
        grow.new_mode = ModeSpec{Dist::normal, {-8.0, 8.0, -8.0}, {1.0, 1.0, 1.0}, {}, {}, 0.995};
        grow.entry_prob = 0.05;
        grow.entry_shape = Shape::linear;
        grow.entry_duration = 50;
        cfg.alterations = {grow};
    }

    return setups;
}

}  // namespace cfstream
