#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfstream/config.hpp"
#include "cfstream/scaler.hpp"

namespace cfstream {

enum class Label : std::uint8_t { normal = 0, type1 = 1, type2 = 2 };

std::string label_name(Label label);
Label label_from_name(const std::string& name);

struct LabeledSample {
    Point x;
    std::int64_t index = 0;
    std::optional<Label> label;  // absent on unlabeled real data

    friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

enum class Dist : std::uint8_t { normal, uniform };

struct ModeSpec {
    Dist dist = Dist::normal;
    std::vector<double> mean, stddev;  // normal
    std::vector<double> low, high;     // uniform
    double dwell = 0.99;               // per-point probability of staying put

    Point center() const;
    Point spread() const;  // stddev, or (high-low)/2 for uniform

    friend bool operator==(const ModeSpec&, const ModeSpec&) = default;
};

enum class Shape : std::uint8_t { linear, logarithmic, exponential };

// Normalized transition curve: 0 -> 0, 1 -> 1; the mode-center path follows
// it over the transition's duration.
double shape_value(Shape shape, double u);

struct TransitionSpec {
    double prob = 0.0;
    Shape shape = Shape::linear;
    int duration = 1;  // points spent between the two mode centers

    friend bool operator==(const TransitionSpec&, const TransitionSpec&) = default;
};

struct Type1Spec {
    double prob = 0.0;       // per-point occurrence probability
    double halfwidth = 0.0;  // uniform envelope half-width around the current center

    friend bool operator==(const Type1Spec&, const Type1Spec&) = default;
};

struct Type2Spec {
    double appear = 0.0;  // probability of starting an episode
    double last = 0.0;    // probability of the episode surviving one more point
    std::vector<double> offset;

    friend bool operator==(const Type2Spec&, const Type2Spec&) = default;
};

struct Alteration {
    enum class Kind : std::uint8_t { mean_shift, global_offset, add_mode };

    Kind kind = Kind::global_offset;
    std::int64_t trigger = 0;
    int mode_id = 0;            // mean_shift target
    std::vector<double> delta;  // mean_shift / global_offset
    ModeSpec new_mode;          // add_mode
    double entry_prob = 0.1;    // add_mode: destination mass redirected to the new mode
    Shape entry_shape = Shape::linear;
    int entry_duration = 50;

    friend bool operator==(const Alteration&, const Alteration&) = default;
};

// Markov-chain stream specification. Transition rows are destination
// probabilities drawn when a mode departure fires (a self-destination is a
// no-op); rows must sum to 1, and a mode with no outgoing entries gets an
// implicit self-row. See docs/formats.md for the file grammar.
struct StreamConfig {
    int p = 1;
    std::uint64_t seed = 0;
    std::int64_t n = 0;   // default point count; CLI --n overrides
    int substreams = 10;  // default harness split
    std::vector<ModeSpec> modes;
    std::vector<std::vector<TransitionSpec>> transitions;  // [from][to]
    Type1Spec type1;
    Type2Spec type2;
    std::vector<Alteration> alterations;

    void validate() const;  // ConfigError naming the offending field

    static StreamConfig from_file(const std::string& path);
    static StreamConfig from_config(const ConfigFile& cfg);

    friend bool operator==(const StreamConfig&, const StreamConfig&) = default;
};

// Deterministic given (config, n, seed): equal inputs give bitwise-equal
// output. Labels mark injected type-I/type-II points; everything else,
// transitions included, is labeled normal.
std::vector<LabeledSample> generate(const StreamConfig& config, std::int64_t n,
                                    std::uint64_t seed);
std::vector<LabeledSample> generate(const StreamConfig& config, std::int64_t n);

// Static two-disks dataset: 5000 points uniform in the dense unit disk at
// the origin, 1000 uniform in the sparse radius-3 disk at (6, 0), and 50
// type1 points uniform over the enclosing box [-2,10]x[-4,4] minus the two
// disks. Emission order is a seeded shuffle of all 6050 points.
std::vector<LabeledSample> generate_two_disks(std::uint64_t seed);

// The three shipped synthetic setups (also available as files under
// configs/): two bivariate streams and one trivariate, each with one
// mid-stream behavioral alteration (mean shift / global offset / new mode)
// and sized as 10 sub-streams of 20k points. Setup k gets seed `seed + k`.
std::array<StreamConfig, 3> three_setups(std::uint64_t seed);

}  // namespace cfstream
