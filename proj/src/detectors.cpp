#include "cfstream/detectors.hpp"

#include <istream>
#include <ostream>
#include <vector>

#include "cfstream/errors.hpp"
#include "cfstream/io_detail.hpp"

namespace cfstream {

namespace {

double compute_gamma(double c, int d, int p) {
    return c * std::pow(static_cast<double>(d), 1.5 * static_cast<double>(p));
}

void write_scaler(std::ostream& out, const InputScaler& scaler, bool enabled) {
    io::write_u8(out, enabled ? 1 : 0);
    io::write_u8(out, scaler.fitted() ? 1 : 0);
    io::write_u32(out, static_cast<std::uint32_t>(scaler.dimension()));
    for (std::size_t i = 0; i < scaler.dimension(); ++i) {
        io::write_f64(out, scaler.center()[i]);
        io::write_f64(out, scaler.halfwidth()[i]);
    }
}

std::pair<InputScaler, bool> read_scaler(std::istream& in) {
    const bool enabled = io::read_u8(in) != 0;
    const bool fitted = io::read_u8(in) != 0;
    const std::uint32_t p = io::read_u32(in);
    std::vector<double> center(p), halfwidth(p);
    for (std::uint32_t i = 0; i < p; ++i) {
        center[i] = io::read_f64(in);
        halfwidth[i] = io::read_f64(in);
    }
    InputScaler scaler;
    if (fitted) scaler = InputScaler::from_bounds(std::move(center), std::move(halfwidth));
    return {std::move(scaler), enabled};
}

}  // namespace

DyCF::DyCF(int p, int d, DyCFOptions opts)
    : moments_(MonomialBasis(p, d), opts.epsilon, opts.inverse_mode, opts.refresh_period),
      scale_inputs_(opts.scale_inputs),
      c_(opts.c) {
    if (d < 1) throw InputError("DyCF: degree d must be >= 1");
    if (!(opts.c > 0.0)) throw InputError("DyCF: c must be positive");
    gamma_ = compute_gamma(c_, d, p);
}

DyCF::DyCF(MomentModel moments, InputScaler scaler, double c, bool scale_inputs)
    : moments_(std::move(moments)),
      scaler_(std::move(scaler)),
      scale_inputs_(scale_inputs),
      c_(c) {
    if (moments_.degree() < 1) throw InputError("DyCF: degree d must be >= 1");
    if (!(c_ > 0.0)) throw InputError("DyCF: c must be positive");
    gamma_ = compute_gamma(c_, moments_.degree(), moments_.dimension());
}

void DyCF::set_c(double c) {
    if (!(c > 0.0)) throw InputError("DyCF: c must be positive");
    c_ = c;
    gamma_ = compute_gamma(c_, moments_.degree(), moments_.dimension());
}

Point DyCF::scaled(const Point& x) const {
    if (scale_inputs_ && scaler_.fitted()) return scaler_.apply(x);
    return x;
}

void DyCF::fit(std::span<const Point> samples) {
    if (scale_inputs_ && !scaler_.fitted()) scaler_ = InputScaler::fit(samples);
    if (scale_inputs_) {
        std::vector<Point> scaled_samples;
        scaled_samples.reserve(samples.size());
        for (const Point& x : samples) scaled_samples.push_back(scaler_.apply(x));
        moments_.fit(scaled_samples);
    } else {
        moments_.fit(samples);
    }
}

void DyCF::learn(const Point& x) { moments_.update(scaled(x)); }

double DyCF::score(const Point& x) const { return moments_.score_q(scaled(x)) / gamma_; }

void DyCF::save(std::ostream& out) const {
    io::write_magic(out, "CFDF");
    io::write_u32(out, 1);
    io::write_f64(out, c_);
    write_scaler(out, scaler_, scale_inputs_);
    moments_.save(out);
}

DyCF DyCF::load(std::istream& in, InverseMode mode, int refresh_period) {
    io::expect_magic(in, "CFDF");
    const std::uint32_t version = io::read_u32(in);
    if (version != 1) throw IoError("DyCF::load: unsupported snapshot version");
    const double c = io::read_f64(in);
    auto [scaler, enabled] = read_scaler(in);
    MomentModel moments = MomentModel::load(in, mode, refresh_period);
    return DyCF(std::move(moments), std::move(scaler), c, enabled);
}

DyCG::DyCG(int p, DyCGOptions opts)
    : low_(p, opts.d_min,
           DyCFOptions{opts.epsilon, opts.inverse_mode, opts.refresh_period, opts.c, false}),
      high_(p, opts.d_max,
            DyCFOptions{opts.epsilon, opts.inverse_mode, opts.refresh_period, opts.c, false}),
      scale_inputs_(opts.scale_inputs) {
    if (opts.d_min < 1) throw InputError("DyCG: d_min must be >= 1");
    if (opts.d_min >= opts.d_max) throw InputError("DyCG: d_min must be smaller than d_max");
}

DyCG::DyCG(DyCF low, DyCF high, InputScaler scaler, bool scale_inputs)
    : low_(std::move(low)),
      high_(std::move(high)),
      scaler_(std::move(scaler)),
      scale_inputs_(scale_inputs) {}

Point DyCG::scaled(const Point& x) const {
    if (scale_inputs_ && scaler_.fitted()) return scaler_.apply(x);
    return x;
}

void DyCG::check_counts() const {
    if (low_.count() != high_.count()) {
        throw ContractError("DyCG sub-models have unequal sample counts (" +
                            std::to_string(low_.count()) + " vs " +
                            std::to_string(high_.count()) + ")");
    }
}

void DyCG::fit(std::span<const Point> samples) {
    // One shared input map, fitted once, so the two scores stay comparable.
    if (scale_inputs_ && !scaler_.fitted()) scaler_ = InputScaler::fit(samples);
    std::vector<Point> scaled_samples;
    scaled_samples.reserve(samples.size());
    for (const Point& x : samples) scaled_samples.push_back(scaled(x));
    low_.fit(scaled_samples);
    high_.fit(scaled_samples);
}

void DyCG::learn(const Point& x) {
    const Point z = scaled(x);
    low_.learn(z);
    high_.learn(z);
}

double DyCG::score(const Point& x) const {
    check_counts();
    const Point z = scaled(x);
    const double denom = static_cast<double>(high_.degree() - low_.degree());
    return (high_.score(z) - low_.score(z)) / denom;
}

void DyCG::save(std::ostream& out) const {
    io::write_magic(out, "CFDG");
    io::write_u32(out, 1);
    io::write_u32(out, static_cast<std::uint32_t>(low_.degree()));
    io::write_u32(out, static_cast<std::uint32_t>(high_.degree()));
    io::write_f64(out, low_.c());
    write_scaler(out, scaler_, scale_inputs_);
    low_.moments().save(out);
    high_.moments().save(out);
}

DyCG DyCG::load(std::istream& in, InverseMode mode, int refresh_period) {
    io::expect_magic(in, "CFDG");
    const std::uint32_t version = io::read_u32(in);
    if (version != 1) throw IoError("DyCG::load: unsupported snapshot version");
    io::read_u32(in);  // d_min, implied by the embedded moment snapshots
    io::read_u32(in);  // d_max
    const double c = io::read_f64(in);
    auto [scaler, enabled] = read_scaler(in);
    MomentModel low = MomentModel::load(in, mode, refresh_period);
    MomentModel high = MomentModel::load(in, mode, refresh_period);
    DyCG model(DyCF(std::move(low), InputScaler(), c, false),
               DyCF(std::move(high), InputScaler(), c, false), std::move(scaler), enabled);
    model.check_counts();
    if (model.low_.degree() >= model.high_.degree()) {
        throw IoError("DyCG::load: snapshot degrees are not increasing");
    }
    return model;
}

}  // namespace cfstream
