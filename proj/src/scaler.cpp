#include "cfstream/scaler.hpp"

#include <algorithm>
#include <string>

#include "cfstream/errors.hpp"

namespace cfstream {

InputScaler InputScaler::fit(std::span<const Point> points) {
    if (points.empty()) throw InputError("InputScaler::fit: empty initialization set");
    const std::size_t p = points.front().size();
    std::vector<double> lo(p), hi(p);
    lo = points.front();
    hi = points.front();
    for (const Point& x : points) {
        if (x.size() != p) throw InputError("InputScaler::fit: inconsistent point dimensions");
        for (std::size_t i = 0; i < p; ++i) {
            lo[i] = std::min(lo[i], x[i]);
            hi[i] = std::max(hi[i], x[i]);
        }
    }
    InputScaler s;
    s.center_.resize(p);
    s.halfwidth_.resize(p);
    for (std::size_t i = 0; i < p; ++i) {
        s.center_[i] = 0.5 * (lo[i] + hi[i]);
        // constant coordinates map to 0 instead of dividing by zero
        s.halfwidth_[i] = std::max(0.5 * (hi[i] - lo[i]), 1e-12);
    }
    return s;
}

InputScaler InputScaler::from_bounds(std::vector<double> center, std::vector<double> halfwidth) {
    if (center.size() != halfwidth.size()) {
        throw InputError("InputScaler::from_bounds: center/halfwidth size mismatch");
    }
    InputScaler s;
    s.center_ = std::move(center);
    s.halfwidth_ = std::move(halfwidth);
    return s;
}

void InputScaler::apply(std::span<const double> x, std::span<double> out) const {
    if (x.size() != out.size()) throw InputError("InputScaler::apply: size mismatch");
    if (!fitted()) {
        std::copy(x.begin(), x.end(), out.begin());
        return;
    }
    if (x.size() != center_.size()) {
        throw InputError("InputScaler::apply: point has dimension " + std::to_string(x.size()) +
                         ", scaler expects " + std::to_string(center_.size()));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = (x[i] - center_[i]) / halfwidth_[i];
    }
}

Point InputScaler::apply(std::span<const double> x) const {
    Point out(x.size());
    apply(x, out);
    return out;
}

}  // namespace cfstream
