#pragma once

#include <span>
#include <vector>

namespace cfstream {

using Point = std::vector<double>;

// Per-coordinate affine map onto [-1, 1], fitted from the min/max of an
// initialization set and frozen afterwards. Points outside the fitted range
// simply map outside [-1, 1]; the map is never refitted mid-stream, since
// that would silently change the measure the moments summarize.
class InputScaler {
public:
    InputScaler() = default;  // identity until fitted

    static InputScaler fit(std::span<const Point> points);
    static InputScaler from_bounds(std::vector<double> center, std::vector<double> halfwidth);

    bool fitted() const noexcept { return !center_.empty(); }
    std::size_t dimension() const noexcept { return center_.size(); }

    void apply(std::span<const double> x, std::span<double> out) const;
    Point apply(std::span<const double> x) const;

    const std::vector<double>& center() const noexcept { return center_; }
    const std::vector<double>& halfwidth() const noexcept { return halfwidth_; }

private:
    std::vector<double> center_;
    std::vector<double> halfwidth_;
};

}  // namespace cfstream
