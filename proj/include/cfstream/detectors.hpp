#pragma once

#include <cmath>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "cfstream/moments.hpp"
#include "cfstream/scaler.hpp"

namespace cfstream {

// Uniform streaming-detector contract: batch fit on an initialization set,
// then score first and learn second for every arriving point. Higher score
// means more outlying. threshold() is the canonical decision boundary for
// detectors that define one (score >= threshold -> outlier).
//
// Concurrency: single writer. fit()/learn() require exclusive access;
// score() is read-only and safe from concurrent readers between writes.
class StreamDetector {
public:
    virtual ~StreamDetector() = default;
    virtual void fit(std::span<const Point> samples) = 0;
    virtual double score(const Point& x) const = 0;
    virtual void learn(const Point& x) = 0;
    virtual std::optional<double> threshold() const = 0;
    virtual int dimension() const = 0;
    virtual std::string name() const = 0;
};

// Decision rules; the boundary is outlying in both cases.
inline bool dycf_decide(double score) { return score >= 1.0; }
inline bool dycg_decide(double score) { return score >= 0.0; }

struct DyCFOptions {
    double epsilon = MomentModel::kDefaultEpsilon;
    InverseMode inverse_mode = InverseMode::direct;
    int refresh_period = 100;
    double c = 1.0;           // level-set scale; gamma = c * d^{3p/2}
    bool scale_inputs = true; // map inputs to [-1,1]^p, fitted on the init set
};

// Single-degree Christoffel detector. Scores are Q(x) / gamma with
// gamma = c * d^{3p/2}; a point is outlying when the score reaches 1.
// Model state is the s x s moment matrix pair plus scalars, independent of
// how many points were learned.
class DyCF final : public StreamDetector {
public:
    DyCF(int p, int d, DyCFOptions opts = {});
    DyCF(MomentModel moments, InputScaler scaler, double c, bool scale_inputs);

    void fit(std::span<const Point> samples) override;
    void learn(const Point& x) override;
    double score(const Point& x) const override;
    bool is_outlier(const Point& x) const { return dycf_decide(score(x)); }
    std::optional<double> threshold() const override { return 1.0; }
    int dimension() const override { return moments_.dimension(); }
    std::string name() const override { return "dycf"; }

    int degree() const noexcept { return moments_.degree(); }
    double c() const noexcept { return c_; }
    void set_c(double c);
    double gamma() const noexcept { return gamma_; }
    std::int64_t count() const noexcept { return moments_.count(); }
    bool under_determined() const noexcept { return moments_.under_determined(); }
    const MomentModel& moments() const noexcept { return moments_; }
    const InputScaler& scaler() const noexcept { return scaler_; }

    void save(std::ostream& out) const;
    static DyCF load(std::istream& in, InverseMode mode = InverseMode::direct,
                     int refresh_period = 100);

private:
    Point scaled(const Point& x) const;

    MomentModel moments_;
    InputScaler scaler_;
    bool scale_inputs_;
    double c_;
    double gamma_;
};

struct DyCGOptions {
    int d_min = 2;
    int d_max = 6;
    double epsilon = MomentModel::kDefaultEpsilon;
    InverseMode inverse_mode = InverseMode::direct;
    int refresh_period = 100;
    double c = 1.0;
    bool scale_inputs = true;
};

// Tuning-free dual-degree growth detector. Maintains two DyCF models over
// one shared input map and scores the normalized growth
//   (S_dmax(x) - S_dmin(x)) / (d_max - d_min);
// a point is outlying when the growth is >= 0. Both sub-models always see
// the identical sample sequence.
class DyCG final : public StreamDetector {
public:
    explicit DyCG(int p, DyCGOptions opts = {});

    void fit(std::span<const Point> samples) override;
    void learn(const Point& x) override;
    double score(const Point& x) const override;
    bool is_outlier(const Point& x) const { return dycg_decide(score(x)); }
    std::optional<double> threshold() const override { return 0.0; }
    int dimension() const override { return low_.dimension(); }
    std::string name() const override { return "dycg"; }

    int d_min() const noexcept { return low_.degree(); }
    int d_max() const noexcept { return high_.degree(); }
    std::int64_t count() const noexcept { return low_.count(); }
    const DyCF& low() const noexcept { return low_; }
    const DyCF& high() const noexcept { return high_; }
    const InputScaler& scaler() const noexcept { return scaler_; }

    void save(std::ostream& out) const;
    static DyCG load(std::istream& in, InverseMode mode = InverseMode::direct,
                     int refresh_period = 100);

private:
    DyCG(DyCF low, DyCF high, InputScaler scaler, bool scale_inputs);
    Point scaled(const Point& x) const;
    void check_counts() const;

    DyCF low_;   // degree d_min, scaling handled at this level
    DyCF high_;  // degree d_max
    InputScaler scaler_;
    bool scale_inputs_;
};

}  // namespace cfstream
