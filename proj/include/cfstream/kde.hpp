#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <deque>
#include <optional>

#include "cfstream/detectors.hpp"

namespace cfstream {

enum class Kernel { gaussian, epanechnikov };

struct KdeOptions {
    std::size_t capacity = 1000;  // sliding window size W
    Kernel kernel = Kernel::gaussian;
    // Fixed SPD bandwidth matrix H; unset means automatic (Scott's rule):
    // diagonal H with H_ii = (sigma_i * m^{-1/(p+4)})^2 recomputed from the
    // buffered points after every learn.
    std::optional<Eigen::MatrixXd> bandwidth;
    double sigma_floor = 1e-6;  // keeps H positive definite on constant streams
};

// Sliding-window multivariate kernel density estimator. density() averages
// K_H(x - x_i) = |H|^{-1/2} K(H^{-1/2}(x - x_i)) over the <= W buffered
// points; eviction is strictly FIFO. The outlier score is the negated
// density so that higher = more outlying, like the other detectors.
class KdeWindow final : public StreamDetector {
public:
    explicit KdeWindow(int p, KdeOptions opts = {});

    void fit(std::span<const Point> samples) override;
    void learn(const Point& x) override;
    double density(const Point& x) const;
    double score(const Point& x) const override { return -density(x); }
    std::optional<double> threshold() const override { return std::nullopt; }
    int dimension() const override { return p_; }
    std::string name() const override { return "kde"; }

    std::size_t size() const noexcept { return buffer_.size(); }
    std::size_t capacity() const noexcept { return opts_.capacity; }
    const std::deque<Point>& buffer() const noexcept { return buffer_; }
    Eigen::MatrixXd bandwidth() const;

private:
    void refresh_bandwidth();
    double kernel_value(double squared_norm) const;

    int p_;
    KdeOptions opts_;
    std::deque<Point> buffer_;
    Eigen::VectorXd h_diag_;                  // automatic mode: diagonal of H
    Eigen::LLT<Eigen::MatrixXd> fixed_llt_;   // fixed mode: factor of H
    double inv_sqrt_det_ = 0.0;               // |H|^{-1/2}
    double kernel_norm_;                      // kernel normalization constant
};

}  // namespace cfstream
