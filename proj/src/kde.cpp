#include "cfstream/kde.hpp"

#include <cmath>
#include <numbers>

#include "cfstream/errors.hpp"

namespace cfstream {

namespace {

double unit_ball_volume(int p) {
    return std::pow(std::numbers::pi, 0.5 * p) / std::tgamma(0.5 * p + 1.0);
}

}  // namespace

KdeWindow::KdeWindow(int p, KdeOptions opts) : p_(p), opts_(std::move(opts)) {
    if (p_ < 1) throw InputError("KdeWindow: dimension p must be >= 1");
    if (opts_.capacity < 1) throw InputError("KdeWindow: window capacity must be >= 1");
    if (!(opts_.sigma_floor > 0.0)) throw InputError("KdeWindow: sigma_floor must be positive");
    if (opts_.bandwidth) {
        const Eigen::MatrixXd& h = *opts_.bandwidth;
        if (h.rows() != p_ || h.cols() != p_) {
            throw InputError("KdeWindow: fixed bandwidth must be p x p");
        }
        fixed_llt_.compute(h);
        if (fixed_llt_.info() != Eigen::Success) {
            throw InputError("KdeWindow: fixed bandwidth must be symmetric positive definite");
        }
        inv_sqrt_det_ = 1.0 / fixed_llt_.matrixL().determinant();
    }
    kernel_norm_ = opts_.kernel == Kernel::gaussian
                       ? std::pow(2.0 * std::numbers::pi, -0.5 * p_)
                       : (p_ + 2.0) / (2.0 * unit_ball_volume(p_));
}

void KdeWindow::fit(std::span<const Point> samples) {
    for (const Point& x : samples) learn(x);
}

void KdeWindow::learn(const Point& x) {
    if (static_cast<int>(x.size()) != p_) {
        throw InputError("KdeWindow::learn: point has dimension " + std::to_string(x.size()) +
                         ", window expects " + std::to_string(p_));
    }
    buffer_.push_back(x);
    if (buffer_.size() > opts_.capacity) buffer_.pop_front();
    if (!opts_.bandwidth) refresh_bandwidth();
}

void KdeWindow::refresh_bandwidth() {
    const double m = static_cast<double>(buffer_.size());
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(p_);
    for (const Point& x : buffer_) {
        for (int i = 0; i < p_; ++i) mean[i] += x[static_cast<std::size_t>(i)];
    }
    mean /= m;
    Eigen::VectorXd var = Eigen::VectorXd::Zero(p_);
    for (const Point& x : buffer_) {
        for (int i = 0; i < p_; ++i) {
            const double d = x[static_cast<std::size_t>(i)] - mean[i];
            var[i] += d * d;
        }
    }
    if (buffer_.size() > 1) var /= (m - 1.0);
    const double scott = std::pow(m, -1.0 / (p_ + 4.0));
    h_diag_.resize(p_);
    double log_det = 0.0;
    for (int i = 0; i < p_; ++i) {
        const double sigma = std::max(std::sqrt(var[i]), opts_.sigma_floor);
        const double h = sigma * scott;
        h_diag_[i] = h * h;
        log_det += std::log(h_diag_[i]);
    }
    inv_sqrt_det_ = std::exp(-0.5 * log_det);
}

double KdeWindow::kernel_value(double squared_norm) const {
    if (opts_.kernel == Kernel::gaussian) {
        return kernel_norm_ * std::exp(-0.5 * squared_norm);
    }
    return squared_norm < 1.0 ? kernel_norm_ * (1.0 - squared_norm) : 0.0;
}

double KdeWindow::density(const Point& x) const {
    if (buffer_.empty()) throw NotFittedError("kde_density: window is empty");
    if (static_cast<int>(x.size()) != p_) {
        throw InputError("kde_density: point has dimension " + std::to_string(x.size()) +
                         ", window expects " + std::to_string(p_));
    }
    double sum = 0.0;
    if (!opts_.bandwidth) {
        for (const Point& xi : buffer_) {
            double q = 0.0;
            for (int i = 0; i < p_; ++i) {
                const double d = x[static_cast<std::size_t>(i)] - xi[static_cast<std::size_t>(i)];
                q += d * d / h_diag_[i];
            }
            sum += kernel_value(q);
        }
    } else {
        Eigen::VectorXd u(p_);
        for (const Point& xi : buffer_) {
            for (int i = 0; i < p_; ++i) {
                u[i] = x[static_cast<std::size_t>(i)] - xi[static_cast<std::size_t>(i)];
            }
            // q = u^T H^{-1} u via the triangular factor of H
            const Eigen::VectorXd t = fixed_llt_.matrixL().solve(u);
            sum += kernel_value(t.squaredNorm());
        }
    }
    return inv_sqrt_det_ * sum / static_cast<double>(buffer_.size());
}

Eigen::MatrixXd KdeWindow::bandwidth() const {
    if (opts_.bandwidth) return *opts_.bandwidth;
    if (buffer_.empty()) throw NotFittedError("bandwidth: window is empty");
    return h_diag_.asDiagonal();
}

}  // namespace cfstream
