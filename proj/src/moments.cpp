#include "cfstream/moments.hpp"

#include <Eigen/Eigenvalues>
#include <istream>
#include <ostream>
#include <string>

#include "cfstream/errors.hpp"
#include "cfstream/io_detail.hpp"

namespace cfstream {

bool sherman_morrison_symmetric(Eigen::MatrixXd& a_inv, const Eigen::VectorXd& v, double tol) {
    const Eigen::VectorXd w = a_inv * v;
    const double denom = 1.0 + v.dot(w);
    if (!(denom > tol)) return false;  // also rejects NaN
    a_inv.noalias() -= (w * w.transpose()) / denom;
    return true;
}

MomentModel::MomentModel(MonomialBasis basis, double epsilon, InverseMode mode, int refresh_period)
    : basis_(std::move(basis)), epsilon_(epsilon), mode_(mode), refresh_period_(refresh_period) {
    if (epsilon_ < 0.0) throw InputError("MomentModel: epsilon must be non-negative");
    if (refresh_period_ < 1) throw InputError("MomentModel: refresh_period must be >= 1");
    const auto s = static_cast<Eigen::Index>(basis_.size());
    matrix_.setZero(s, s);
}

MomentModel MomentModel::fit_batch(std::span<const Point> samples, MonomialBasis basis,
                                   double epsilon, InverseMode mode, int refresh_period) {
    MomentModel model(std::move(basis), epsilon, mode, refresh_period);
    model.fit(samples);
    return model;
}

Eigen::VectorXd MomentModel::eval_vec(const Point& x) const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(basis_.size()));
    basis_.eval(x, std::span<double>(v.data(), basis_.size()));
    return v;
}

void MomentModel::fit(std::span<const Point> samples) {
    if (samples.empty()) throw InputError("fit_batch: sample set is empty");
    const auto s = static_cast<Eigen::Index>(basis_.size());
    matrix_.setZero(s, s);
    Eigen::VectorXd v(s);
    for (const Point& x : samples) {
        basis_.eval(x, std::span<double>(v.data(), basis_.size()));
        matrix_.selfadjointView<Eigen::Lower>().rankUpdate(v, 1.0);
    }
    matrix_ /= static_cast<double>(samples.size());
    matrix_.triangularView<Eigen::StrictlyUpper>() = matrix_.transpose();
    n_ = static_cast<std::int64_t>(samples.size());
    tracked_inv_.resize(0, 0);
    refactorize();
}

void MomentModel::accumulate(const Eigen::VectorXd& v) {
    const double n = static_cast<double>(n_);
    if (n_ == 0) {
        matrix_.noalias() = v * v.transpose();
    } else {
        matrix_ *= n / (n + 1.0);
        matrix_.noalias() += (v * v.transpose()) / (n + 1.0);
    }
    ++n_;
}

void MomentModel::refactorize() {
    const auto s = static_cast<Eigen::Index>(basis_.size());
    double ridge = epsilon_ * matrix_.trace() / static_cast<double>(s);
    for (int attempt = 0; attempt < 2; ++attempt) {
        Eigen::MatrixXd regularized = matrix_;
        if (ridge > 0.0) regularized.diagonal().array() += ridge;
        llt_.compute(regularized);
        if (llt_.info() == Eigen::Success) {
            factorized_ = true;
            since_refresh_ = 0;
            if (mode_ == InverseMode::sherman_morrison || tracked_inv_.size() > 0) {
                tracked_inv_ = llt_.solve(Eigen::MatrixXd::Identity(s, s));
            }
            return;
        }
        if (ridge == 0.0) break;  // exact inversion was requested; do not mask failure
        ridge *= 10.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix_, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    throw SingularityError("moment matrix factorization failed at n=" + std::to_string(n_) +
                               ", s=" + std::to_string(basis_.size()) +
                               " (smallest eigenvalue estimate " + std::to_string(lmin) + ")",
                           lmin);
}

void MomentModel::ensure_tracked_inverse() {
    if (tracked_inv_.size() > 0) return;
    const auto s = static_cast<Eigen::Index>(basis_.size());
    tracked_inv_ = llt_.solve(Eigen::MatrixXd::Identity(s, s));
}

bool MomentModel::apply_sm_update(const Eigen::VectorXd& v) {
    ensure_tracked_inverse();
    // The stored inverse tracks M_n; the Sherman-Morrison step applies to
    // A = n * M_n with A + v v^T = (n+1) * M_{n+1}, so
    //   M_{n+1}^{-1} = (n+1) * [ B/n - (B v)(B v)^T / (n^2 * (1 + v^T B v / n)) ]
    // with B the tracked inverse.
    const double n = static_cast<double>(n_);
    const Eigen::VectorXd w = tracked_inv_ * v;
    const double denom = 1.0 + v.dot(w) / n;
    if (!(denom > kSmDenominatorTol)) {
        accumulate(v);
        refactorize();  // fallback requested by the ill-conditioned denominator
        return false;
    }
    accumulate(v);
    tracked_inv_ *= (n + 1.0) / n;
    tracked_inv_.noalias() -= (w * w.transpose()) * ((n + 1.0) / (n * n * denom));
    if (mode_ == InverseMode::sherman_morrison && ++since_refresh_ >= refresh_period_) {
        refactorize();
    }
    return true;
}

void MomentModel::update(const Point& x) {
    const Eigen::VectorXd v = eval_vec(x);
    if (mode_ == InverseMode::sherman_morrison && n_ > 0 && factorized_) {
        apply_sm_update(v);
        return;
    }
    accumulate(v);
    refactorize();
}

bool MomentModel::rank_one_inverse_update(const Point& x) {
    if (n_ < 1 || !factorized_) {
        throw NotFittedError("rank_one_inverse_update: model must be fitted first");
    }
    return apply_sm_update(eval_vec(x));
}

double MomentModel::score_q(const Point& x) const {
    if (n_ < 1) throw NotFittedError("score_q: model has no samples");
    const Eigen::VectorXd v = eval_vec(x);
    if (tracked_inv_.size() > 0) return v.dot(tracked_inv_ * v);
    return v.dot(llt_.solve(v));
}

Eigen::MatrixXd MomentModel::inverse() const {
    if (n_ < 1) throw NotFittedError("inverse: model has no samples");
    if (tracked_inv_.size() > 0) return tracked_inv_;
    const auto s = static_cast<Eigen::Index>(basis_.size());
    return llt_.solve(Eigen::MatrixXd::Identity(s, s));
}

void MomentModel::save(std::ostream& out) const {
    io::write_magic(out, "CFMM");
    io::write_u32(out, 1);  // version
    io::write_u32(out, static_cast<std::uint32_t>(basis_.dimension()));
    io::write_u32(out, static_cast<std::uint32_t>(basis_.degree()));
    io::write_i64(out, n_);
    io::write_f64(out, epsilon_);
    const auto s = static_cast<Eigen::Index>(basis_.size());
    for (Eigen::Index r = 0; r < s; ++r) {
        for (Eigen::Index c = 0; c <= r; ++c) io::write_f64(out, matrix_(r, c));
    }
    if (!out) throw IoError("MomentModel::save: write failed");
}

MomentModel MomentModel::load(std::istream& in, InverseMode mode, int refresh_period) {
    io::expect_magic(in, "CFMM");
    const std::uint32_t version = io::read_u32(in);
    if (version != 1) {
        throw IoError("MomentModel::load: unsupported snapshot version " + std::to_string(version));
    }
    const int p = static_cast<int>(io::read_u32(in));
    const int d = static_cast<int>(io::read_u32(in));
    const std::int64_t n = io::read_i64(in);
    const double epsilon = io::read_f64(in);
    MomentModel model(MonomialBasis(p, d), epsilon, mode, refresh_period);
    const auto s = static_cast<Eigen::Index>(model.basis_.size());
    for (Eigen::Index r = 0; r < s; ++r) {
        for (Eigen::Index c = 0; c <= r; ++c) {
            const double value = io::read_f64(in);
            model.matrix_(r, c) = value;
            model.matrix_(c, r) = value;
        }
    }
    model.n_ = n;
    if (n >= 1) model.refactorize();
    return model;
}

}  // namespace cfstream
