#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cfstream/basis.hpp"
#include "cfstream/scaler.hpp"

namespace cfstream {

enum class InverseMode {
    direct,           // refactorize (M + ridge*I) after every update
    sherman_morrison  // rank-one inverse updates, direct refresh every refresh_period
};

// Applies the symmetric Sherman-Morrison step: replaces a_inv, assumed to
// hold A^{-1}, with (A + v v^T)^{-1}. Returns false and leaves a_inv
// untouched when the denominator 1 + v^T A^{-1} v falls below tol, which
// signals that a direct refresh is needed instead.
bool sherman_morrison_symmetric(Eigen::MatrixXd& a_inv, const Eigen::VectorXd& v,
                                double tol = 1e-12);

// Running empirical moment matrix of the monomial vector together with its
// regularized inverse and the inverse-Christoffel evaluation
//
//   Q(x) = v_d(x)^T (M + ridge*I)^{-1} v_d(x),
//
// where M is the arithmetic mean of v_d(x_i) v_d(x_i)^T over every ingested
// sample. The ridge is relative to the mean diagonal: ridge =
// epsilon * trace(M) / s, so epsilon = 0 requests exact inversion and fails
// loudly on singular matrices.
//
// One update costs O(s^2) for the matrix plus the inverse refresh: a fresh
// SPD factorization in direct mode, a rank-one inverse update in
// sherman_morrison mode (with a direct refresh every refresh_period updates
// to contain drift).
//
// Concurrency: single writer. update()/fit() require exclusive access;
// score_q() is read-only and safe from many readers between writes.
class MomentModel {
public:
    static constexpr double kDefaultEpsilon = 1e-10;
    static constexpr double kSmDenominatorTol = 1e-12;

    explicit MomentModel(MonomialBasis basis, double epsilon = kDefaultEpsilon,
                         InverseMode mode = InverseMode::direct, int refresh_period = 100);

    static MomentModel fit_batch(std::span<const Point> samples, MonomialBasis basis,
                                 double epsilon = kDefaultEpsilon,
                                 InverseMode mode = InverseMode::direct, int refresh_period = 100);

    // Replaces the model state with the batch fit of `samples`.
    void fit(std::span<const Point> samples);

    // Mean-weighted rank-one update: M <- (n*M + v v^T) / (n+1), n <- n+1.
    // The inverse is refreshed according to the inverse mode.
    void update(const Point& x);

    // Explicit Sherman-Morrison update of matrix, count and tracked inverse.
    // Returns false when the denominator guard tripped and the model fell
    // back to a direct refresh (state stays consistent either way).
    bool rank_one_inverse_update(const Point& x);

    // v_d(x)^T (M + ridge*I)^{-1} v_d(x); strictly positive.
    double score_q(const Point& x) const;

    std::int64_t count() const noexcept { return n_; }
    int dimension() const noexcept { return basis_.dimension(); }
    int degree() const noexcept { return basis_.degree(); }
    std::size_t basis_count() const noexcept { return basis_.size(); }
    const MonomialBasis& basis() const noexcept { return basis_; }
    double epsilon() const noexcept { return epsilon_; }
    InverseMode inverse_mode() const noexcept { return mode_; }
    int refresh_period() const noexcept { return refresh_period_; }

    // Fewer samples than monomials: scoring is permitted (the ridge keeps
    // the matrix invertible) but statistically under-determined.
    bool under_determined() const noexcept {
        return n_ < static_cast<std::int64_t>(basis_.size());
    }

    const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
    Eigen::MatrixXd inverse() const;

    // Snapshot: little-endian binary record of (p, d, n, epsilon, lower
    // triangle of M row-major); layout in docs/formats.md. The inverse is
    // re-derived on load, and the byte size depends only on (p, d).
    void save(std::ostream& out) const;
    static MomentModel load(std::istream& in, InverseMode mode = InverseMode::direct,
                            int refresh_period = 100);

private:
    Eigen::VectorXd eval_vec(const Point& x) const;
    void accumulate(const Eigen::VectorXd& v);
    void refactorize();
    void ensure_tracked_inverse();
    bool apply_sm_update(const Eigen::VectorXd& v);

    MonomialBasis basis_;
    double epsilon_;
    InverseMode mode_;
    int refresh_period_;
    std::int64_t n_ = 0;
    Eigen::MatrixXd matrix_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    bool factorized_ = false;
    Eigen::MatrixXd tracked_inv_;  // maintained across SM updates; empty otherwise
    int since_refresh_ = 0;
};

}  // namespace cfstream
