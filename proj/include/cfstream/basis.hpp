#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cfstream {

// Exponent vector of one monomial: exponents[i] is the power of X_{i+1}.
using MultiIndex = std::vector<int>;

// Number of p-variate monomials of total degree <= d, i.e. binomial(p+d, d).
// Throws SizeError when the count overflows 64 bits (infeasible (p, d)).
std::uint64_t basis_size(int p, int d);

// Ordered set of all p-variate multi-indices of total degree <= d in graded
// lexicographic order: ascending total degree, ties broken lexicographically
// with X1 most significant. For p=2, d=2 the order is
// 1, X1, X2, X1^2, X1*X2, X2^2, which fixes the moment-matrix layout.
//
// Immutable after construction; safe for unrestricted shared reads.
class MonomialBasis {
public:
    MonomialBasis(int p, int d);

    int dimension() const noexcept { return p_; }
    int degree() const noexcept { return d_; }
    std::size_t size() const noexcept { return indices_.size(); }
    const std::vector<MultiIndex>& indices() const noexcept { return indices_; }

    // Evaluates x^alpha for every alpha in basis order. Each degree-k entry
    // is one multiply on top of its degree-(k-1) parent, so a full point
    // costs size() multiplies. out.size() must equal size().
    void eval(std::span<const double> x, std::span<double> out) const;
    std::vector<double> eval(std::span<const double> x) const;

private:
    int p_;
    int d_;
    std::vector<MultiIndex> indices_;
    std::vector<std::uint32_t> parent_;  // position of the index with one exponent decremented
    std::vector<std::int32_t> parent_var_;  // which variable the parent lacks
};

}  // namespace cfstream
