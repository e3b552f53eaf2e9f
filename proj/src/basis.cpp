#include "cfstream/basis.hpp"

#include <limits>
#include <map>
#include <string>

#include "cfstream/errors.hpp"

namespace cfstream {

std::uint64_t basis_size(int p, int d) {
    if (p < 1) throw InputError("basis_size: dimension p must be >= 1, got " + std::to_string(p));
    if (d < 0) throw InputError("basis_size: degree d must be >= 0, got " + std::to_string(d));
    // binomial(p+d, d) built up as C(p+i, i) = C(p+i-1, i-1) * (p+i) / i,
    // which stays integral at every step.
    std::uint64_t result = 1;
    for (int i = 1; i <= d; ++i) {
        const std::uint64_t num = static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(i);
        if (result > std::numeric_limits<std::uint64_t>::max() / num) {
            throw SizeError("basis_size: binomial(p+d, d) overflows 64 bits for p=" +
                            std::to_string(p) + ", d=" + std::to_string(d));
        }
        result = result * num / static_cast<std::uint64_t>(i);
    }
    return result;
}

namespace {

// All p-tuples of total degree exactly k, first exponent descending. This is
// graded-lex within one degree block with X1 heaviest.
void enumerate_degree(int p, int k, MultiIndex& scratch, int pos, std::vector<MultiIndex>& out) {
    if (pos == p - 1) {
        scratch[pos] = k;
        out.push_back(scratch);
        return;
    }
    for (int a = k; a >= 0; --a) {
        scratch[pos] = a;
        enumerate_degree(p, k - a, scratch, pos + 1, out);
    }
}

}  // namespace

MonomialBasis::MonomialBasis(int p, int d) : p_(p), d_(d) {
    const std::uint64_t count = basis_size(p, d);  // validates p, d
    // Guard against enumerations that cannot be materialized.
    if (count > 100'000'000ull) {
        throw SizeError("MonomialBasis: " + std::to_string(count) +
                        " monomials is infeasible to enumerate (p=" + std::to_string(p) +
                        ", d=" + std::to_string(d) + ")");
    }
    indices_.reserve(static_cast<std::size_t>(count));
    MultiIndex scratch(static_cast<std::size_t>(p), 0);
    for (int k = 0; k <= d; ++k) enumerate_degree(p, k, scratch, 0, indices_);

    // Parent pointers for the degree-graded evaluation recurrence.
    std::map<MultiIndex, std::uint32_t> position;
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        position.emplace(indices_[i], static_cast<std::uint32_t>(i));
    }
    parent_.assign(indices_.size(), 0);
    parent_var_.assign(indices_.size(), 0);
    for (std::size_t i = 1; i < indices_.size(); ++i) {
        MultiIndex parent = indices_[i];
        int var = 0;
        while (parent[static_cast<std::size_t>(var)] == 0) ++var;
        --parent[static_cast<std::size_t>(var)];
        parent_[i] = position.at(parent);
        parent_var_[i] = var;
    }
}

void MonomialBasis::eval(std::span<const double> x, std::span<double> out) const {
    if (static_cast<int>(x.size()) != p_) {
        throw InputError("eval_monomials: point has dimension " + std::to_string(x.size()) +
                         ", basis expects " + std::to_string(p_));
    }
    if (out.size() != indices_.size()) {
        throw InputError("eval_monomials: output span has size " + std::to_string(out.size()) +
                         ", basis has " + std::to_string(indices_.size()) + " monomials");
    }
    out[0] = 1.0;
    for (std::size_t i = 1; i < indices_.size(); ++i) {
        out[i] = out[parent_[i]] * x[static_cast<std::size_t>(parent_var_[i])];
    }
}

std::vector<double> MonomialBasis::eval(std::span<const double> x) const {
    std::vector<double> out(indices_.size());
    eval(x, out);
    return out;
}

}  // namespace cfstream
