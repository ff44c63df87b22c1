#pragma once

#include <complex>
#include <map>
#include <vector>

#include "nfk/multi_index.hpp"

namespace nfk {

using cplx = std::complex<double>;

// Doubly truncated formal power series
//
//     h(x,z) = sum_{l,j} h_{l,j} x^l z^j,   h_{l,j} in C^{n_comps},
//
// stored sparsely; an absent key is a zero coefficient. The truncation is a
// box: keys satisfy l <= L_max and |j| <= J_max. Binary operations require
// matching n_vars and carry the componentwise minimum of the truncations.
class TruncatedSeries {
public:
    struct Key {
        int l = 0;
        MultiIndex j;
        bool operator<(const Key& o) const {
            if (l != o.l) return l < o.l;
            return j < o.j;
        }
        bool operator==(const Key& o) const { return l == o.l && j == o.j; }
    };
    using CoeffMap = std::map<Key, std::vector<cplx>>;

    TruncatedSeries() = default;
    TruncatedSeries(std::size_t n_vars, std::size_t n_comps, int L_max, int J_max);

    std::size_t n_vars() const { return n_vars_; }
    std::size_t n_comps() const { return n_comps_; }
    int L_max() const { return L_max_; }
    int J_max() const { return J_max_; }
    const CoeffMap& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }

    // Throws on keys beyond the truncation box; use add_clipped during
    // arithmetic where out-of-box results are dropped by contract.
    void set(int l, const MultiIndex& j, std::vector<cplx> value);
    void set(int l, const MultiIndex& j, std::size_t comp, cplx value);
    void add_clipped(int l, const MultiIndex& j, std::size_t comp, cplx value);

    std::vector<cplx> coeff(int l, const MultiIndex& j) const;
    cplx coeff(int l, const MultiIndex& j, std::size_t comp) const;

    bool has_constant_x_term() const;  // any (0, j) entry present
    double max_abs_coeff() const;
    void prune_zeros();

    TruncatedSeries with_truncation(int L_max, int J_max) const;
    TruncatedSeries component(std::size_t comp) const;  // scalar slice

    TruncatedSeries& operator*=(cplx scale);

    friend TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

private:
    std::size_t n_vars_ = 0;
    std::size_t n_comps_ = 1;
    int L_max_ = 0;
    int J_max_ = 0;
    CoeffMap coeffs_;
};

// Coefficientwise sum; truncation = min of the operands'.
TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);

// Truncated Cauchy product. Scalar-by-vector is allowed (one operand with a
// single component multiplies each component of the other); otherwise the
// component counts must match and the product is taken componentwise.
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

// d/dz_q: the (l, j) coefficient receives (j_q + 1) h_{l, j + e_q}.
TruncatedSeries partial_z(const TruncatedSeries& a, std::size_t q1based);

// (1/k) x^{k+1} d/dx: h_{l,j} contributes (l/k) h_{l,j} at x-degree l + k.
TruncatedSeries x_weighted_derivative(const TruncatedSeries& a, int k);

// f(x, z + x*phi(x,z)) expanded and truncated; phi must have one component
// per variable of f.
TruncatedSeries compose_shift(const TruncatedSeries& f, const TruncatedSeries& phi);

// Monomial helpers.
TruncatedSeries monomial(std::size_t n_vars, std::size_t n_comps, int L_max, int J_max,
                         int l, const MultiIndex& j, std::size_t comp, cplx value);

}  // namespace nfk
