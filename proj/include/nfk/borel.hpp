#pragma once

#include <complex>
#include <map>
#include <vector>

#include "nfk/multi_index.hpp"
#include "nfk/series.hpp"

namespace nfk {

// Truncated series in the Borel plane,
//
//     H(w,z) = sum_{m,j} H_{m,j} w^m z^j,   H_{m,j} in C^{n_comps},
//
// the image of an O(x) series under the order-k Borel transform: w-degree m
// corresponds to x-degree m+1. Same sparse box-truncated layout as
// TruncatedSeries but indexed by w-degree.
class BorelSeries {
public:
    struct Key {
        int m = 0;
        MultiIndex j;
        bool operator<(const Key& o) const {
            if (m != o.m) return m < o.m;
            return j < o.j;
        }
    };
    using CoeffMap = std::map<Key, std::vector<cplx>>;

    BorelSeries() = default;
    BorelSeries(std::size_t n_vars, std::size_t n_comps, int M_max, int J_max);

    std::size_t n_vars() const { return n_vars_; }
    std::size_t n_comps() const { return n_comps_; }
    int M_max() const { return M_max_; }
    int J_max() const { return J_max_; }
    const CoeffMap& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }

    void set(int m, const MultiIndex& j, std::vector<cplx> value);
    void set(int m, const MultiIndex& j, std::size_t comp, cplx value);
    void add_clipped(int m, const MultiIndex& j, std::size_t comp, cplx value);

    std::vector<cplx> coeff(int m, const MultiIndex& j) const;
    cplx coeff(int m, const MultiIndex& j, std::size_t comp) const;

    double max_abs_coeff() const;
    void prune_zeros();
    BorelSeries component(std::size_t comp) const;
    BorelSeries with_truncation(int M_max, int J_max) const;

    // w-coefficient polynomial of one (component, z-slot): index m -> value.
    std::vector<cplx> w_poly(std::size_t comp, const MultiIndex& j) const;
    // evaluation at a point (w, z); z has n_vars entries.
    std::vector<cplx> eval(cplx w, const std::vector<cplx>& z) const;

    BorelSeries& operator*=(cplx scale);

private:
    std::size_t n_vars_ = 0;
    std::size_t n_comps_ = 1;
    int M_max_ = 0;
    int J_max_ = 0;
    CoeffMap coeffs_;
};

BorelSeries add(const BorelSeries& a, const BorelSeries& b);

// Product in which only the z-monomials multiply (w-degrees add as plain
// polynomial multiplication in w). This is the pointwise product of
// functions of w, not the convolution.
BorelSeries mul_pointwise(const BorelSeries& a, const BorelSeries& b);

// d/dz_q in the Borel plane.
BorelSeries partial_z(const BorelSeries& a, std::size_t q1based);

// Order-k Borel transform of an O(x) series: (m = l-1, j) <- h_{l,j} / Gamma(l/k).
// Throws when a constant x-term is present.
BorelSeries borel_transform(const TruncatedSeries& h, int k);

// Formal inverse: x-degree m+1 <- H_{m,j} * Gamma((m+1)/k).
TruncatedSeries inverse_borel(const BorelSeries& H, int k);

struct GevreyFit {
    double K_fit = 0.0;
    double T_fit = 0.0;
    int k_assumed = 1;
    double residual = 0.0;              // rms of the linear-fit residuals
    std::vector<double> per_order_norms;  // ||h_l|| for l = 1..L_max
    bool degenerate = false;            // fewer than two usable orders
};

// Least-squares fit of log||h_l|| - log Gamma(l/k) against (l-1) over
// l >= 2; slope = log T_fit, intercept = log K_fit. ||h_l|| is the polydisk
// surrogate sum_j max_i |h_{l,j,i}| R^{|j|}.
GevreyFit gevrey_fit(const TruncatedSeries& h, int k, double z_radius = 1.0);

}  // namespace nfk
