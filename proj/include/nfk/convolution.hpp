#pragma once

#include <complex>
#include <functional>

#include "nfk/borel.hpp"
#include "nfk/series.hpp"

namespace nfk {

// Numeric evaluation settings for the convolution integral
//
//     (H *_k J)(w) = w int_0^1 (s(1-s))^{(1-k)/k} H(w(1-s)^{1/k}) J(w s^{1/k}) ds.
//
// The kernel is exactly a Jacobi weight with both exponents (1-k)/k, so the
// nodes absorb the endpoint singularity.
struct QuadratureConfig {
    int node_count = 64;
    double tolerance = 1e-10;

    void validate(int k) const;
    double jacobi_exponent(int k) const { return (1.0 - k) / static_cast<double>(k); }
};

// w^a *_k w^b = Beta((b+1)/k, (a+1)/k) w^{a+b+1}; returns the coefficient.
double convolve_monomial_coeff(int a, int b, int k);

// Bilinear extension of the monomial law; z-monomials multiply.
BorelSeries convolve_series(const BorelSeries& H, const BorelSeries& J, int k);

// Quadrature value of the integral above for callables H, J evaluated on the
// two ray segments through w (principal fractional powers on (0,1)).
cplx convolve_numeric(const std::function<cplx(cplx)>& H, const std::function<cplx(cplx)>& J,
                      cplx w, int k, const QuadratureConfig& cfg = {});

// Iterated convolution power H_1^{* j_1} * ... * H_n^{* j_n}; |j| >= 1.
BorelSeries conv_power(const BorelSeries& H, const MultiIndex& j, int k);

// Borel-plane unit of multiplication by x: u_x = w^0 / Gamma(1/k).
BorelSeries unit_of_x(std::size_t n_vars, int M_max, int J_max, int k);
cplx unit_of_x_value(int k);

// Convolution with u_x (one w-degree raise), applied to every slot.
BorelSeries convolve_unit_x(const BorelSeries& H, int k);

// Borel-plane image of h(x, z + phi) - h(0, z) where phi is the series with
// Borel transform Psi:
//
//   h_star(Psi) = sum_j sum_{0 <= m <= j} C(j, m) z^{j-m}
//                 [ B_k(h_{. j}) *_k Psi^{*_k m} ],
//
// with the m = 0 term contributing z^j B_k(h_{. j}) and, for x-constant
// slots of h, only the m != 0 terms (their x-degree-0 part has no Borel
// image and cancels against h(0, z)).
BorelSeries h_star(const TruncatedSeries& f, const BorelSeries& Psi, int k);

}  // namespace nfk
