#pragma once

#include <complex>
#include <functional>

#include "nfk/borel.hpp"
#include "nfk/sector.hpp"
#include "nfk/series.hpp"

namespace nfk {

// Sampled estimate of sup_{w in Omega} |H(w)| (1 + mu^{2k}|w|^{2k}) e^{-mu^k |w|^k}.
// The estimate is a lower bound of the true supremum; `converged` records
// whether doubling the radial grid moved it by less than 0.1%.
struct NormEstimate {
    double value = 0.0;
    double mu = 0.0;
    int k = 1;
    std::size_t sample_count = 0;
    bool converged = false;
};

NormEstimate norm_mu_k(const std::function<cplx(cplx)>& H, const SectorSpec& sec,
                       int radial_samples = 512);
NormEstimate norm_mu_k(const std::vector<cplx>& w_coeffs, const SectorSpec& sec,
                       int radial_samples = 512);

// Norm on z-series with coefficients in G_k^n:
// sum_j mu^{-|j|} sup_comp ||H_{comp, j}||_{mu,k}.
NormEstimate norm_series_z(const BorelSeries& H, const SectorSpec& sec,
                           int radial_samples = 256);

// q_k = 2^{(4k-1)/k} pi / (2 cos(pi (k-1) / (2k)));  q_1 = 4 pi.
double q_k(int k);

// C_k = k * 384 e^{-2 - sqrt(15)/2} (4 + sqrt(15))^2, approx 465 k, valid
// for mu > 2^{1/k} T.
double C_k(int k);

// (q_k / mu) ||H|| ||J|| - ||H * J||; nonnegative when the convolution
// bound holds. H, J are scalar w-polynomials.
double verify_conv_bound(const std::vector<cplx>& H, const std::vector<cplx>& J,
                         const SectorSpec& sec);

// 2^n K C_k - ||B_k(h)||; requires |h_{l,j}| <= K T^{l-1+|j|} and
// mu > 2^{1/k} T, and throws when the growth hypothesis fails.
double verify_borel_bound(const TruncatedSeries& h, double K, double T, const SectorSpec& sec);

}  // namespace nfk
