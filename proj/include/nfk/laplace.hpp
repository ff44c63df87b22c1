#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "nfk/borel.hpp"
#include "nfk/sector.hpp"
#include "nfk/series.hpp"

namespace nfk {

// Rational function p/q from the diagonal Pade approximant of a power
// series around w = 0; used to continue truncated Borel polynomials along
// the integration ray.
struct PadeApproximant {
    std::vector<cplx> num;
    std::vector<cplx> den;  // den[0] = 1

    cplx eval(cplx w) const;
};

// Diagonal (or near-diagonal) Pade of the coefficients c_0..c_d. Degenerate
// Toeplitz blocks fall back to lower orders; validated against the input
// coefficients before acceptance.
PadeApproximant pade_from_coeffs(const std::vector<cplx>& coeffs);

struct LaplaceOptions {
    double tolerance = 1e-10;
    double mu_growth = 0.0;      // exponential order bound of H (rate mu^k)
    double growth_scale = 1.0;   // |H(w)| <= growth_scale * e^{mu_growth^k |w|^k} far out
    std::optional<double> ray_angle;  // override for the integration direction theta'
    int max_panels = 4096;
};

// int_0^{theta' inf} H(w) e^{-w^k/x^k} k dw along a ray theta' chosen inside
// (theta - alpha/2, theta + alpha/2) so the exponent decays at x. Adaptive
// panel refinement with an explicit tail cutoff.
cplx laplace_numeric(const std::function<cplx(cplx)>& H, cplx x, const SectorSpec& sec,
                     const LaplaceOptions& opt = {});

// Polynomial convenience overload: w-coefficients c[0..d].
cplx laplace_numeric(const std::vector<cplx>& w_coeffs, cplx x, const SectorSpec& sec,
                     const LaplaceOptions& opt = {});

struct KsumOptions {
    bool use_pade = true;
    double tolerance = 1e-10;
};

// k-sum of a truncated series at (x, z): the constant x-part is evaluated
// directly, the O(x) rest via Borel transform, optional diagonal Pade in w,
// and the ray Laplace integral.
std::vector<cplx> ksum_evaluate(const TruncatedSeries& series, const std::vector<cplx>& z,
                                cplx x, const SectorSpec& sec, const KsumOptions& opt = {});

// Gamma(1/k) * nu / (sin(k alpha/4) - mu^k nu^k)^{1/k}
double operator_norm_bound(const SectorSpec& sec);

// |(1/k) x^{k+1} d/dx L(H)(x) - L(w^k H)(x)| with a central difference.
double commutation_check(const std::function<cplx(cplx)>& H, cplx x, const SectorSpec& sec,
                         const LaplaceOptions& opt = {});

}  // namespace nfk
