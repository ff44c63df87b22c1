#pragma once

#include <complex>

namespace nfk {

// Geometry of one summation direction: the Borel-plane domain
// Omega(nu,theta,alpha) = B(nu) u S(theta,alpha) and its Laplace image
// omega_k = B(nu) n S(theta, alpha + pi/k). mu is the exponential weight
// rate of the norms used on Omega.
struct SectorSpec {
    double theta = 0.0;
    double alpha = 1.0;
    double nu = 0.1;
    double mu = 2.0;
    int k = 1;

    SectorSpec() = default;
    SectorSpec(double theta_, double alpha_, double nu_, double mu_, int k_);

    void validate() const;
    double sin_k_alpha_4() const;
};

bool in_omega_borel(std::complex<double> w, const SectorSpec& sec);
bool in_omega_x(std::complex<double> x, const SectorSpec& sec);

}  // namespace nfk
