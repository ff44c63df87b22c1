#include "nfk/sector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nfk/spectrum.hpp"

namespace nfk {

SectorSpec::SectorSpec(double theta_, double alpha_, double nu_, double mu_, int k_)
    : theta(theta_), alpha(alpha_), nu(nu_), mu(mu_), k(k_) {
    validate();
}

double SectorSpec::sin_k_alpha_4() const { return std::sin(k * alpha / 4.0); }

void SectorSpec::validate() const {
    if (k < 1) throw std::invalid_argument("sector: k must be >= 1");
    if (!(alpha > 0.0) || !(alpha < std::numbers::pi))
        throw std::invalid_argument("sector: opening alpha must lie in (0, pi)");
    if (!(mu > 0.0)) throw std::invalid_argument("sector: mu must be positive");
    const double s = sin_k_alpha_4();
    if (!(s > 0.0)) throw std::invalid_argument("sector: sin(k*alpha/4) must be positive");
    if (!(nu > 0.0) || !(nu < std::pow(s, 1.0 / k) / mu))
        throw std::invalid_argument("sector: need 0 < nu < mu^{-1} sin(k*alpha/4)^{1/k}");
}

bool in_omega_borel(std::complex<double> w, const SectorSpec& sec) {
    if (std::abs(w) < sec.nu) return true;
    if (w == std::complex<double>(0.0, 0.0)) return true;
    return ray_distance(w, sec.theta) < sec.alpha / 2.0;
}

bool in_omega_x(std::complex<double> x, const SectorSpec& sec) {
    if (!(std::abs(x) < sec.nu)) return false;
    if (x == std::complex<double>(0.0, 0.0)) return false;
    return ray_distance(x, sec.theta) < (sec.alpha + std::numbers::pi / sec.k) / 2.0;
}

}  // namespace nfk
