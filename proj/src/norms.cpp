#include "nfk/norms.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "nfk/convolution.hpp"
#include "nfk/parallel.hpp"
#include "nfk/special.hpp"

namespace nfk {

namespace {

double weight_mu_k(double t, double mu, int k) {
    const double mk = std::pow(mu * t, k);
    return (1.0 + mk * mk) * std::exp(-mk);
}

std::vector<cplx> omega_samples(const SectorSpec& sec, int radial_samples) {
    std::vector<cplx> pts;
    pts.push_back({0.0, 0.0});
    // disk
    for (int ir = 1; ir <= 6; ++ir)
        for (int ia = 0; ia < 16; ++ia)
            pts.push_back(std::polar(sec.nu * ir / 6.0,
                                     2.0 * std::numbers::pi * ia / 16.0));
    // sector rays to the weight-decay horizon
    const double t_stop = std::pow(80.0, 1.0 / sec.k) / sec.mu;
    const double t_lo = std::min(sec.nu / 8.0, t_stop / 256.0);
    const int n_angles = 9;
    for (int ia = 0; ia < n_angles; ++ia) {
        const double a = sec.theta + sec.alpha * 0.999 * (ia / (n_angles - 1.0) - 0.5);
        for (int ir = 0; ir <= radial_samples; ++ir) {
            const double t = t_lo * std::pow(t_stop / t_lo, ir / static_cast<double>(radial_samples));
            pts.push_back(std::polar(t, a));
        }
    }
    return pts;
}

double sampled_sup(const std::function<cplx(cplx)>& H, const SectorSpec& sec,
                   const std::vector<cplx>& pts) {
    std::vector<double> local(std::max<std::size_t>(thread_cap(), 1), 0.0);
    std::atomic<bool> bad{false};
    parallel_for(pts.size(), [&](std::size_t i) {
        const cplx v = H(pts[i]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            bad = true;
            return;
        }
        const double val = std::abs(v) * weight_mu_k(std::abs(pts[i]), sec.mu, sec.k);
        const std::size_t slot = thread_cap() <= 1 ? 0 : i % local.size();
        if (val > local[slot]) local[slot] = val;
    });
    if (bad) throw std::runtime_error("norm_mu_k: non-finite evaluation");
    double out = 0.0;
    for (double v : local) out = std::max(out, v);
    return out;
}

}  // namespace

NormEstimate norm_mu_k(const std::function<cplx(cplx)>& H, const SectorSpec& sec,
                       int radial_samples) {
    NormEstimate est;
    est.mu = sec.mu;
    est.k = sec.k;
    const auto pts = omega_samples(sec, radial_samples);
    const auto pts2 = omega_samples(sec, 2 * radial_samples);
    const double v1 = sampled_sup(H, sec, pts);
    const double v2 = sampled_sup(H, sec, pts2);
    est.value = std::max(v1, v2);
    est.sample_count = pts.size() + pts2.size();
    est.converged = std::abs(v2 - v1) <= 1e-3 * std::max(v2, 1e-300);
    return est;
}

NormEstimate norm_mu_k(const std::vector<cplx>& w_coeffs, const SectorSpec& sec,
                       int radial_samples) {
    return norm_mu_k(
        [&w_coeffs](cplx w) {
            cplx acc(0.0, 0.0);
            for (std::size_t i = w_coeffs.size(); i-- > 0;) acc = acc * w + w_coeffs[i];
            return acc;
        },
        sec, radial_samples);
}

NormEstimate norm_series_z(const BorelSeries& H, const SectorSpec& sec, int radial_samples) {
    NormEstimate est;
    est.mu = sec.mu;
    est.k = sec.k;
    est.converged = true;

    // collect the z-slots present
    std::set<MultiIndex> slots;
    for (const auto& [key, v] : H.coeffs()) slots.insert(key.j);

    double total = 0.0;
    std::size_t samples = 0;
    for (const MultiIndex& j : slots) {
        double comp_sup = 0.0;
        for (std::size_t c = 0; c < H.n_comps(); ++c) {
            const auto poly = H.w_poly(c, j);
            bool nonzero = false;
            for (cplx v : poly) nonzero = nonzero || v != cplx(0.0, 0.0);
            if (!nonzero) continue;
            const NormEstimate e = norm_mu_k(poly, sec, radial_samples);
            comp_sup = std::max(comp_sup, e.value);
            samples += e.sample_count;
            est.converged = est.converged && e.converged;
        }
        total += comp_sup * std::pow(sec.mu, -j.degree());
    }
    est.value = total;
    est.sample_count = samples;
    return est;
}

double q_k(int k) {
    if (k < 1) throw std::invalid_argument("q_k: k must be >= 1");
    const double pi = std::numbers::pi;
    return std::pow(2.0, (4.0 * k - 1.0) / k) * pi / (2.0 * std::cos(pi * (k - 1.0) / (2.0 * k)));
}

double C_k(int k) {
    if (k < 1) throw std::invalid_argument("C_k: k must be >= 1");
    const double s15 = std::sqrt(15.0);
    return k * 384.0 * std::exp(-2.0 - s15 / 2.0) * (4.0 + s15) * (4.0 + s15);
}

double verify_conv_bound(const std::vector<cplx>& H, const std::vector<cplx>& J,
                         const SectorSpec& sec) {
    const int dH = static_cast<int>(H.size()) - 1;
    const int dJ = static_cast<int>(J.size()) - 1;
    BorelSeries bh(1, 1, dH + dJ + 1, 0), bj(1, 1, dH + dJ + 1, 0);
    for (int m = 0; m <= dH; ++m) bh.add_clipped(m, MultiIndex(1), 0, H[m]);
    for (int m = 0; m <= dJ; ++m) bj.add_clipped(m, MultiIndex(1), 0, J[m]);
    const BorelSeries conv = convolve_series(bh, bj, sec.k);
    const double lhs = norm_mu_k(conv.w_poly(0, MultiIndex(1)), sec).value;
    const double nh = norm_mu_k(H, sec).value;
    const double nj = norm_mu_k(J, sec).value;
    return (q_k(sec.k) / sec.mu) * nh * nj - lhs;
}

double verify_borel_bound(const TruncatedSeries& h, double K, double T, const SectorSpec& sec) {
    if (!(K > 0.0) || !(T > 0.0)) throw std::invalid_argument("verify_borel_bound: K, T > 0");
    if (!(sec.mu > std::pow(2.0, 1.0 / sec.k) * T))
        throw std::invalid_argument("verify_borel_bound: requires mu > 2^{1/k} T");
    for (const auto& [key, v] : h.coeffs()) {
        if (key.l < 1) throw std::invalid_argument("verify_borel_bound: series must be O(x)");
        double mag = 0.0;
        for (cplx c : v) mag = std::max(mag, std::abs(c));
        if (mag > K * std::pow(T, key.l - 1.0 + key.j.degree()) * (1.0 + 1e-12))
            throw std::invalid_argument("verify_borel_bound: growth hypothesis violated");
    }
    const BorelSeries B = borel_transform(h, sec.k);
    const double norm = norm_series_z(B, sec).value;
    return std::pow(2.0, static_cast<double>(h.n_vars())) * K * C_k(sec.k) - norm;
}

}  // namespace nfk
