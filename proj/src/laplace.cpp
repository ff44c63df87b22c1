#include "nfk/laplace.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

#include "nfk/special.hpp"
#include "nfk/spectrum.hpp"

namespace nfk {

cplx PadeApproximant::eval(cplx w) const {
    auto horner = [&](const std::vector<cplx>& p) {
        cplx acc(0.0, 0.0);
        for (std::size_t i = p.size(); i-- > 0;) acc = acc * w + p[i];
        return acc;
    };
    return horner(num) / horner(den);
}

namespace {

// Series coefficients of num/den up to degree d, for validation.
std::vector<cplx> rational_series(const PadeApproximant& p, int d) {
    std::vector<cplx> out(d + 1, cplx(0.0, 0.0));
    for (int i = 0; i <= d; ++i) {
        cplx acc = i < static_cast<int>(p.num.size()) ? p.num[i] : cplx(0.0, 0.0);
        for (int t = 1; t <= std::min<int>(i, static_cast<int>(p.den.size()) - 1); ++t)
            acc -= p.den[t] * out[i - t];
        out[i] = acc;  // den[0] = 1
    }
    return out;
}

}  // namespace

PadeApproximant pade_from_coeffs(const std::vector<cplx>& coeffs) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    if (d < 0) throw std::invalid_argument("pade: empty coefficient list");
    double scale = 0.0;
    for (cplx c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return PadeApproximant{{cplx(0.0, 0.0)}, {cplx(1.0, 0.0)}};

    auto at = [&](int i) { return (i >= 0 && i <= d) ? coeffs[i] : cplx(0.0, 0.0); };

    for (int M = d / 2; M >= 0; --M) {
        const int L = d - M;
        PadeApproximant p;
        p.den.assign(M + 1, cplx(0.0, 0.0));
        p.den[0] = cplx(1.0, 0.0);
        if (M > 0) {
            Eigen::MatrixXcd A(M, M);
            Eigen::VectorXcd rhs(M);
            for (int i = 1; i <= M; ++i) {
                for (int t = 1; t <= M; ++t) A(i - 1, t - 1) = at(L + i - t);
                rhs(i - 1) = -at(L + i);
            }
            Eigen::VectorXcd b = A.colPivHouseholderQr().solve(rhs);
            if (!b.allFinite()) continue;
            for (int t = 1; t <= M; ++t) p.den[t] = b(t - 1);
        }
        p.num.assign(L + 1, cplx(0.0, 0.0));
        for (int i = 0; i <= L; ++i) {
            cplx acc(0.0, 0.0);
            for (int t = 0; t <= std::min(i, M); ++t) acc += at(i - t) * p.den[t];
            p.num[i] = acc;
        }
        // accept only if the rational function reproduces the input series
        const std::vector<cplx> back = rational_series(p, d);
        double err = 0.0;
        for (int i = 0; i <= d; ++i) err = std::max(err, std::abs(back[i] - coeffs[i]));
        if (err <= 1e-8 * scale) return p;
    }
    // fall back to the polynomial itself
    return PadeApproximant{coeffs, {cplx(1.0, 0.0)}};
}

namespace {

struct RaySetup {
    double theta_prime = 0.0;
    double decay = 0.0;  // cos(k(theta' - arg x)) / |x|^k  minus growth rate
};

RaySetup choose_ray(cplx x, const SectorSpec& sec, const LaplaceOptions& opt) {
    if (!in_omega_x(x, sec)) throw std::domain_error("laplace: x outside omega_k");
    const double argx = std::arg(x);
    double theta_prime;
    if (opt.ray_angle) {
        theta_prime = *opt.ray_angle;
        if (ray_distance(std::polar(1.0, theta_prime), sec.theta) > sec.alpha / 2.0)
            throw std::domain_error("laplace: ray override outside the sector");
    } else {
        // closest admissible direction to arg(x); never touch the boundary
        const double half = sec.alpha / 2.0 * 0.999;
        double delta = argx - sec.theta;
        delta = std::remainder(delta, 2.0 * std::numbers::pi);
        theta_prime = sec.theta + std::clamp(delta, -half, half);
    }
    const double cosk = std::cos(sec.k * (theta_prime - argx));
    const double axk = std::pow(std::abs(x), sec.k);
    const double mu_g = std::pow(std::max(opt.mu_growth, 0.0), sec.k);
    RaySetup rs;
    rs.theta_prime = theta_prime;
    rs.decay = cosk / axk - mu_g;
    if (!(rs.decay > 0.0))
        throw std::runtime_error("laplace: tail bound not achievable on any admissible ray");
    return rs;
}

cplx gl_segment(const std::function<cplx(double)>& f, double a, double b,
                const QuadratureRule& rule) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * acc;
}

}  // namespace

cplx laplace_numeric(const std::function<cplx(cplx)>& H, cplx x, const SectorSpec& sec,
                     const LaplaceOptions& opt) {
    const RaySetup ray = choose_ray(x, sec, opt);
    const cplx dir = std::polar(1.0, ray.theta_prime);
    const cplx eikt = ipow(dir, sec.k);
    const cplx inv_xk = 1.0 / ipow(x, sec.k);

    const auto integrand = [&](double t) -> cplx {
        const cplx w = t * dir;
        const cplx val = H(w) * std::exp(-ipow(w, sec.k) * inv_xk);
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
            throw std::runtime_error("laplace: non-finite integrand value");
        return static_cast<double>(sec.k) * dir * val;
    };
    (void)eikt;

    static thread_local QuadratureRule coarse = gauss_legendre(24);
    static thread_local QuadratureRule fine = gauss_legendre(48);

    // geometric segments out to the decay horizon; each segment is refined
    // by bisection until coarse and fine rules agree
    const double w0 = std::pow(2.0 / ray.decay, 1.0 / sec.k);
    cplx total(0.0, 0.0);
    int panels_used = 0;
    double seg_lo = 0.0, seg_hi = w0;
    int quiet_segments = 0;
    while (true) {
        std::deque<std::pair<double, double>> work{{seg_lo, seg_hi}};
        cplx seg_val(0.0, 0.0);
        while (!work.empty()) {
            auto [a, b] = work.front();
            work.pop_front();
            const cplx c = gl_segment(integrand, a, b, coarse);
            const cplx f = gl_segment(integrand, a, b, fine);
            if (std::abs(c - f) <= 0.25 * opt.tolerance * (std::abs(total) + std::abs(f) + 1e-300) ||
                b - a < 1e-14 * seg_hi) {
                seg_val += f;
            } else {
                if (++panels_used > opt.max_panels)
                    throw std::runtime_error("laplace: adaptive refinement exceeded panel budget");
                const double m = 0.5 * (a + b);
                work.push_back({a, m});
                work.push_back({m, b});
            }
        }
        total += seg_val;
        // stop once two consecutive segments are negligible and the
        // exponential bound has collapsed
        const double bound = ray.decay * std::pow(seg_hi, sec.k);
        if (std::abs(seg_val) <= 0.5 * opt.tolerance * std::abs(total) && bound > 3.0)
            ++quiet_segments;
        else
            quiet_segments = 0;
        if (quiet_segments >= 2 || bound > 700.0) break;
        seg_lo = seg_hi;
        seg_hi *= 1.7;
    }
    return total;
}

cplx laplace_numeric(const std::vector<cplx>& w_coeffs, cplx x, const SectorSpec& sec,
                     const LaplaceOptions& opt) {
    const auto H = [&w_coeffs](cplx w) {
        cplx acc(0.0, 0.0);
        for (std::size_t i = w_coeffs.size(); i-- > 0;) acc = acc * w + w_coeffs[i];
        return acc;
    };
    return laplace_numeric(H, x, sec, opt);
}

std::vector<cplx> ksum_evaluate(const TruncatedSeries& series, const std::vector<cplx>& z,
                                cplx x, const SectorSpec& sec, const KsumOptions& opt) {
    if (z.size() != series.n_vars())
        throw std::invalid_argument("ksum: z dimension mismatch");
    if (!in_omega_x(x, sec)) throw std::domain_error("ksum: x outside omega_k");
    std::vector<cplx> out(series.n_comps(), cplx(0.0, 0.0));

    // constant x-part, evaluated directly
    std::vector<std::vector<cplx>> wpoly(series.n_comps());
    for (auto& p : wpoly) p.assign(static_cast<std::size_t>(std::max(series.L_max(), 1)), cplx(0.0, 0.0));
    for (const auto& [key, v] : series.coeffs()) {
        cplx zmono(1.0, 0.0);
        for (std::size_t s = 0; s < z.size(); ++s) zmono *= ipow(z[s], key.j[s]);
        if (key.l == 0) {
            for (std::size_t c = 0; c < v.size(); ++c) out[c] += v[c] * zmono;
        } else {
            const double g = gamma_pos(static_cast<double>(key.l) / sec.k);
            for (std::size_t c = 0; c < v.size(); ++c)
                wpoly[c][key.l - 1] += v[c] * zmono / g;
        }
    }

    LaplaceOptions lopt;
    lopt.tolerance = opt.tolerance;
    for (std::size_t c = 0; c < out.size(); ++c) {
        bool nonzero = false;
        for (cplx v : wpoly[c]) nonzero = nonzero || v != cplx(0.0, 0.0);
        if (!nonzero) continue;
        if (opt.use_pade) {
            const PadeApproximant p = pade_from_coeffs(wpoly[c]);
            out[c] += laplace_numeric([&p](cplx w) { return p.eval(w); }, x, sec, lopt);
        } else {
            out[c] += laplace_numeric(wpoly[c], x, sec, lopt);
        }
    }
    return out;
}

double operator_norm_bound(const SectorSpec& sec) {
    sec.validate();
    const double s = sec.sin_k_alpha_4();
    const double d = s - std::pow(sec.mu, sec.k) * std::pow(sec.nu, sec.k);
    return gamma_pos(1.0 / sec.k) * sec.nu / std::pow(d, 1.0 / sec.k);
}

double commutation_check(const std::function<cplx(cplx)>& H, cplx x, const SectorSpec& sec,
                         const LaplaceOptions& opt) {
    const double h = 1e-5 * std::abs(x);
    if (!(h > 1e-300)) throw std::runtime_error("commutation_check: step underflow");
    const cplx dir = std::polar(1.0, std::arg(x));
    const cplx fp = laplace_numeric(H, x + h * dir, sec, opt);
    const cplx fm = laplace_numeric(H, x - h * dir, sec, opt);
    const cplx deriv = (fp - fm) / (2.0 * h * dir);
    const auto wkH = [&H, &sec](cplx w) { return ipow(w, sec.k) * H(w); };
    const cplx rhs = laplace_numeric(wkH, x, sec, opt);
    const cplx lhs = ipow(x, sec.k + 1) * deriv / static_cast<double>(sec.k);
    return std::abs(lhs - rhs);
}

}  // namespace nfk
