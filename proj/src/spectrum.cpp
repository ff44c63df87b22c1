#include "nfk/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nfk/special.hpp"

namespace nfk {

Spectrum::Spectrum(std::vector<cplx> lambda_, std::vector<int> xi_, int k_, double r_)
    : n(lambda_.size()), lambda(std::move(lambda_)), xi(std::move(xi_)), k(k_), r(r_) {
    validate();
}

bool Spectrum::semi_simple() const {
    return std::all_of(xi.begin(), xi.end(), [](int x) { return x == 0; });
}

void Spectrum::validate() const {
    if (n == 0) throw std::invalid_argument("spectrum: empty");
    if (lambda.size() != n) throw std::invalid_argument("spectrum: lambda size mismatch");
    if (xi.size() + 1 != n && !(n == 1 && xi.empty()))
        throw std::invalid_argument("spectrum: xi must have n-1 entries");
    if (k < 1) throw std::invalid_argument("spectrum: rank k must be >= 1");
    if (!(r > 0.0)) throw std::invalid_argument("spectrum: Jordan scale r must be positive");
    for (cplx l : lambda)
        if (l == cplx(0.0, 0.0)) throw std::invalid_argument("spectrum: zero eigenvalue");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (xi[i] != 0 && xi[i] != 1) throw std::invalid_argument("spectrum: xi entries must be 0/1");
        if (xi[i] == 1 && lambda[i + 1] != lambda[i])
            throw std::invalid_argument("spectrum: xi_i = 1 requires lambda_{i+1} = lambda_i");
    }
}

cplx divisor(const Spectrum& spec, std::size_t i1based, const MultiIndex& j) {
    if (i1based < 1 || i1based > spec.n) throw std::invalid_argument("divisor: component out of range");
    if (j.size() != spec.n) throw std::invalid_argument("divisor: index dimension mismatch");
    cplx dot(0.0, 0.0);
    for (std::size_t s = 0; s < spec.n; ++s) dot += static_cast<double>(j[s]) * spec.lambda[s];
    return spec.lambda[i1based - 1] - dot;
}

ResonanceSet::ResonanceSet(std::set<Pair> pairs, double C, int J_max, double theta,
                           double sector_margin)
    : pairs_(std::move(pairs)), C_(C), J_max_(J_max), theta_(theta), sector_margin_(sector_margin) {
    if (!(C_ > 0.0)) throw std::invalid_argument("resonance set: C must be positive");
}

bool ResonanceSet::contains(std::size_t i1based, const MultiIndex& j) const {
    if (j.degree() > J_max_)
        throw std::out_of_range("resonance set: membership query beyond J_max");
    return pairs_.count({static_cast<int>(i1based), j}) > 0;
}

void ResonanceSet::validate_against(const Spectrum& spec) const {
    for (const auto& [i, j] : pairs_) {
        if (i < 1 || static_cast<std::size_t>(i) > spec.n || j.size() != spec.n ||
            j.degree() > J_max_)
            throw std::invalid_argument("resonance set: malformed pair");
        if (static_cast<std::size_t>(i) < spec.n && spec.xi[i - 1] == 1 &&
            pairs_.count({i + 1, j}) == 0)
            throw std::invalid_argument("resonance set: not closed under component shift");
        for (std::size_t s = 1; s < spec.n; ++s) {
            MultiIndex jd;
            if (spec.xi[s - 1] == 1 && j.try_plus_d(s, jd) && pairs_.count({i, jd}) == 0)
                throw std::invalid_argument("resonance set: not closed under d-steps");
        }
    }
    for (const MultiIndex& j : indices_up_to(spec.n, J_max_)) {
        for (std::size_t i = 1; i <= spec.n; ++i) {
            if (pairs_.count({static_cast<int>(i), j})) continue;
            const double d = std::abs(divisor(spec, i, j));
            if (d < C_ * (1.0 + j.degree()) * (1.0 - 1e-12))
                throw std::invalid_argument("resonance set: complement violates divisor bound at (" +
                                            std::to_string(i) + ", " + j.str() + ")");
        }
    }
}

ResonanceSet minimal_resonance_set(const Spectrum& spec, double C, int J_max) {
    if (!(C > 0.0)) throw std::invalid_argument("minimal_resonance_set: C must be positive");
    std::set<ResonanceSet::Pair> pairs;
    for (const MultiIndex& j : indices_up_to(spec.n, J_max))
        for (std::size_t i = 1; i <= spec.n; ++i)
            if (std::abs(divisor(spec, i, j)) < C * (1.0 + j.degree()))
                pairs.insert({static_cast<int>(i), j});

    // Jordan closure. The divisor criterion is already closed when the xi
    // flags are consistent with equal eigenvalues, so this normally settles
    // in one sweep.
    bool changed = true;
    while (changed) {
        changed = false;
        std::set<ResonanceSet::Pair> extra;
        for (const auto& [i, j] : pairs) {
            if (static_cast<std::size_t>(i) < spec.n && spec.xi[i - 1] == 1 &&
                pairs.count({i + 1, j}) == 0)
                extra.insert({i + 1, j});
            for (std::size_t s = 1; s < spec.n; ++s) {
                MultiIndex jd;
                if (spec.xi[s - 1] == 1 && j.try_plus_d(s, jd) && pairs.count({i, jd}) == 0)
                    extra.insert({i, jd});
            }
        }
        if (!extra.empty()) {
            pairs.insert(extra.begin(), extra.end());
            changed = true;
        }
    }
    return ResonanceSet(std::move(pairs), C, J_max, 0.0);
}

double ray_distance(cplx z, double ray_angle) {
    const double pi = std::numbers::pi;
    double d = std::arg(z) - ray_angle;
    d = std::fmod(d, 2.0 * pi);
    if (d > pi) d -= 2.0 * pi;
    if (d < -pi) d += 2.0 * pi;
    return std::abs(d);
}

SectorCheck check_sector_condition(const ResonanceSet& rset, const Spectrum& spec, double theta) {
    SectorCheck out;
    double worst = std::numbers::pi;
    bool any = false;
    for (const MultiIndex& j : indices_up_to(spec.n, rset.J_max())) {
        for (std::size_t i = 1; i <= spec.n; ++i) {
            if (rset.contains(i, j)) continue;
            any = true;
            const cplx d = divisor(spec, i, j);
            worst = std::min(worst, ray_distance(d, spec.k * theta));
        }
    }
    out.worst_margin = any ? worst : std::numbers::pi;
    const double margin = rset.sector_margin() > 0.0 ? rset.sector_margin() : 1e-9;
    out.ok = !any || worst >= margin / 2.0;
    return out;
}

DivisorBound divisor_lower_bound(const ResonanceSet& rset, const Spectrum& spec, double nu,
                                 double theta, double alpha, int ray_samples, int angle_samples) {
    DivisorBound out;
    std::vector<cplx> samples;
    samples.push_back({0.0, 0.0});

    // disk part of Omega
    for (int ir = 1; ir <= 4; ++ir)
        for (int ia = 0; ia < 24; ++ia) {
            const double t = nu * ir / 4.0;
            const double a = 2.0 * std::numbers::pi * ia / 24.0;
            samples.push_back(std::polar(t, a));
        }

    // sector rays out to where |w|^k dominates every divisor
    double max_div = 1.0;
    for (const MultiIndex& j : indices_up_to(spec.n, rset.J_max()))
        for (std::size_t i = 1; i <= spec.n; ++i)
            max_div = std::max(max_div, std::abs(divisor(spec, i, j)));
    const double t_max = std::pow(3.0 * max_div, 1.0 / spec.k);
    for (int ia = 0; ia < angle_samples; ++ia) {
        const double a =
            theta + alpha * (angle_samples == 1 ? 0.0 : (ia / (angle_samples - 1.0) - 0.5));
        for (int ir = 1; ir <= ray_samples; ++ir) {
            const double t = nu * std::pow(t_max / nu, ir / static_cast<double>(ray_samples));
            samples.push_back(std::polar(t, a));
        }
    }

    double K = std::numeric_limits<double>::infinity();
    for (const MultiIndex& j : indices_up_to(spec.n, rset.J_max())) {
        for (std::size_t i = 1; i <= spec.n; ++i) {
            if (rset.contains(i, j)) continue;
            const cplx d = divisor(spec, i, j);
            const double weight = 1.0 + j.degree();
            for (cplx w : samples) {
                K = std::min(K, std::abs(d - ipow(w, spec.k)) * weight);
            }
        }
    }
    out.samples = samples.size();
    if (!std::isfinite(K)) {  // empty complement
        out.K = 1.0;
        out.ok = true;
        return out;
    }
    out.K = K;
    out.ok = K > 0.0;
    return out;
}

SectorCheck apply_sector_defaults(ResonanceSet& rset, const Spectrum& spec, double theta) {
    rset.set_theta(theta);
    SectorCheck check = check_sector_condition(rset, spec, theta);
    if (rset.sector_margin() <= 0.0) rset.set_sector_margin(0.5 * check.worst_margin);
    return check_sector_condition(rset, spec, theta);
}

double default_jordan_scale(const Spectrum& spec, const ResonanceSet& rset, double nu,
                            double theta, double alpha) {
    if (spec.n <= 1 || spec.semi_simple()) return 1.0;
    const DivisorBound b = divisor_lower_bound(rset, spec, nu, theta, alpha);
    if (!b.ok) throw std::runtime_error("default_jordan_scale: divisor bound failed");
    return 1.0 / (2.0 * b.K * static_cast<double>(spec.n - 1));
}

}  // namespace nfk
