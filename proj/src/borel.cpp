#include "nfk/borel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nfk/special.hpp"

namespace nfk {

namespace {
bool all_zero(const std::vector<cplx>& v) {
    return std::all_of(v.begin(), v.end(), [](cplx c) { return c == cplx(0.0, 0.0); });
}
}  // namespace

BorelSeries::BorelSeries(std::size_t n_vars, std::size_t n_comps, int M_max, int J_max)
    : n_vars_(n_vars), n_comps_(n_comps), M_max_(M_max), J_max_(J_max) {
    if (n_comps == 0) throw std::invalid_argument("borel series: zero components");
    if (M_max < 0 || J_max < 0) throw std::invalid_argument("borel series: negative truncation");
}

void BorelSeries::set(int m, const MultiIndex& j, std::vector<cplx> value) {
    if (j.size() != n_vars_) throw std::invalid_argument("borel series::set: index mismatch");
    if (value.size() != n_comps_) throw std::invalid_argument("borel series::set: component mismatch");
    if (m < 0 || m > M_max_ || j.degree() > J_max_)
        throw std::invalid_argument("borel series::set: key beyond truncation");
    if (all_zero(value))
        coeffs_.erase(Key{m, j});
    else
        coeffs_[Key{m, j}] = std::move(value);
}

void BorelSeries::set(int m, const MultiIndex& j, std::size_t comp, cplx value) {
    auto v = coeff(m, j);
    v.at(comp) = value;
    set(m, j, std::move(v));
}

void BorelSeries::add_clipped(int m, const MultiIndex& j, std::size_t comp, cplx value) {
    if (m < 0 || m > M_max_ || j.degree() > J_max_) return;
    if (value == cplx(0.0, 0.0)) return;
    auto it = coeffs_.find(Key{m, j});
    if (it == coeffs_.end()) {
        std::vector<cplx> v(n_comps_, cplx(0.0, 0.0));
        v.at(comp) = value;
        coeffs_.emplace(Key{m, j}, std::move(v));
    } else {
        it->second.at(comp) += value;
    }
}

std::vector<cplx> BorelSeries::coeff(int m, const MultiIndex& j) const {
    auto it = coeffs_.find(Key{m, j});
    if (it != coeffs_.end()) return it->second;
    return std::vector<cplx>(n_comps_, cplx(0.0, 0.0));
}

cplx BorelSeries::coeff(int m, const MultiIndex& j, std::size_t comp) const {
    auto it = coeffs_.find(Key{m, j});
    if (it != coeffs_.end()) return it->second.at(comp);
    return {0.0, 0.0};
}

double BorelSeries::max_abs_coeff() const {
    double out = 0.0;
    for (const auto& [key, v] : coeffs_)
        for (cplx c : v) out = std::max(out, std::abs(c));
    return out;
}

void BorelSeries::prune_zeros() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (all_zero(it->second))
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

BorelSeries BorelSeries::component(std::size_t comp) const {
    BorelSeries r(n_vars_, 1, M_max_, J_max_);
    for (const auto& [key, v] : coeffs_) {
        cplx c = v.at(comp);
        if (c != cplx(0.0, 0.0)) r.coeffs_[key] = {c};
    }
    return r;
}

BorelSeries BorelSeries::with_truncation(int M_max, int J_max) const {
    BorelSeries r(n_vars_, n_comps_, M_max, J_max);
    for (const auto& [key, v] : coeffs_) {
        if (key.m > M_max || key.j.degree() > J_max) continue;
        r.coeffs_[key] = v;
    }
    return r;
}

std::vector<cplx> BorelSeries::w_poly(std::size_t comp, const MultiIndex& j) const {
    std::vector<cplx> p(static_cast<std::size_t>(M_max_) + 1, cplx(0.0, 0.0));
    for (const auto& [key, v] : coeffs_)
        if (key.j == j) p[key.m] = v.at(comp);
    return p;
}

std::vector<cplx> BorelSeries::eval(cplx w, const std::vector<cplx>& z) const {
    if (z.size() != n_vars_) throw std::invalid_argument("borel series::eval: z dimension mismatch");
    std::vector<cplx> out(n_comps_, cplx(0.0, 0.0));
    for (const auto& [key, v] : coeffs_) {
        cplx mono = ipow(w, key.m);
        for (std::size_t s = 0; s < n_vars_; ++s) mono *= ipow(z[s], key.j[s]);
        for (std::size_t c = 0; c < n_comps_; ++c) out[c] += v[c] * mono;
    }
    return out;
}

BorelSeries& BorelSeries::operator*=(cplx scale) {
    if (scale == cplx(0.0, 0.0)) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [key, v] : coeffs_)
        for (cplx& c : v) c *= scale;
    return *this;
}

BorelSeries add(const BorelSeries& a, const BorelSeries& b) {
    if (a.n_vars() != b.n_vars() || a.n_comps() != b.n_comps())
        throw std::invalid_argument("borel series::add: shape mismatch");
    BorelSeries r(a.n_vars(), a.n_comps(), std::min(a.M_max(), b.M_max()),
                  std::min(a.J_max(), b.J_max()));
    for (const auto& [key, v] : a.coeffs())
        for (std::size_t c = 0; c < v.size(); ++c) r.add_clipped(key.m, key.j, c, v[c]);
    for (const auto& [key, v] : b.coeffs())
        for (std::size_t c = 0; c < v.size(); ++c) r.add_clipped(key.m, key.j, c, v[c]);
    r.prune_zeros();
    return r;
}

BorelSeries mul_pointwise(const BorelSeries& a, const BorelSeries& b) {
    if (a.n_vars() != b.n_vars())
        throw std::invalid_argument("borel series::mul_pointwise: variable mismatch");
    const bool a_scalar = a.n_comps() == 1;
    const bool b_scalar = b.n_comps() == 1;
    if (!a_scalar && !b_scalar && a.n_comps() != b.n_comps())
        throw std::invalid_argument("borel series::mul_pointwise: component mismatch");
    const std::size_t n_comps = std::max(a.n_comps(), b.n_comps());
    BorelSeries r(a.n_vars(), n_comps, std::min(a.M_max(), b.M_max()),
                  std::min(a.J_max(), b.J_max()));
    for (const auto& [ka, va] : a.coeffs()) {
        if (ka.m > r.M_max()) break;
        for (const auto& [kb, vb] : b.coeffs()) {
            const int m = ka.m + kb.m;
            if (m > r.M_max()) break;
            if (ka.j.degree() + kb.j.degree() > r.J_max()) continue;
            const MultiIndex j = ka.j + kb.j;
            for (std::size_t c = 0; c < n_comps; ++c)
                r.add_clipped(m, j, c, (a_scalar ? va[0] : va[c]) * (b_scalar ? vb[0] : vb[c]));
        }
    }
    r.prune_zeros();
    return r;
}

BorelSeries partial_z(const BorelSeries& a, std::size_t q1based) {
    if (q1based < 1 || q1based > a.n_vars())
        throw std::invalid_argument("borel series::partial_z: variable index out of range");
    BorelSeries r(a.n_vars(), a.n_comps(), a.M_max(), a.J_max());
    for (const auto& [key, v] : a.coeffs()) {
        MultiIndex jm;
        if (!key.j.try_minus_unit(q1based, jm)) continue;
        const double factor = key.j.at1(q1based);
        for (std::size_t c = 0; c < v.size(); ++c) r.add_clipped(key.m, jm, c, factor * v[c]);
    }
    return r;
}

BorelSeries borel_transform(const TruncatedSeries& h, int k) {
    if (k < 1) throw std::invalid_argument("borel_transform: k must be >= 1");
    if (h.has_constant_x_term())
        throw std::invalid_argument("borel_transform: series must have no constant x-term");
    BorelSeries H(h.n_vars(), h.n_comps(), std::max(h.L_max() - 1, 0), h.J_max());
    for (const auto& [key, v] : h.coeffs()) {
        const double g = gamma_pos(static_cast<double>(key.l) / k);
        for (std::size_t c = 0; c < v.size(); ++c)
            H.add_clipped(key.l - 1, key.j, c, v[c] / g);
    }
    return H;
}

TruncatedSeries inverse_borel(const BorelSeries& H, int k) {
    if (k < 1) throw std::invalid_argument("inverse_borel: k must be >= 1");
    TruncatedSeries h(H.n_vars(), H.n_comps(), H.M_max() + 1, H.J_max());
    for (const auto& [key, v] : H.coeffs()) {
        const double g = gamma_pos((key.m + 1.0) / k);
        for (std::size_t c = 0; c < v.size(); ++c)
            h.add_clipped(key.m + 1, key.j, c, v[c] * g);
    }
    return h;
}

GevreyFit gevrey_fit(const TruncatedSeries& h, int k, double z_radius) {
    if (k < 1) throw std::invalid_argument("gevrey_fit: k must be >= 1");
    if (h.coeffs().empty()) throw std::invalid_argument("gevrey_fit: all-zero series");
    GevreyFit fit;
    fit.k_assumed = k;
    fit.per_order_norms.assign(static_cast<std::size_t>(h.L_max()) + 1, 0.0);
    for (const auto& [key, v] : h.coeffs()) {
        double comp_max = 0.0;
        for (cplx c : v) comp_max = std::max(comp_max, std::abs(c));
        fit.per_order_norms[key.l] += comp_max * std::pow(z_radius, key.j.degree());
    }

    // linear least squares on l >= 2 with nonzero norms
    std::vector<double> xs, ys;
    for (int l = 2; l <= h.L_max(); ++l) {
        const double norm = fit.per_order_norms[l];
        if (norm <= 0.0) continue;
        xs.push_back(l - 1.0);
        ys.push_back(std::log(norm) - lgamma_pos(static_cast<double>(l) / k));
    }
    if (xs.size() < 2) {
        fit.degenerate = true;
        fit.K_fit = fit.per_order_norms.size() > 1 ? std::max(fit.per_order_norms[1], 1.0) : 1.0;
        fit.T_fit = 1.0;
        return fit;
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double m = static_cast<double>(xs.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / m;
    fit.T_fit = std::exp(slope);
    fit.K_fit = std::exp(intercept);
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (slope * xs[i] + intercept);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / m);
    return fit;
}

}  // namespace nfk
