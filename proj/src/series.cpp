#include "nfk/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nfk {

namespace {

void check_vars(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.n_vars() != b.n_vars())
        throw std::invalid_argument("series: variable-count mismatch");
}

bool all_zero(const std::vector<cplx>& v) {
    return std::all_of(v.begin(), v.end(), [](cplx c) { return c == cplx(0.0, 0.0); });
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::size_t n_vars, std::size_t n_comps, int L_max, int J_max)
    : n_vars_(n_vars), n_comps_(n_comps), L_max_(L_max), J_max_(J_max) {
    if (n_comps == 0) throw std::invalid_argument("series: zero components");
    if (L_max < 0 || J_max < 0) throw std::invalid_argument("series: negative truncation");
}

void TruncatedSeries::set(int l, const MultiIndex& j, std::vector<cplx> value) {
    if (j.size() != n_vars_) throw std::invalid_argument("series::set: index dimension mismatch");
    if (value.size() != n_comps_) throw std::invalid_argument("series::set: component mismatch");
    if (l < 0) throw std::invalid_argument("series::set: negative x-degree");
    if (l > L_max_ || j.degree() > J_max_)
        throw std::invalid_argument("series::set: key beyond truncation");
    if (all_zero(value))
        coeffs_.erase(Key{l, j});
    else
        coeffs_[Key{l, j}] = std::move(value);
}

void TruncatedSeries::set(int l, const MultiIndex& j, std::size_t comp, cplx value) {
    auto v = coeff(l, j);
    v.at(comp) = value;
    set(l, j, std::move(v));
}

void TruncatedSeries::add_clipped(int l, const MultiIndex& j, std::size_t comp, cplx value) {
    if (l < 0 || l > L_max_ || j.degree() > J_max_) return;
    if (value == cplx(0.0, 0.0)) return;
    auto it = coeffs_.find(Key{l, j});
    if (it == coeffs_.end()) {
        std::vector<cplx> v(n_comps_, cplx(0.0, 0.0));
        v.at(comp) = value;
        coeffs_.emplace(Key{l, j}, std::move(v));
    } else {
        it->second.at(comp) += value;
    }
}

std::vector<cplx> TruncatedSeries::coeff(int l, const MultiIndex& j) const {
    auto it = coeffs_.find(Key{l, j});
    if (it != coeffs_.end()) return it->second;
    return std::vector<cplx>(n_comps_, cplx(0.0, 0.0));
}

cplx TruncatedSeries::coeff(int l, const MultiIndex& j, std::size_t comp) const {
    auto it = coeffs_.find(Key{l, j});
    if (it != coeffs_.end()) return it->second.at(comp);
    return {0.0, 0.0};
}

bool TruncatedSeries::has_constant_x_term() const {
    return !coeffs_.empty() && coeffs_.begin()->first.l == 0;
}

double TruncatedSeries::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [key, v] : coeffs_)
        for (cplx c : v) m = std::max(m, std::abs(c));
    return m;
}

void TruncatedSeries::prune_zeros() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (all_zero(it->second))
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

TruncatedSeries TruncatedSeries::with_truncation(int L_max, int J_max) const {
    TruncatedSeries r(n_vars_, n_comps_, L_max, J_max);
    for (const auto& [key, v] : coeffs_) {
        if (key.l > L_max || key.j.degree() > J_max) continue;
        r.coeffs_[key] = v;
    }
    return r;
}

TruncatedSeries TruncatedSeries::component(std::size_t comp) const {
    TruncatedSeries r(n_vars_, 1, L_max_, J_max_);
    for (const auto& [key, v] : coeffs_) {
        cplx c = v.at(comp);
        if (c != cplx(0.0, 0.0)) r.coeffs_[key] = {c};
    }
    return r;
}

TruncatedSeries& TruncatedSeries::operator*=(cplx scale) {
    if (scale == cplx(0.0, 0.0)) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [key, v] : coeffs_)
        for (cplx& c : v) c *= scale;
    return *this;
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_vars(a, b);
    if (a.n_comps() != b.n_comps())
        throw std::invalid_argument("series::add: component mismatch");
    TruncatedSeries r(a.n_vars(), a.n_comps(), std::min(a.L_max(), b.L_max()),
                      std::min(a.J_max(), b.J_max()));
    for (const auto& [key, v] : a.coeffs()) {
        if (key.l > r.L_max() || key.j.degree() > r.J_max()) continue;
        r.coeffs_[key] = v;
    }
    for (const auto& [key, v] : b.coeffs()) {
        if (key.l > r.L_max() || key.j.degree() > r.J_max()) continue;
        auto it = r.coeffs_.find(key);
        if (it == r.coeffs_.end()) {
            r.coeffs_[key] = v;
        } else {
            for (std::size_t c = 0; c < v.size(); ++c) it->second[c] += v[c];
        }
    }
    r.prune_zeros();
    return r;
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_vars(a, b);
    const bool a_scalar = a.n_comps() == 1;
    const bool b_scalar = b.n_comps() == 1;
    if (!a_scalar && !b_scalar && a.n_comps() != b.n_comps())
        throw std::invalid_argument("series::mul: component mismatch");
    const std::size_t n_comps = std::max(a.n_comps(), b.n_comps());
    TruncatedSeries r(a.n_vars(), n_comps, std::min(a.L_max(), b.L_max()),
                      std::min(a.J_max(), b.J_max()));
    for (const auto& [ka, va] : a.coeffs()) {
        if (ka.l > r.L_max()) break;  // map is ordered by l first
        for (const auto& [kb, vb] : b.coeffs()) {
            const int l = ka.l + kb.l;
            if (l > r.L_max()) break;
            const int jdeg = ka.j.degree() + kb.j.degree();
            if (jdeg > r.J_max()) continue;
            const MultiIndex j = ka.j + kb.j;
            for (std::size_t c = 0; c < n_comps; ++c) {
                const cplx ca = a_scalar ? va[0] : va[c];
                const cplx cb = b_scalar ? vb[0] : vb[c];
                r.add_clipped(l, j, c, ca * cb);
            }
        }
    }
    r.prune_zeros();
    return r;
}

TruncatedSeries partial_z(const TruncatedSeries& a, std::size_t q1based) {
    if (q1based < 1 || q1based > a.n_vars())
        throw std::invalid_argument("series::partial_z: variable index out of range");
    TruncatedSeries r(a.n_vars(), a.n_comps(), a.L_max(), a.J_max());
    for (const auto& [key, v] : a.coeffs()) {
        MultiIndex jm;
        if (!key.j.try_minus_unit(q1based, jm)) continue;
        const double factor = key.j.at1(q1based);
        for (std::size_t c = 0; c < v.size(); ++c)
            r.add_clipped(key.l, jm, c, factor * v[c]);
    }
    return r;
}

TruncatedSeries x_weighted_derivative(const TruncatedSeries& a, int k) {
    if (k < 1) throw std::invalid_argument("series::x_weighted_derivative: k must be >= 1");
    TruncatedSeries r(a.n_vars(), a.n_comps(), a.L_max(), a.J_max());
    for (const auto& [key, v] : a.coeffs()) {
        const double factor = static_cast<double>(key.l) / static_cast<double>(k);
        for (std::size_t c = 0; c < v.size(); ++c)
            r.add_clipped(key.l + k, key.j, c, factor * v[c]);
    }
    return r;
}

TruncatedSeries compose_shift(const TruncatedSeries& f, const TruncatedSeries& phi) {
    if (phi.n_comps() != f.n_vars())
        throw std::invalid_argument("series::compose_shift: phi needs one component per variable");
    check_vars(f, phi);
    const std::size_t n = f.n_vars();
    const int L = std::min(f.L_max(), phi.L_max());
    const int J = std::min(f.J_max(), phi.J_max());

    // Power tables for (z_s + x*phi_s)^p, built per variable up to the
    // largest exponent appearing in f.
    std::vector<int> max_pow(n, 0);
    for (const auto& [key, v] : f.coeffs())
        for (std::size_t s = 0; s < n; ++s) max_pow[s] = std::max(max_pow[s], key.j[s]);

    std::vector<std::vector<TruncatedSeries>> pow(n);
    for (std::size_t s = 0; s < n; ++s) {
        TruncatedSeries base(n, 1, L, J);
        base.set(0, MultiIndex::unit(n, s + 1), {cplx(1.0, 0.0)});
        TruncatedSeries shift = phi.component(s).with_truncation(L, J);
        // multiply by x
        TruncatedSeries xshift(n, 1, L, J);
        for (const auto& [key, v] : shift.coeffs()) xshift.add_clipped(key.l + 1, key.j, 0, v[0]);
        base = add(base, xshift);

        pow[s].resize(static_cast<std::size_t>(max_pow[s]) + 1);
        TruncatedSeries unit(n, 1, L, J);
        unit.set(0, MultiIndex(n), {cplx(1.0, 0.0)});
        pow[s][0] = unit;
        for (int p = 1; p <= max_pow[s]; ++p) pow[s][p] = mul(pow[s][p - 1], base);
    }

    TruncatedSeries r(n, f.n_comps(), L, J);
    for (const auto& [key, v] : f.coeffs()) {
        if (key.l > L) break;
        TruncatedSeries term(n, 1, L - key.l, J);
        term.set(0, MultiIndex(n), {cplx(1.0, 0.0)});
        for (std::size_t s = 0; s < n; ++s)
            if (key.j[s] > 0) term = mul(term, pow[s][key.j[s]]);
        for (const auto& [tk, tv] : term.coeffs())
            for (std::size_t c = 0; c < f.n_comps(); ++c)
                r.add_clipped(tk.l + key.l, tk.j, c, tv[0] * v[c]);
    }
    r.prune_zeros();
    return r;
}

TruncatedSeries monomial(std::size_t n_vars, std::size_t n_comps, int L_max, int J_max,
                         int l, const MultiIndex& j, std::size_t comp, cplx value) {
    TruncatedSeries r(n_vars, n_comps, L_max, J_max);
    r.set(l, j, comp, value);
    return r;
}

std::vector<MultiIndex> indices_up_to(std::size_t n, int max_degree) {
    std::vector<MultiIndex> out;
    std::vector<int> cur(n, 0);
    // depth-first enumeration, then well-order sort
    auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
        if (pos + 1 == n) {
            for (int v = 0; v <= remaining; ++v) {
                cur[pos] = v;
                out.emplace_back(cur);
            }
            cur[pos] = 0;
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[pos] = v;
            self(self, pos + 1, remaining - v);
        }
        cur[pos] = 0;
    };
    if (n > 0) rec(rec, 0, max_degree);
    std::sort(out.begin(), out.end(), well_order_less);
    return out;
}

}  // namespace nfk
