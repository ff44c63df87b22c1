#include "nfk/convolution.hpp"

#include <cmath>
#include <stdexcept>

#include "nfk/special.hpp"

namespace nfk {

void QuadratureConfig::validate(int k) const {
    if (node_count < 8) throw std::invalid_argument("quadrature: need at least 8 nodes");
    if (k < 1) throw std::invalid_argument("quadrature: k must be >= 1");
    if (!(jacobi_exponent(k) > -1.0))
        throw std::invalid_argument("quadrature: jacobi exponent must exceed -1");
}

double convolve_monomial_coeff(int a, int b, int k) {
    if (a < 0 || b < 0) throw std::invalid_argument("convolve_monomial: negative degree");
    if (k < 1) throw std::invalid_argument("convolve_monomial: k must be >= 1");
    return beta_pos((b + 1.0) / k, (a + 1.0) / k);
}

BorelSeries convolve_series(const BorelSeries& H, const BorelSeries& J, int k) {
    if (H.n_vars() != J.n_vars())
        throw std::invalid_argument("convolve_series: variable mismatch");
    const bool h_scalar = H.n_comps() == 1;
    const bool j_scalar = J.n_comps() == 1;
    if (!h_scalar && !j_scalar && H.n_comps() != J.n_comps())
        throw std::invalid_argument("convolve_series: component mismatch");
    const std::size_t n_comps = std::max(H.n_comps(), J.n_comps());
    BorelSeries r(H.n_vars(), n_comps, std::min(H.M_max(), J.M_max()),
                  std::min(H.J_max(), J.J_max()));
    for (const auto& [ka, va] : H.coeffs()) {
        if (ka.m + 1 > r.M_max()) break;
        for (const auto& [kb, vb] : J.coeffs()) {
            const int m = ka.m + kb.m + 1;
            if (m > r.M_max()) break;
            if (ka.j.degree() + kb.j.degree() > r.J_max()) continue;
            const double beta = convolve_monomial_coeff(ka.m, kb.m, k);
            const MultiIndex j = ka.j + kb.j;
            for (std::size_t c = 0; c < n_comps; ++c)
                r.add_clipped(m, j, c,
                              beta * (h_scalar ? va[0] : va[c]) * (j_scalar ? vb[0] : vb[c]));
        }
    }
    r.prune_zeros();
    return r;
}

cplx convolve_numeric(const std::function<cplx(cplx)>& H, const std::function<cplx(cplx)>& J,
                      cplx w, int k, const QuadratureConfig& cfg) {
    cfg.validate(k);
    const double e = cfg.jacobi_exponent(k);
    const QuadratureRule rule = gauss_jacobi_01(cfg.node_count, e, e);
    cplx acc(0.0, 0.0);
    const double inv_k = 1.0 / static_cast<double>(k);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = rule.nodes[i];
        const cplx a = H(w * std::pow(1.0 - s, inv_k));
        const cplx b = J(w * std::pow(s, inv_k));
        const cplx term = a * b;
        if (!std::isfinite(term.real()) || !std::isfinite(term.imag()))
            throw std::runtime_error("convolve_numeric: non-finite integrand value");
        acc += rule.weights[i] * term;
    }
    return w * acc;
}

BorelSeries conv_power(const BorelSeries& H, const MultiIndex& j, int k) {
    if (j.size() != H.n_comps() && H.n_comps() != 1)
        throw std::invalid_argument("conv_power: index length must match component count");
    if (j.degree() < 1) throw std::invalid_argument("conv_power: empty index");
    BorelSeries acc;
    bool first = true;
    for (std::size_t s = 0; s < j.size(); ++s) {
        const BorelSeries comp = H.n_comps() == 1 ? H : H.component(s);
        for (int p = 0; p < j[s]; ++p) {
            if (first) {
                acc = comp;
                first = false;
            } else {
                acc = convolve_series(acc, comp, k);
            }
        }
    }
    return acc;
}

cplx unit_of_x_value(int k) { return cplx(1.0 / gamma_pos(1.0 / k), 0.0); }

BorelSeries unit_of_x(std::size_t n_vars, int M_max, int J_max, int k) {
    BorelSeries u(n_vars, 1, M_max, J_max);
    u.set(0, MultiIndex(n_vars), {unit_of_x_value(k)});
    return u;
}

BorelSeries convolve_unit_x(const BorelSeries& H, int k) {
    BorelSeries r(H.n_vars(), H.n_comps(), H.M_max(), H.J_max());
    const double inv_g1k = 1.0 / gamma_pos(1.0 / k);
    for (const auto& [key, v] : H.coeffs()) {
        const double beta = convolve_monomial_coeff(0, key.m, k) * inv_g1k;
        for (std::size_t c = 0; c < v.size(); ++c)
            r.add_clipped(key.m + 1, key.j, c, beta * v[c]);
    }
    return r;
}

BorelSeries h_star(const TruncatedSeries& f, const BorelSeries& Psi, int k) {
    if (Psi.n_comps() != f.n_vars())
        throw std::invalid_argument("h_star: Psi needs one component per variable");
    if (f.n_vars() != Psi.n_vars()) throw std::invalid_argument("h_star: variable mismatch");
    const std::size_t n = f.n_vars();
    const int M = Psi.M_max();
    const int J = std::min(f.J_max(), Psi.J_max());

    // convolution power tables Psi_s^{*p}
    std::vector<int> max_pow(n, 0);
    for (const auto& [key, v] : f.coeffs())
        for (std::size_t s = 0; s < n; ++s) max_pow[s] = std::max(max_pow[s], key.j[s]);
    std::vector<std::vector<BorelSeries>> pow(n);
    for (std::size_t s = 0; s < n; ++s) {
        pow[s].resize(static_cast<std::size_t>(max_pow[s]) + 1);
        if (max_pow[s] >= 1) pow[s][1] = Psi.component(s);
        for (int p = 2; p <= max_pow[s]; ++p)
            pow[s][p] = convolve_series(pow[s][p - 1], pow[s][1], k);
    }

    // Borel transforms of the x-series in each z-slot of f
    std::map<MultiIndex, BorelSeries> borel_fj;
    std::map<MultiIndex, std::vector<cplx>> const_fj;
    for (const auto& [key, v] : f.coeffs()) {
        if (key.l == 0) {
            const_fj[key.j] = v;
            continue;
        }
        auto it = borel_fj.find(key.j);
        if (it == borel_fj.end())
            it = borel_fj.emplace(key.j, BorelSeries(n, f.n_comps(), M, J)).first;
        const double g = gamma_pos(static_cast<double>(key.l) / k);
        for (std::size_t c = 0; c < v.size(); ++c)
            it->second.add_clipped(key.l - 1, MultiIndex(n), c, v[c] / g);
    }

    BorelSeries out(n, f.n_comps(), M, J);

    // binomial expansion over m <= j; scalar factor z^{j-m} times the
    // convolution product of Psi powers
    std::vector<MultiIndex> slots;
    for (const auto& [j, b] : borel_fj) slots.push_back(j);
    for (const auto& [j, v] : const_fj)
        if (!borel_fj.count(j)) slots.push_back(j);

    for (const MultiIndex& j : slots) {
        const bool has_borel = borel_fj.count(j) > 0;
        const bool has_const = const_fj.count(j) > 0;
        // enumerate 0 <= m <= j componentwise
        std::vector<int> m(n, 0);
        while (true) {
            const MultiIndex mi(m);
            double binom = 1.0;
            for (std::size_t s = 0; s < n; ++s) {
                // C(j_s, m_s)
                double c = 1.0;
                for (int t = 0; t < m[s]; ++t)
                    c = c * (j[s] - t) / (t + 1.0);
                binom *= c;
            }
            std::vector<int> rest(n);
            for (std::size_t s = 0; s < n; ++s) rest[s] = j[s] - m[s];
            const MultiIndex zslot(rest);
            const int mdeg = mi.degree();
            if (mdeg > 0 || has_borel) {
                // product of Psi powers (empty product for m = 0)
                BorelSeries psi_pow;
                bool have = false;
                for (std::size_t s = 0; s < n; ++s) {
                    if (m[s] == 0) continue;
                    const BorelSeries& p = pow[s][m[s]];
                    psi_pow = have ? convolve_series(psi_pow, p, k) : p;
                    have = true;
                }
                // term = [B(f_j) *_k psi_pow] or B(f_j) (m = 0) or f0_j * psi_pow
                if (has_borel) {
                    const BorelSeries& B = borel_fj.at(j);
                    BorelSeries term = have ? convolve_series(B, psi_pow, k) : B;
                    for (const auto& [tk, tv] : term.coeffs())
                        for (std::size_t c = 0; c < tv.size(); ++c)
                            out.add_clipped(tk.m, tk.j + zslot, c, binom * tv[c]);
                }
                if (has_const && have) {
                    const std::vector<cplx>& f0 = const_fj.at(j);
                    for (const auto& [tk, tv] : psi_pow.coeffs())
                        for (std::size_t c = 0; c < f0.size(); ++c)
                            out.add_clipped(tk.m, tk.j + zslot, c, binom * tv[0] * f0[c]);
                }
            }
            // next m
            std::size_t pos = 0;
            while (pos < n) {
                if (m[pos] < j[pos]) {
                    ++m[pos];
                    for (std::size_t q = 0; q < pos; ++q) m[q] = 0;
                    break;
                }
                ++pos;
            }
            if (pos == n) break;
        }
    }
    out.prune_zeros();
    return out;
}

}  // namespace nfk
