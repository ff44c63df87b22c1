#include "nfk/conjugacy.hpp"

#include <cmath>
#include <stdexcept>

namespace nfk {

namespace {

// A h with A = Lambda + r Xi acting on the component index.
TruncatedSeries apply_A(const TruncatedSeries& h, const Spectrum& spec) {
    TruncatedSeries r(h.n_vars(), h.n_comps(), h.L_max(), h.J_max());
    for (const auto& [key, v] : h.coeffs())
        for (std::size_t i = 0; i < v.size(); ++i) {
            cplx val = spec.lambda[i] * v[i];
            if (i + 1 < v.size() && spec.xi[i] == 1) val += spec.r * v[i + 1];
            r.add_clipped(key.l, key.j, i, val);
        }
    r.prune_zeros();
    return r;
}

// (d h/dz) A z  =  sum_q (d h/dz_q) (A z)_q  with (A z)_q = lambda_q z_q + r xi_q z_{q+1}.
TruncatedSeries dz_Az(const TruncatedSeries& h, const Spectrum& spec) {
    const std::size_t n = h.n_vars();
    TruncatedSeries acc(n, h.n_comps(), h.L_max(), h.J_max());
    for (std::size_t q = 1; q <= n; ++q) {
        TruncatedSeries az(n, 1, h.L_max(), h.J_max());
        az.set(0, MultiIndex::unit(n, q), {spec.lambda[q - 1]});
        if (q < n && spec.xi[q - 1] == 1)
            az.set(0, MultiIndex::unit(n, q + 1), {cplx(spec.r, 0.0)});
        acc = add(acc, mul(partial_z(h, q), az));
    }
    return acc;
}

TruncatedSeries shift_x(const TruncatedSeries& h, int shift) {
    TruncatedSeries r(h.n_vars(), h.n_comps(), h.L_max(), h.J_max());
    for (const auto& [key, v] : h.coeffs())
        for (std::size_t c = 0; c < v.size(); ++c) r.add_clipped(key.l + shift, key.j, c, v[c]);
    return r;
}

// x (d phi/dz) g
TruncatedSeries x_dphi_g(const TruncatedSeries& phi, const TruncatedSeries& g) {
    const std::size_t n = phi.n_vars();
    TruncatedSeries acc(n, phi.n_comps(), phi.L_max(), phi.J_max());
    for (std::size_t q = 1; q <= n; ++q)
        acc = add(acc, mul(partial_z(phi, q), g.component(q - 1)));
    return shift_x(acc, 1);
}

// Right side of the conjugation equation minus the x-weighted derivative,
// truncated at x-order l_cap. Every phi/g-dependent term carries at least
// one extra power of x, so the slice at l_cap is final once all lower
// orders of (g, phi) are known.
TruncatedSeries assemble_rhs(const TruncatedSeries& f, const TruncatedSeries& g,
                             const TruncatedSeries& phi, const Spectrum& spec, int l_cap,
                             int J_max) {
    const TruncatedSeries fT = f.with_truncation(l_cap, J_max);
    const TruncatedSeries phiT = phi.with_truncation(l_cap, J_max);
    const TruncatedSeries gT = g.with_truncation(l_cap, J_max);
    TruncatedSeries rhs = compose_shift(fT, phiT);
    rhs = add(rhs, x_dphi_g(phiT, gT) *= cplx(-1.0, 0.0));
    TruncatedSeries xk_phi = shift_x(phiT, spec.k);
    xk_phi *= cplx(-1.0 / spec.k, 0.0);
    rhs = add(rhs, xk_phi);
    TruncatedSeries xd = x_weighted_derivative(phiT, spec.k);
    xd *= cplx(-1.0, 0.0);
    return add(rhs, xd);
}

}  // namespace

OrderZeroResult solve_order_zero(const TruncatedSeries& f, const Spectrum& spec,
                                 const ResonanceSet& rset) {
    const std::size_t n = spec.n;
    if (f.n_vars() != n) throw std::invalid_argument("solve_order_zero: dimension mismatch");
    if (f.n_comps() != n) throw std::invalid_argument("solve_order_zero: f needs n components");
    const int J = std::min(f.J_max(), rset.J_max());
    OrderZeroResult out;
    out.g0 = TruncatedSeries(n, n, 0, J);
    out.phi0 = TruncatedSeries(n, n, 0, J);
    out.f = f;

    const auto slots = indices_up_to(n, J);
    for (std::size_t i = n; i >= 1; --i) {
        for (const MultiIndex& j : slots) {
            cplx rhs = f.coeff(0, j, i - 1);
            if (i < n && spec.xi[i - 1] == 1) rhs += spec.r * out.phi0.coeff(0, j, i);
            for (std::size_t s = 1; s < n; ++s) {
                MultiIndex jd;
                if (spec.xi[s - 1] == 0 || !j.try_plus_d(s, jd)) continue;
                rhs -= spec.r * (j.at1(s) + 1.0) * out.phi0.coeff(0, jd, i - 1);
            }
            if (rhs == cplx(0.0, 0.0)) continue;
            if (rset.contains(i, j)) {
                out.g0.set(0, j, i - 1, rhs);
            } else {
                const cplx div = divisor(spec, i, j);
                if (div == cplx(0.0, 0.0))
                    throw std::runtime_error("solve_order_zero: zero divisor outside the resonance set");
                out.phi0.set(0, j, i - 1, -rhs / div);
            }
        }
        if (i == 1) break;
    }
    return out;
}

NormalFormResult solve_conjugacy(const TruncatedSeries& f, const Spectrum& spec,
                                 const ResonanceSet& rset, int L_max, int J_max) {
    const std::size_t n = spec.n;
    if (f.n_vars() != n) throw std::invalid_argument("solve_conjugacy: dimension mismatch");
    if (f.n_comps() != n) throw std::invalid_argument("solve_conjugacy: f needs n components");
    if (rset.J_max() < J_max)
        throw std::invalid_argument("solve_conjugacy: resonance set truncated below J_max");

    NormalFormResult res;
    res.g_hat = TruncatedSeries(n, n, L_max, J_max);
    res.phi_hat = TruncatedSeries(n, n, L_max, J_max);
    const auto slots = indices_up_to(n, J_max);

    for (int l = 0; l <= L_max; ++l) {
        const TruncatedSeries rhs_full =
            assemble_rhs(f, res.g_hat, res.phi_hat, spec, l, J_max);
        for (std::size_t i = n; i >= 1; --i) {
            for (const MultiIndex& j : slots) {
                cplx rhs = rhs_full.coeff(l, j, i - 1);
                if (i < n && spec.xi[i - 1] == 1) rhs += spec.r * res.phi_hat.coeff(l, j, i);
                for (std::size_t s = 1; s < n; ++s) {
                    MultiIndex jd;
                    if (spec.xi[s - 1] == 0 || !j.try_plus_d(s, jd)) continue;
                    rhs -= spec.r * (j.at1(s) + 1.0) * res.phi_hat.coeff(l, jd, i - 1);
                }
                if (rhs == cplx(0.0, 0.0)) continue;
                if (rset.contains(i, j)) {
                    res.g_hat.set(l, j, i - 1, rhs);
                } else {
                    const cplx div = divisor(spec, i, j);
                    if (div == cplx(0.0, 0.0))
                        throw std::runtime_error(
                            "solve_conjugacy: zero divisor outside the resonance set at (" +
                            std::to_string(i) + ", " + j.str() + ")");
                    res.phi_hat.set(l, j, i - 1, -rhs / div);
                }
            }
            if (i == 1) break;
        }
    }

    res.g0 = TruncatedSeries(n, n, 0, J_max);
    res.phi0 = TruncatedSeries(n, n, 0, J_max);
    for (const auto& [key, v] : res.g_hat.coeffs()) {
        if (key.l > 0) break;
        res.g0.set(0, key.j, v);
    }
    for (const auto& [key, v] : res.phi_hat.coeffs()) {
        if (key.l > 0) break;
        res.phi0.set(0, key.j, v);
    }
    res.residual_norm = conjugacy_residual(f, spec, res);
    return res;
}

double conjugacy_residual(const TruncatedSeries& f, const Spectrum& spec,
                          const NormalFormResult& result) {
    const TruncatedSeries& g = result.g_hat;
    const TruncatedSeries& phi = result.phi_hat;
    const int L = phi.L_max();
    const int J = phi.J_max();

    TruncatedSeries lhs = g;
    lhs = add(lhs, apply_A(phi, spec) *= cplx(-1.0, 0.0));
    lhs = add(lhs, dz_Az(phi, spec));
    lhs = add(lhs, x_weighted_derivative(phi, spec.k));

    TruncatedSeries rhs = compose_shift(f.with_truncation(L, J), phi);
    rhs = add(rhs, x_dphi_g(phi, g) *= cplx(-1.0, 0.0));
    TruncatedSeries xk_phi = shift_x(phi, spec.k);
    xk_phi *= cplx(-1.0 / spec.k, 0.0);
    rhs = add(rhs, xk_phi);

    const TruncatedSeries defect = add(lhs, rhs *= cplx(-1.0, 0.0));
    int deg_f = 0;
    for (const auto& [key, v] : f.coeffs()) deg_f = std::max(deg_f, key.j.degree());
    const int l_cap = L - spec.k;
    const int j_cap = J - std::max(deg_f, 1);
    double out = 0.0;
    for (const auto& [key, v] : defect.coeffs()) {
        if (key.l > l_cap || key.j.degree() > j_cap) continue;
        for (cplx c : v) out = std::max(out, std::abs(c));
    }
    return out;
}

TruncatedSeries jordan_rescale(const TruncatedSeries& series, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("jordan_rescale: r must be positive");
    const bool vector_field = series.n_comps() == series.n_vars() && series.n_comps() > 1;
    TruncatedSeries out(series.n_vars(), series.n_comps(), series.L_max(), series.J_max());
    for (const auto& [key, v] : series.coeffs()) {
        int zweight = 0;
        for (std::size_t s = 0; s < series.n_vars(); ++s)
            zweight += static_cast<int>(s) * key.j[s];
        for (std::size_t i = 0; i < v.size(); ++i) {
            const int p = zweight - (vector_field ? static_cast<int>(i) : 0);
            out.add_clipped(key.l, key.j, i, v[i] * std::pow(r, p));
        }
    }
    return out;
}

}  // namespace nfk
