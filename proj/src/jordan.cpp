#include "nfk/jordan.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nfk/special.hpp"

namespace nfk {

std::vector<int> d_vector(std::size_t s1based, std::size_t n) {
    if (s1based < 1 || s1based + 1 > n)
        throw std::invalid_argument("d_vector: step index out of range");
    std::vector<int> d(n, 0);
    d[s1based - 1] = 1;
    d[s1based] = -1;
    return d;
}

namespace {

// Step counts c_s of the unique multiset connecting m to j, or empty when
// no path exists. c_s = sum_{t<=s} (m_t - j_t), all required >= 0.
std::vector<int> step_counts(const MultiIndex& m, const MultiIndex& j) {
    const std::size_t n = m.size();
    std::vector<int> c(n - 1, 0);
    int acc = 0;
    for (std::size_t t = 0; t + 1 < n; ++t) {
        acc += m[t] - j[t];
        if (acc < 0) return {};
        c[t] = acc;
    }
    acc += m[n - 1] - j[n - 1];
    if (acc != 0) return {};
    return c;
}

}  // namespace

std::vector<MultiIndex> cone(const MultiIndex& j, std::size_t n) {
    if (j.size() != n) throw std::invalid_argument("cone: dimension mismatch");
    std::vector<MultiIndex> out;
    if (n < 2) return out;
    for (const MultiIndex& m : indices_up_to(n, j.degree())) {
        if (m.degree() != j.degree() || m == j) continue;
        if (!step_counts(m, j).empty()) out.push_back(m);
    }
    return out;
}

PathSet enumerate_paths(const MultiIndex& m, const MultiIndex& j, std::size_t n) {
    if (m.size() != n || j.size() != n)
        throw std::invalid_argument("enumerate_paths: dimension mismatch");
    PathSet ps;
    ps.source = m;
    ps.target = j;
    if (m == j) {
        ps.length = 0;
        ps.paths.push_back({});
        return ps;
    }
    const std::vector<int> counts = step_counts(m, j);
    if (counts.empty()) return ps;
    std::vector<int> steps;
    for (std::size_t s = 0; s < counts.size(); ++s)
        for (int t = 0; t < counts[s]; ++t) steps.push_back(static_cast<int>(s) + 1);
    ps.length = static_cast<int>(steps.size());
    std::sort(steps.begin(), steps.end());
    do {
        ps.paths.push_back(steps);
    } while (std::next_permutation(steps.begin(), steps.end()));
    return ps;
}

namespace {

// Degreewise application of T[i,j]: (c - w^k) Phi = -h, i.e.
// Phi[m] = (Phi[m-k] - h[m]) / c.
std::vector<cplx> apply_T(const std::vector<cplx>& h, cplx c, int k) {
    std::vector<cplx> phi(h.size(), cplx(0.0, 0.0));
    for (std::size_t m = 0; m < h.size(); ++m) {
        cplx tail = m >= static_cast<std::size_t>(k) ? phi[m - k] : cplx(0.0, 0.0);
        phi[m] = (tail - h[m]) / c;
    }
    return phi;
}

bool poly_nonzero(const std::vector<cplx>& p) {
    for (cplx c : p)
        if (c != cplx(0.0, 0.0)) return true;
    return false;
}

cplx divisor_checked(const Spectrum& spec, std::size_t i, const MultiIndex& j) {
    const cplx c = divisor(spec, i, j);
    if (c == cplx(0.0, 0.0))
        throw std::runtime_error("jordan: vanishing divisor outside the resonance set at (" +
                                 std::to_string(i) + ", " + j.str() + ")");
    return c;
}

}  // namespace

BorelSeries phi_n_solution(const BorelSeries& H_n, const Spectrum& spec,
                           const ResonanceSet& rset) {
    if (H_n.n_comps() != 1)
        throw std::invalid_argument("phi_n_solution: expects the scalar component series");
    const std::size_t n = spec.n;
    // divisor for possibly signed intermediate exponents
    const auto sdivisor = [&](const std::vector<int>& e) {
        cplx dot(0.0, 0.0);
        for (std::size_t s = 0; s < n; ++s) dot += static_cast<double>(e[s]) * spec.lambda[s];
        const cplx c = spec.lambda[n - 1] - dot;
        if (c == cplx(0.0, 0.0))
            throw std::runtime_error("phi_n_solution: vanishing divisor along a path");
        return c;
    };
    BorelSeries Phi(H_n.n_vars(), 1, H_n.M_max(), H_n.J_max());
    for (const MultiIndex& j : indices_up_to(n, H_n.J_max())) {
        if (rset.contains(n, j)) continue;
        std::vector<cplx> acc = apply_T(H_n.w_poly(0, j), divisor_checked(spec, n, j), spec.k);
        for (const MultiIndex& m : cone(j, n)) {
            // sources inside the resonance set carry Phi = 0 and are pruned;
            // by set closure no contributing path crosses the set elsewhere
            if (rset.contains(n, m)) continue;
            const auto Hm = H_n.w_poly(0, m);
            if (!poly_nonzero(Hm)) continue;
            const PathSet ps = enumerate_paths(m, j, n);
            for (const auto& path : ps.paths) {
                // scalar prefactors and T-chain along the path; a step that
                // drives an exponent to -1 carries the factor 0, so those
                // orderings drop out on their own
                std::vector<cplx> term = apply_T(Hm, divisor_checked(spec, n, m), spec.k);
                std::vector<int> idx = m.entries();
                bool vanished = false;
                for (int p : path) {
                    idx[p - 1] -= 1;
                    idx[p] += 1;
                    if (spec.xi[p - 1] == 0 || idx[p - 1] + 1 == 0) {
                        vanished = true;
                        break;
                    }
                    const double factor = -spec.r * (idx[p - 1] + 1.0);
                    term = apply_T(term, sdivisor(idx), spec.k);
                    for (cplx& t : term) t *= factor;
                }
                if (vanished) continue;
                for (std::size_t t = 0; t < acc.size(); ++t) acc[t] += term[t];
            }
        }
        for (int m = 0; m <= Phi.M_max(); ++m) Phi.add_clipped(m, j, 0, acc[m]);
    }
    Phi.prune_zeros();
    return Phi;
}

BorelInverse phi_backward_induction(const BorelSeries& H, const Spectrum& spec,
                                    const ResonanceSet& rset) {
    const std::size_t n = spec.n;
    if (H.n_comps() != n) throw std::invalid_argument("phi_backward_induction: component mismatch");
    if (H.n_vars() != n) throw std::invalid_argument("phi_backward_induction: variable mismatch");
    BorelInverse out;
    out.G = BorelSeries(n, n, H.M_max(), H.J_max());
    out.Phi = BorelSeries(n, n, H.M_max(), H.J_max());
    const auto slots = indices_up_to(n, H.J_max());  // already in well order

    for (std::size_t i = n; i >= 1; --i) {
        for (const MultiIndex& j : slots) {
            // right-hand side H_{ij} + r xi_i Phi_{(i+1)j}
            //                 - r sum_s chi_{s+1}(j) xi_s (j_s+1) Phi_{i(j+d_s)}
            std::vector<cplx> rhs = H.w_poly(i - 1, j);
            if (i < n && spec.xi[i - 1] == 1) {
                const auto up = out.Phi.w_poly(i, j);
                for (std::size_t m = 0; m < rhs.size(); ++m) rhs[m] += spec.r * up[m];
            }
            for (std::size_t s = 1; s < n; ++s) {
                MultiIndex jd;
                if (spec.xi[s - 1] == 0 || !j.try_plus_d(s, jd)) continue;
                const double factor = spec.r * (j.at1(s) + 1.0);
                const auto prev = out.Phi.w_poly(i - 1, jd);
                for (std::size_t m = 0; m < rhs.size(); ++m) rhs[m] -= factor * prev[m];
            }
            if (rset.contains(i, j)) {
                for (int m = 0; m <= out.G.M_max(); ++m) out.G.add_clipped(m, j, i - 1, rhs[m]);
            } else {
                const auto phi = apply_T(rhs, divisor_checked(spec, i, j), spec.k);
                for (int m = 0; m <= out.Phi.M_max(); ++m) out.Phi.add_clipped(m, j, i - 1, phi[m]);
            }
        }
        if (i == 1) break;
    }
    out.G.prune_zeros();
    out.Phi.prune_zeros();
    return out;
}

BorelInverse dense_oracle(const BorelSeries& H, const Spectrum& spec, const ResonanceSet& rset) {
    const std::size_t n = spec.n;
    if (H.n_comps() != n || H.n_vars() != n)
        throw std::invalid_argument("dense_oracle: shape mismatch");
    BorelInverse out;
    out.G = BorelSeries(n, n, H.M_max(), H.J_max());
    out.Phi = BorelSeries(n, n, H.M_max(), H.J_max());

    // the couplings preserve the total z-degree, so solve level by level
    for (int level = 0; level <= H.J_max(); ++level) {
        std::vector<MultiIndex> js;
        for (const MultiIndex& j : indices_up_to(n, level))
            if (j.degree() == level) js.push_back(j);
        const std::size_t cols = n * js.size();
        auto col = [&](std::size_t i, std::size_t jq) { return (i - 1) * js.size() + jq; };

        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(cols, cols);
        std::vector<char> is_res(cols, 0);
        for (std::size_t jq = 0; jq < js.size(); ++jq) {
            const MultiIndex& j = js[jq];
            for (std::size_t i = 1; i <= n; ++i) {
                const std::size_t row = col(i, jq);
                const bool res = rset.contains(i, j);
                is_res[row] = res;
                if (res) {
                    A(row, row) = 1.0;  // unknown is G_{ij}
                } else {
                    A(row, row) = -divisor(spec, i, j);  // unknown is Phi_{ij}
                }
                if (i < n && spec.xi[i - 1] == 1 && !rset.contains(i + 1, j))
                    A(row, col(i + 1, jq)) -= spec.r;
                for (std::size_t s = 1; s < n; ++s) {
                    MultiIndex jd;
                    if (spec.xi[s - 1] == 0 || !j.try_plus_d(s, jd)) continue;
                    if (rset.contains(i, jd)) continue;
                    const auto it = std::find(js.begin(), js.end(), jd);
                    A(row, col(i, static_cast<std::size_t>(it - js.begin()))) +=
                        spec.r * (j.at1(s) + 1.0);
                }
            }
        }
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
        if (!lu.isInvertible())
            throw std::runtime_error("dense_oracle: singular level system (check the resonance set)");

        // degreewise solve; the w^k term shifts earlier Phi degrees into the RHS
        std::vector<std::vector<cplx>> phi_hist(cols);
        for (auto& h : phi_hist) h.assign(static_cast<std::size_t>(H.M_max()) + 1, cplx(0.0, 0.0));
        for (int m = 0; m <= H.M_max(); ++m) {
            Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(cols);
            for (std::size_t jq = 0; jq < js.size(); ++jq)
                for (std::size_t i = 1; i <= n; ++i) {
                    cplx v = H.coeff(m, js[jq], i - 1);
                    if (m >= spec.k && !is_res[col(i, jq)]) v -= phi_hist[col(i, jq)][m - spec.k];
                    rhs(col(i, jq)) = v;
                }
            const Eigen::VectorXcd u = lu.solve(rhs);
            for (std::size_t jq = 0; jq < js.size(); ++jq)
                for (std::size_t i = 1; i <= n; ++i) {
                    const std::size_t cidx = col(i, jq);
                    if (is_res[cidx]) {
                        out.G.add_clipped(m, js[jq], i - 1, u(cidx));
                    } else {
                        phi_hist[cidx][m] = u(cidx);
                        out.Phi.add_clipped(m, js[jq], i - 1, u(cidx));
                    }
                }
        }
    }
    out.G.prune_zeros();
    out.Phi.prune_zeros();
    return out;
}

PointwiseSolution pointwise_solve(const BorelSeries& H, const Spectrum& spec,
                                  const ResonanceSet& rset, cplx w) {
    const std::size_t n = spec.n;
    PointwiseSolution out;
    const cplx wk = ipow(w, spec.k);
    const auto slots = indices_up_to(n, H.J_max());
    for (std::size_t i = n; i >= 1; --i) {
        for (const MultiIndex& j : slots) {
            // evaluate H_{ij}(w)
            cplx rhs(0.0, 0.0);
            {
                const auto poly = H.w_poly(i - 1, j);
                for (std::size_t m = poly.size(); m-- > 0;) rhs = rhs * w + poly[m];
            }
            if (i < n && spec.xi[i - 1] == 1) rhs += spec.r * out.phi[{static_cast<int>(i) + 1, j}];
            for (std::size_t s = 1; s < n; ++s) {
                MultiIndex jd;
                if (spec.xi[s - 1] == 0 || !j.try_plus_d(s, jd)) continue;
                rhs -= spec.r * (j.at1(s) + 1.0) * out.phi[{static_cast<int>(i), jd}];
            }
            if (rset.contains(i, j)) {
                out.g[{static_cast<int>(i), j}] = rhs;
                out.phi[{static_cast<int>(i), j}] = cplx(0.0, 0.0);
            } else {
                const cplx den = divisor(spec, i, j) - wk;
                if (den == cplx(0.0, 0.0))
                    throw std::runtime_error("pointwise_solve: divisor vanishes at the sample");
                out.phi[{static_cast<int>(i), j}] = -rhs / den;
                out.g[{static_cast<int>(i), j}] = cplx(0.0, 0.0);
            }
        }
        if (i == 1) break;
    }
    return out;
}

double polynomial_validity_radius(const Spectrum& spec, const ResonanceSet& rset) {
    double min_c = std::numeric_limits<double>::infinity();
    for (const MultiIndex& j : indices_up_to(spec.n, rset.J_max()))
        for (std::size_t i = 1; i <= spec.n; ++i)
            if (!rset.contains(i, j)) min_c = std::min(min_c, std::abs(divisor(spec, i, j)));
    if (!std::isfinite(min_c)) return std::numeric_limits<double>::infinity();
    return 0.9 * std::pow(min_c, 1.0 / spec.k);
}

}  // namespace nfk
