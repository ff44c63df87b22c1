#pragma once

#include <map>
#include <utility>
#include <vector>

#include "nfk/borel.hpp"
#include "nfk/spectrum.hpp"

namespace nfk {

// Step vectors d_s = e_s - e_{s+1}; a path (p_1,...,p_l) connects m to j when
// j = m - sum_s d_{p_s}. The step multiset of a path is forced by the
// endpoints (partial sums of m - j), so every path between fixed endpoints
// has the same length and paths are exactly the orderings of that multiset.
std::vector<int> d_vector(std::size_t s1based, std::size_t n);

struct PathSet {
    MultiIndex source;                   // m
    MultiIndex target;                   // j
    int length = 0;                      // l(m, j)
    std::vector<std::vector<int>> paths; // step tuples, entries in 1..n-1
};

// All m in N_0^n reachable from j by nonempty paths (|m| = |j| throughout).
std::vector<MultiIndex> cone(const MultiIndex& j, std::size_t n);

// Full enumeration of P(m, j); empty path set when no path exists, a single
// empty path when m = j.
PathSet enumerate_paths(const MultiIndex& m, const MultiIndex& j, std::size_t n);

// Solution of the Borel-plane coefficient equations. Slot values are
// w-polynomials; division by (lambda_i - <j,lambda> - w^k) is carried out
// degreewise, which keeps the algebra exact at the truncation.
struct BorelInverse {
    BorelSeries G;
    BorelSeries Phi;
};

// Last-component solution by the explicit path formula: the direct T-image
// plus one T/K-operator chain per path into each cone source. Input and
// output are scalar series (the z-slots of component n).
BorelSeries phi_n_solution(const BorelSeries& H_n, const Spectrum& spec,
                           const ResonanceSet& rset);

// Backward induction over components i = n..1 and the well-ordering of the
// z-slots; resonant slots get Phi = 0 and the G-value of the coupled
// equation.
BorelInverse phi_backward_induction(const BorelSeries& H, const Spectrum& spec,
                                    const ResonanceSet& rset);

// Assembles the coupled linear system per total z-degree level and solves
// it densely; the independent cross-check of the recursive route.
BorelInverse dense_oracle(const BorelSeries& H, const Spectrum& spec, const ResonanceSet& rset);

// Pointwise rational evaluation of the same solution at one w (used for
// norm checks on Omega where the polynomial representation is not valid).
struct PointwiseSolution {
    std::map<std::pair<int, MultiIndex>, cplx> phi;
    std::map<std::pair<int, MultiIndex>, cplx> g;
};
PointwiseSolution pointwise_solve(const BorelSeries& H, const Spectrum& spec,
                                  const ResonanceSet& rset, cplx w);

// 0.9 * min |divisor|^{1/k} over non-resonant slots: the largest disk on
// which the degreewise division (a geometric expansion in w^k) represents
// the rational solution.
double polynomial_validity_radius(const Spectrum& spec, const ResonanceSet& rset);

}  // namespace nfk
