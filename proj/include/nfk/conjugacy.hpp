#pragma once

#include "nfk/series.hpp"
#include "nfk/spectrum.hpp"

namespace nfk {

// Output of the order-by-order solve of
//
//   g - A phi + (d phi/dz) A z + (1/k) x^{k+1} d phi/dx
//       = f(x, z + x phi) - x (d phi/dz) g - (1/k) x^k phi.
//
// g is supported on resonant (i, j) slots, phi on their complement;
// order_zero duplicates the x-degree-0 parts.
struct NormalFormResult {
    TruncatedSeries g_hat;    // all x-orders, z-support inside the resonance set
    TruncatedSeries phi_hat;  // all x-orders, z-support in the complement
    TruncatedSeries g0;       // g(0, .)
    TruncatedSeries phi0;     // phi(0, .)
    double residual_norm = 0.0;
};

struct OrderZeroResult {
    TruncatedSeries g0;
    TruncatedSeries phi0;
    // remaining problem: same f, with the x-degree-0 slots already resolved
    TruncatedSeries f;
};

// Solves g(0,z) - A phi(0,z) + d_z phi(0,z) A z = f(0,z) slotwise in the
// backward component / well-ordered z sweep; resonant slots keep their
// right side in g0.
OrderZeroResult solve_order_zero(const TruncatedSeries& f, const Spectrum& spec,
                                 const ResonanceSet& rset);

// Full solve up to x-degree L_max and z-degree J_max. f may carry constant
// x-terms; x-order zero is the first step of the same sweep.
NormalFormResult solve_conjugacy(const TruncatedSeries& f, const Spectrum& spec,
                                 const ResonanceSet& rset, int L_max, int J_max);

// Max defect coefficient of the conjugation equation over the slots that
// the truncations determine exactly (l <= L_max - k, |j| <= J_max - deg_z f).
double conjugacy_residual(const TruncatedSeries& f, const Spectrum& spec,
                          const NormalFormResult& result);

// z -> (z_1, r z_2, ..., r^{n-1} z_n) push-forward: slot (l, j, i) scales by
// r^{sum_s (s-1) j_s - (i-1)} for an n-component series (no component
// adjustment for scalar series). Self-inverse under r -> 1/r.
TruncatedSeries jordan_rescale(const TruncatedSeries& series, double r);

}  // namespace nfk
