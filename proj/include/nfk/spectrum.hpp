#pragma once

#include <complex>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "nfk/multi_index.hpp"
#include "nfk/series.hpp"

namespace nfk {

// Linear part A = Lambda + r*Xi of the singular direction: eigenvalues
// lambda_i (all nonzero), super-diagonal flags xi_i in {0,1} with xi_i = 1
// forcing lambda_{i+1} = lambda_i, Poincare rank k >= 1 and the Jordan
// scale r > 0 of the super-diagonal.
struct Spectrum {
    std::size_t n = 1;
    std::vector<cplx> lambda;
    std::vector<int> xi;  // size n-1
    int k = 1;
    double r = 1.0;

    Spectrum() = default;
    Spectrum(std::vector<cplx> lambda_, std::vector<int> xi_, int k_, double r_ = 1.0);

    bool semi_simple() const;
    void validate() const;
};

// lambda_i - <j, lambda>
cplx divisor(const Spectrum& spec, std::size_t i1based, const MultiIndex& j);

// Resonant pairs (i, j) up to |j| <= J_max. Non-members are guaranteed a
// divisor bounded below by C(1+|j|) and bounded away from the critical ray
// of direction k*theta by sector_margin. Queries beyond J_max throw rather
// than extrapolate.
class ResonanceSet {
public:
    using Pair = std::pair<int, MultiIndex>;

    ResonanceSet() = default;
    ResonanceSet(std::set<Pair> pairs, double C, int J_max, double theta,
                 double sector_margin = 0.0);

    bool contains(std::size_t i1based, const MultiIndex& j) const;
    const std::set<Pair>& pairs() const { return pairs_; }
    double C() const { return C_; }
    int J_max() const { return J_max_; }
    double theta() const { return theta_; }
    double sector_margin() const { return sector_margin_; }
    void set_sector_margin(double m) { sector_margin_ = m; }
    void set_theta(double t) { theta_ = t; }

    // Exhaustive re-check of the defining inequality and the Jordan-closure
    // invariants against a spectrum; throws on violation.
    void validate_against(const Spectrum& spec) const;

private:
    std::set<Pair> pairs_;
    double C_ = 0.0;
    int J_max_ = 0;
    double theta_ = 0.0;
    double sector_margin_ = 0.0;
};

// Smallest Jordan-closed set containing every (i, j), |j| <= J_max, with
// |divisor| < C(1+|j|). Exact resonances always end up inside.
ResonanceSet minimal_resonance_set(const Spectrum& spec, double C, int J_max);

struct SectorCheck {
    bool ok = false;
    double worst_margin = 0.0;  // minimal angular distance of a non-member divisor to the ray
};

// True iff no non-member divisor lies in S(k*theta, sector_margin); also
// reports the worst angular distance found.
SectorCheck check_sector_condition(const ResonanceSet& rset, const Spectrum& spec, double theta);

struct DivisorBound {
    double K = 0.0;
    bool ok = false;         // positivity over all samples
    std::size_t samples = 0;
};

// Sampled lower bound K with |lambda_i - <j,lambda> - w^k| >= K/(1+|j|)
// over w in Omega(nu, theta, alpha) and all non-members with |j| <= J_max.
DivisorBound divisor_lower_bound(const ResonanceSet& rset, const Spectrum& spec, double nu,
                                 double theta, double alpha, int ray_samples = 96,
                                 int angle_samples = 17);

// r = 1/(2 K (n-1)) for a non-trivial Jordan part, r = 1 otherwise.
double default_jordan_scale(const Spectrum& spec, const ResonanceSet& rset, double nu,
                            double theta, double alpha);

// Stores theta on the set and, when no margin was given, defaults it to
// half the minimal angular distance of non-member divisors to the ray.
SectorCheck apply_sector_defaults(ResonanceSet& rset, const Spectrum& spec, double theta);

// Angular distance of z's argument to the direction ray (in [0, pi]).
double ray_distance(cplx z, double ray_angle);

}  // namespace nfk
