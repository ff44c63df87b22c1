#pragma once

#include <complex>
#include <vector>

namespace nfk {

// Gamma and log-gamma on the positive real axis. Thin wrappers so every
// call site shares one accuracy policy (std::tgamma/std::lgamma are well
// below 1e-13 relative error there, which is all the transforms need).
double gamma_pos(double t);
double lgamma_pos(double t);

// z^p by repeated multiplication; exact for p = 0 and safe at z = 0,
// unlike std::pow on complex arguments.
inline std::complex<double> ipow(std::complex<double> z, int p) {
    std::complex<double> r(1.0, 0.0);
    for (int i = 0; i < p; ++i) r *= z;
    return r;
}

// Beta(u, v) = Gamma(u)Gamma(v)/Gamma(u+v), computed in log space when the
// arguments are large enough to overflow the direct product.
double beta_pos(double u, double v);

struct QuadratureRule {
    std::vector<double> nodes;    // abscissae, ascending
    std::vector<double> weights;  // positive
};

// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

// Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta,
// alpha, beta > -1, via the Golub-Welsch eigenvalue method.
QuadratureRule gauss_jacobi(int n, double alpha, double beta);

// Nodes/weights transplanted to [0, 1] for the weight s^beta (1-s)^alpha.
QuadratureRule gauss_jacobi_01(int n, double alpha, double beta);

}  // namespace nfk
