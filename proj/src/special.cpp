#include "nfk/special.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace nfk {

double gamma_pos(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("gamma_pos: argument must be positive");
    return std::tgamma(t);
}

double lgamma_pos(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("lgamma_pos: argument must be positive");
    return std::lgamma(t);
}

double beta_pos(double u, double v) {
    if (!(u > 0.0) || !(v > 0.0)) throw std::invalid_argument("beta_pos: arguments must be positive");
    if (u + v < 100.0) return std::tgamma(u) * std::tgamma(v) / std::tgamma(u + v);
    return std::exp(std::lgamma(u) + std::lgamma(v) - std::lgamma(u + v));
}

namespace {

// Symmetric tridiagonal Jacobi matrix for the given three-term recurrence
// coefficients; eigenvalues are the nodes, mu0 * (first eigenvector
// component)^2 the weights.
QuadratureRule golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag,
                            double mu0) {
    const int n = static_cast<int>(diag.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = diag[i];
        if (i + 1 < n) {
            J(i, i + 1) = offdiag[i];
            J(i + 1, i) = offdiag[i];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("golub_welsch: eigen decomposition failed");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

}  // namespace

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi: need at least one node");
    if (alpha <= -1.0 || beta <= -1.0)
        throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");
    std::vector<double> diag(n), offdiag(n > 1 ? n - 1 : 0);
    const double ab = alpha + beta;
    diag[0] = (beta - alpha) / (ab + 2.0);
    for (int i = 1; i < n; ++i) {
        const double d = 2.0 * i + ab;
        diag[i] = (beta * beta - alpha * alpha) / (d * (d + 2.0));
        const double num = 4.0 * i * (i + alpha) * (i + beta) * (i + ab);
        const double den = d * d * (d + 1.0) * (d - 1.0);
        offdiag[i - 1] = std::sqrt(num / den);
    }
    const double mu0 = std::pow(2.0, ab + 1.0) * beta_pos(alpha + 1.0, beta + 1.0);
    return golub_welsch(diag, offdiag, mu0);
}

QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

QuadratureRule gauss_jacobi_01(int n, double alpha, double beta) {
    QuadratureRule rule = gauss_jacobi(n, alpha, beta);
    // x in [-1,1] -> s = (1+x)/2; (1-x)^a (1+x)^b dx = 2^{a+b+1} (1-s)^a s^b ds
    const double scale = std::pow(2.0, -(alpha + beta + 1.0));
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = 0.5 * (1.0 + rule.nodes[i]);
        rule.weights[i] *= scale;
    }
    return rule;
}

}  // namespace nfk
