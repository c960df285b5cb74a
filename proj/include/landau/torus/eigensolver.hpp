// eigensolver.hpp: lowest eigenpairs of a sparse Hermitian matrix.
// Chebyshev-filtered subspace iteration (Zhou-Saad scaled filter + Rayleigh-Ritz);
// small problems go to a dense solver.

#pragma once

#include "geometry.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace landau::torus {

struct SolverOptions {
    double tol = 1e-9;         // residual <= tol * ||H||
    unsigned seed = 12345;
    int margin = -1;           // extra block vectors; -1 picks max(8, count / 5)
    int degree = 24;           // Chebyshev filter degree
    int max_iter = 300;
    int dense_limit = 1024;    // matrix size at or below which the dense path is used
    double max_fraction = 0.5; // count may not exceed this fraction of the matrix size
    int certified = -1;        // leading pairs held to tol; the rest are probes held to probe_tol. -1: all
    double probe_tol = 1e-5;
};

struct EigenResult {
    Eigen::VectorXd values;     // ascending
    Eigen::MatrixXcd vectors;   // unit 2-norm columns
    Eigen::VectorXd residuals;  // ||H v - lambda v||
    double norm_bound = 0;      // Gershgorin bound on ||H||
    int iterations = 0;
    bool converged = false;
    std::string method;
    int certified = 0;          // leading pairs that met tol; later ones met probe_tol
    double max_residual() const { return residuals.size() ? residuals.maxCoeff() : 0.0; }
};

struct ConvergenceError : std::runtime_error {
    double achieved;
    ConvergenceError(const std::string& w, double a) : std::runtime_error(w), achieved(a) {}
};

inline double gershgorin_bound(const SpMat& H) {
    double b = 0;
    for (int r = 0; r < H.outerSize(); ++r) {
        double s = 0;
        for (SpMat::InnerIterator it(H, r); it; ++it) s += std::abs(it.value());
        b = std::max(b, s);
    }
    return b;
}

namespace detail {

inline Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& X) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(X);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(X.rows(), X.cols());
}

inline void residuals(const SpMat& H, const Eigen::MatrixXcd& V, const Eigen::VectorXd& w, Eigen::VectorXd& out) {
    Eigen::MatrixXcd R = H * V - V * w.cast<Complex>().asDiagonal();
    out = R.colwise().norm().transpose();
}

}  // namespace detail

inline EigenResult lowest_eigenpairs(const SpMat& H, int count, const SolverOptions& opt = {}) {
    const int n = static_cast<int>(H.rows());
    if (count < 1) throw std::invalid_argument("lowest_eigenpairs: count must be positive");
    if (n > opt.dense_limit && count > opt.max_fraction * n)
        throw std::invalid_argument("lowest_eigenpairs: count exceeds the allowed fraction of the matrix size");
    if (count > n) throw std::invalid_argument("lowest_eigenpairs: count exceeds matrix size");
    EigenResult r;
    r.norm_bound = gershgorin_bound(H);

    if (n <= opt.dense_limit) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(H)};
        r.values = es.eigenvalues().head(count);
        r.vectors = es.eigenvectors().leftCols(count);
        detail::residuals(H, r.vectors, r.values, r.residuals);
        r.converged = r.max_residual() <= opt.tol * r.norm_bound;
        r.certified = count;
        r.method = "dense";
        return r;
    }

    int p = count + (opt.margin >= 0 ? opt.margin : std::max(8, count / 5));
    p = std::min(p, n);
    std::mt19937 rng(opt.seed);
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd X(n, p);
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < n; ++i) X(i, j) = Complex(nd(rng), nd(rng));
    X = detail::orthonormalize(X);

    const double b = r.norm_bound;
    const int cert = opt.certified < 0 ? count : std::min(opt.certified, count);
    r.certified = cert;
    // probes that sit inside the next (degenerate) cluster converge slowly as vectors, fast as values
    auto done = [&](const Eigen::VectorXd& res) {
        for (int i = 0; i < count; ++i)
            if (res(i) > (i < cert ? opt.tol : std::max(opt.tol, opt.probe_tol)) * b) return false;
        return true;
    };
    Eigen::VectorXd theta;
    auto rayleigh_ritz = [&](Eigen::MatrixXcd& Q) {
        Eigen::MatrixXcd HQ = H * Q;
        Eigen::MatrixXcd G = Q.adjoint() * HQ;
        G = (0.5 * (G + G.adjoint())).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
        theta = es.eigenvalues();
        Q = Q * es.eigenvectors();
    };
    rayleigh_ritz(X);

    Eigen::MatrixXcd Y(n, p), Z(n, p);
    for (int it = 1; it <= opt.max_iter; ++it) {
        // damp [a, b] where a is the top Ritz value; theta(0) sets the scaling
        double a = theta(p - 1), a0 = theta(0);
        if (a >= b) a = 0.5 * (a0 + b);
        double e = 0.5 * (b - a), c = 0.5 * (b + a);
        double sigma = e / (a0 - c), sigma1 = sigma;
        Y = (H * X - c * X) * (sigma1 / e);
        for (int d = 2; d <= opt.degree; ++d) {
            double s2 = 1.0 / (2.0 / sigma1 - sigma);
            Z = (H * Y - c * Y) * (2.0 * s2 / e) - X * (sigma * s2);
            X.swap(Y);
            Y.swap(Z);
            sigma = s2;
        }
        X = detail::orthonormalize(Y);
        rayleigh_ritz(X);
        r.iterations = it;
        Eigen::VectorXd res;
        detail::residuals(H, X.leftCols(count), theta.head(count), res);
        if (done(res)) {
            r.values = theta.head(count);
            r.vectors = X.leftCols(count);
            r.residuals = res;
            r.converged = true;
            r.method = "chebyshev";
            return r;
        }
        if (it == opt.max_iter) {
            r.values = theta.head(count);
            r.vectors = X.leftCols(count);
            r.residuals = res;
            r.method = "chebyshev";
        }
    }
    r.converged = false;
    return r;
}

}  // namespace landau::torus
