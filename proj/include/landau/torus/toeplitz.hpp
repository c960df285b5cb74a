// toeplitz.hpp: T(f) = Pi f Pi and k^{-p} Pi nabla_X1 ... nabla_X2p Pi on a level space

#pragma once

#include "spectral.hpp"
#include "trig_poly.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace landau::torus {

inline double operator_norm(const Eigen::MatrixXcd& A) {
    if (A.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    return svd.singularValues()(0);
}

inline Eigen::MatrixXcd toeplitz_fn(const LandauProjector& P, const TrigPoly& f) {
    Eigen::VectorXcd fv = f.on_grid(P.bundle().N(), P.h());
    return P.basis().adjoint() * (fv.asDiagonal() * P.basis()) * (P.h() * P.h());
}

// nabla_X on each column of W
inline Eigen::MatrixXcd covariant_apply(const LandauProjector& P, const VectorField& X, const Eigen::MatrixXcd& W) {
    int N = P.bundle().N();
    double h = P.h();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(W.rows(), W.cols());
    if (!X.x.is_zero()) out += X.x.on_grid(N, h).asDiagonal() * (P.Dx() * W);
    if (!X.y.is_zero()) out += X.y.on_grid(N, h).asDiagonal() * (P.Dy() * W);
    return out;
}

inline Eigen::MatrixXcd toeplitz_der(const LandauProjector& P, const std::vector<VectorField>& fields) {
    if (fields.size() % 2) throw std::invalid_argument("toeplitz_der: needs an even number of vector fields");
    Eigen::MatrixXcd W = P.basis();
    for (auto it = fields.rbegin(); it != fields.rend(); ++it) W = covariant_apply(P, *it, W);
    double scale = std::pow(static_cast<double>(P.k()), -static_cast<double>(fields.size() / 2));
    return P.basis().adjoint() * W * (P.h() * P.h() * scale);
}

struct DefectRow {
    int k = 0, m = 0;
    double D2 = 0;  // ||T(f)T(g) - T(fg) - k^{-1} T(1,X,Y)||
    double D1 = 0;  // ||ik[T(f),T(g)] - T({f,g})||
    double DB = 0;  // ||T(f)T(g) - T(fg) - k^{-1} T(B1(f,g))||
};

// B1(f,g) = -(1/2 + m) g(X,Y) + omega(X,Y)/(2i), X, Y the Hamiltonian fields of f, g
inline TrigPoly b1_symbol(const TrigPoly& f, const TrigPoly& g, int m) {
    auto X = hamiltonian_vf(f), Y = hamiltonian_vf(g);
    return metric(X, Y) * Complex(-(0.5 + m)) + symplectic(X, Y) * (1.0 / Complex(0, 2));
}

inline DefectRow defects_at(const LandauProjector& P, const TrigPoly& f, const TrigPoly& g) {
    double k = P.k();
    auto Tf = toeplitz_fn(P, f), Tg = toeplitz_fn(P, g), Tfg = toeplitz_fn(P, f * g);
    auto X = hamiltonian_vf(f), Y = hamiltonian_vf(g);
    Eigen::MatrixXcd prod = Tf * Tg - Tfg;
    DefectRow r;
    r.k = P.k();
    r.m = P.m();
    r.D2 = operator_norm(prod - toeplitz_der(P, {X, Y}) / k);
    r.D1 = operator_norm(Complex(0, k) * (Tf * Tg - Tg * Tf) - toeplitz_fn(P, poisson(f, g)));
    r.DB = operator_norm(prod - toeplitz_fn(P, b1_symbol(f, g, P.m())) / k);
    return r;
}

}  // namespace landau::torus
