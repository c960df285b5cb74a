// kernel.hpp: projector kernel against the Laguerre model, ladder maps, peaked sections.
// Comparisons happen in the symmetric gauge around a base point p0:
// Pi_S(x, p0) = e^{-i chi(x)} Pi_L(x, p0), chi = (k/2)(x + x0)(y - y0).

#pragma once

#include "../laguerre.hpp"
#include "spectral.hpp"
#include "toeplitz.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace landau::torus {

inline double gauge_phase(int k, double x, double y, double x0, double y0) { return 0.5 * k * (x + x0) * (y - y0); }

struct KernelReport {
    int m = 0, k = 0;
    double diagonal_rel_error = 0;  // max over the grid of |2 pi Pi(x,x)/k - 1|
    double sup_error = 0;           // sup over |x - p0| <= L/4 of |Pi_S(x,p0) - model|
    int points_compared = 0;
    int points_excluded = 0;        // outside the chart disc
};

// model (k/2pi) e^{-k r^2/4} Q_m(k r^2/2): with z = (x+iy)/sqrt2, |z(x)-z(p0)|^2 = r^2/2
inline KernelReport kernel_compare(const LandauProjector& P) {
    const auto& b = P.bundle();
    int N = b.N(), k = b.k();
    double h = b.h(), L = b.side();
    int i0 = N / 2, j0 = N / 2, s0 = b.site(i0, j0);
    double x0 = i0 * h, y0 = j0 * h;
    KernelReport r;
    r.m = P.m();
    r.k = k;
    const auto& B = P.basis();
    Eigen::VectorXd diag = B.rowwise().squaredNorm();
    r.diagonal_rel_error = (diag.array() * (2 * M_PI / k) - 1.0).abs().maxCoeff();
    Eigen::VectorXcd K = B * B.row(s0).adjoint();
    auto Q = laguerre_q(P.m(), 0);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            double x = i * h, y = j * h, r2 = (x - x0) * (x - x0) + (y - y0) * (y - y0);
            if (r2 > L * L / 16) { ++r.points_excluded; continue; }
            Complex ks = std::polar(1.0, -gauge_phase(k, x, y, x0, y0)) * K(b.site(i, j));
            double model = k / (2 * M_PI) * std::exp(-k * r2 / 4) * Q(k * r2 / 2);
            r.sup_error = std::max(r.sup_error, std::abs(ks - model));
            ++r.points_compared;
        }
    return r;
}

struct LadderReport {
    int m = 0, k = 0, rank = 0;
    double vtv_defect = 0;          // ||V*V - I|| on H_m
    double vvt_defect = 0;          // ||VV* - I|| on H_0
    double max_principal_angle = 0; // between H_m and (nabla_x - i nabla_y)^m H_0
};

// V = (1/m!) k^{-m/2} sqrt(m!) Pi_0 D^m on H_m, D = (nabla_x + i nabla_y)/sqrt2
inline LadderReport ladder_map(const LandauProjector& Pm, const LandauProjector& P0) {
    if (P0.m() != 0) throw std::invalid_argument("ladder_map: second argument must be level 0");
    int m = Pm.m(), k = Pm.k();
    double h = Pm.h();
    LadderReport r;
    r.m = m;
    r.k = k;
    SpMat D = (Pm.Dx() + Complex(0, 1) * Pm.Dy()) * (1 / std::sqrt(2.0));
    SpMat Dbar = Pm.Dx() - Complex(0, 1) * Pm.Dy();
    Eigen::MatrixXcd W = Pm.basis();
    for (int i = 0; i < m; ++i) W = (D * W).eval();
    double mf = std::tgamma(m + 1.0);
    double scale = std::pow(static_cast<double>(k), -0.5 * m) * std::sqrt(mf) / mf;
    Eigen::MatrixXcd V = P0.basis().adjoint() * W * (h * h * scale);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
    auto sv = svd.singularValues();
    for (int i = 0; i < sv.size(); ++i) if (sv(i) > 1e-8 * std::max(1.0, sv(0))) ++r.rank;
    r.vtv_defect = operator_norm(V.adjoint() * V - Eigen::MatrixXcd::Identity(V.cols(), V.cols()));
    r.vvt_defect = operator_norm(V * V.adjoint() - Eigen::MatrixXcd::Identity(V.rows(), V.rows()));
    Eigen::MatrixXcd U = P0.basis();
    for (int i = 0; i < m; ++i) U = (Dbar * U).eval();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(U);
    Eigen::MatrixXcd Qm = qr.householderQ() * Eigen::MatrixXcd::Identity(U.rows(), U.cols());
    Eigen::JacobiSVD<Eigen::MatrixXcd> s2(Pm.basis().adjoint() * Qm * h);
    double smin = s2.singularValues().minCoeff();
    if (Pm.dim() != U.cols()) smin = 0;
    r.max_principal_angle = std::acos(std::clamp(smin, 0.0, 1.0));
    return r;
}

// smooth cut-off: 1 for r <= R/2, 0 for r >= R, C-infinity in between
inline double bump(double r, double R) {
    double t = (r - R / 2) / (R / 2);
    if (t <= 0) return 1;
    if (t >= 1) return 0;
    double a = std::exp(-1 / t), c = std::exp(-1 / (1 - t));
    return c / (a + c);
}

struct PeakedReport {
    int k = 0;
    Eigen::MatrixXcd gram;       // <Phi^a, Phi^b>
    Eigen::MatrixXd target;      // <zbar^a, zbar^b> = delta a!
    double gram_error = 0;       // max |gram - target|
    std::vector<double> projection_error;  // ||Pi_j Phi^j - Phi^j||, per j
    std::vector<double> leakage;           // max over m != j of ||Pi_m Phi^j||, per j
    std::vector<Eigen::VectorXcd> sections;
};

// Phi^j = e^{i chi}(k/2pi)^{1/2} e^{-k r^2/4} (sqrt(k) zbar)^j bump, zbar = (dx - i dy)/sqrt2 around x0
inline PeakedReport peaked_sections(const std::vector<LandauProjector>& levels, std::pair<int, int> p0, int jmax) {
    if (levels.empty()) throw std::invalid_argument("peaked_sections: no level spaces");
    const auto& b = levels[0].bundle();
    int N = b.N(), k = b.k();
    double h = b.h(), L = b.side(), R = L / 4;
    double x0 = p0.first * h, y0 = p0.second * h;
    if (x0 - R < 0 || y0 - R < 0 || x0 + R > L - h || y0 + R > L - h)
        throw std::domain_error("peaked_sections: support of radius L/4 leaves the fundamental-domain chart");
    PeakedReport rep;
    rep.k = k;
    int J = jmax + 1;
    for (int j = 0; j < J; ++j) {
        Eigen::VectorXcd phi(N * N);
        for (int i = 0; i < N; ++i)
            for (int jj = 0; jj < N; ++jj) {
                double dx = i * h - x0, dy = jj * h - y0, r = std::hypot(dx, dy);
                Complex zb = Complex(dx, -dy) / std::sqrt(2.0);
                Complex v = std::polar(1.0, gauge_phase(k, i * h, jj * h, x0, y0)) * std::sqrt(k / (2 * M_PI)) *
                            std::exp(-k * r * r / 4) * std::pow(std::sqrt(double(k)) * zb, j) * bump(r, R);
                phi(b.site(i, jj)) = v;
            }
        rep.sections.push_back(phi);
    }
    rep.gram.resize(J, J);
    rep.target = Eigen::MatrixXd::Zero(J, J);
    for (int a = 0; a < J; ++a) {
        rep.target(a, a) = std::tgamma(a + 1.0);
        for (int c = 0; c < J; ++c) rep.gram(a, c) = rep.sections[a].dot(rep.sections[c]) * (h * h);
    }
    rep.gram_error = (rep.gram - rep.target.cast<Complex>()).cwiseAbs().maxCoeff();
    for (int j = 0; j < J; ++j) {
        double pe = -1, leak = 0;
        for (auto& P : levels) {
            Eigen::VectorXcd pr = P.project(rep.sections[j]);
            if (P.m() == j) pe = P.grid_norm(pr - rep.sections[j]);
            else leak = std::max(leak, P.grid_norm(pr));
        }
        rep.projection_error.push_back(pe);
        rep.leakage.push_back(leak);
    }
    return rep;
}

}  // namespace landau::torus
