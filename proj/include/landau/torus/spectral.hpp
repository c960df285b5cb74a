// spectral.hpp: clusters Sigma_{m,k}, level spaces H_{m,k} and their projectors

#pragma once

#include "eigensolver.hpp"
#include "geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace landau::torus {

struct Cluster {
    int m = 0;
    double lo = 0, hi = 0;          // interval I_m (k-scaled)
    std::vector<int> indices;       // into the eigenvalue list
    int dim = 0;
    double center = 0;              // mean of k^{-1} eigenvalues
    double spread = 0;              // max - min of k^{-1} eigenvalues
    bool touches_boundary = false;
};

// I_0 = [0, n/2 + 1/2], I_m = (n/2 + m) + [-1/2, 1/2) for m >= 1.
// values are raw eigenvalues; scale = k. Eigenvalues within edge_tol of an interval edge flag the cluster.
inline std::vector<Cluster> detect_clusters(const Eigen::VectorXd& values, double scale, int m_max, int n = 1,
                                            double edge_tol = 0.05) {
    if (scale <= 0) throw std::invalid_argument("detect_clusters: scale must be positive");
    double top = n / 2.0 + m_max + 0.5;
    if (values.size() == 0 || values.maxCoeff() / scale < top)
        throw std::runtime_error("detect_clusters: computed spectrum does not cover level " + std::to_string(m_max) +
                                 " (need an eigenvalue above " + std::to_string(top) + " k)");
    std::vector<Cluster> out;
    for (int m = 0; m <= m_max; ++m) {
        Cluster c;
        c.m = m;
        c.lo = m == 0 ? 0.0 : n / 2.0 + m - 0.5;
        c.hi = n / 2.0 + m + 0.5;
        double mn = 1e300, mx = -1e300, sum = 0;
        for (int i = 0; i < values.size(); ++i) {
            double v = values(i) / scale;
            // I_0 is closed, so the edge it shares with I_1 stays in I_0
            bool in = m == 0 ? (v >= c.lo && v <= c.hi) : m == 1 ? (v > c.lo && v < c.hi) : (v >= c.lo && v < c.hi);
            if (!in) continue;
            c.indices.push_back(i);
            sum += v;
            mn = std::min(mn, v);
            mx = std::max(mx, v);
            if (std::abs(v - c.lo) < edge_tol || std::abs(v - c.hi) < edge_tol) c.touches_boundary = true;
        }
        c.dim = static_cast<int>(c.indices.size());
        if (c.dim) {
            c.center = sum / c.dim;
            c.spread = mx - mn;
        }
        out.push_back(c);
    }
    return out;
}

struct SpectralDecomposition {
    int k = 0, n = 1;
    double h = 1;
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;   // grid-normalized: sum |psi|^2 h^2 = 1
    Eigen::VectorXd residuals;
    double norm_bound = 0;
    int iterations = 0;
    std::string method;
    std::vector<Cluster> clusters;

    // distance (k-scaled) from the top of cluster m to the next computed eigenvalue
    double gap_after(int m) const {
        const auto& c = clusters.at(static_cast<std::size_t>(m));
        double top = -1e300;
        for (int i : c.indices) top = std::max(top, values(i) / k);
        double next = 1e300;
        for (int i = 0; i < values.size(); ++i)
            if (values(i) / k > top) next = std::min(next, values(i) / k);
        return next - top;
    }
};

// eigenpairs for levels 0..m_max; probe extra states to certify the top cluster is complete
inline SpectralDecomposition landau_spectrum(const DiscreteBundle& b, int m_max, const SolverOptions& opt = {},
                                             double guard_limit = 0.3, int probe = 2) {
    if (b.k() < 1) throw std::invalid_argument("landau_spectrum: needs k >= 1");
    auto H = build_laplacian(b, guard_limit);
    int want = (m_max + 1) * b.k() * b.geometry().d;
    int count = want + probe;
    SolverOptions o = opt;
    o.certified = want;
    auto r = lowest_eigenpairs(H, count, o);
    if (!r.converged)
        throw ConvergenceError("eigensolver did not converge: residual " + std::to_string(r.max_residual()) +
                                   " > " + std::to_string(opt.tol * r.norm_bound),
                               r.max_residual());
    // a probe only counts as "above the top cluster" through its lower bound theta - |r|
    double top = 0.5 + m_max + 0.5;
    for (int i = want; i < count; ++i)
        if ((r.values(i) - r.residuals(i)) / b.k() < top)
            throw ConvergenceError("probe eigenvalue " + std::to_string(r.values(i) / b.k()) +
                                       " (k-scaled) is not resolved above the top interval edge " + std::to_string(top),
                                   r.residuals(i));
    SpectralDecomposition s;
    s.k = b.k();
    s.h = b.h();
    s.values = r.values;
    s.vectors = r.vectors / b.h();
    s.residuals = r.residuals;
    s.norm_bound = r.norm_bound;
    s.iterations = r.iterations;
    s.method = r.method;
    s.clusters = detect_clusters(s.values, b.k(), m_max, 1);
    return s;
}

struct ProjectorDefects {
    double idempotence = 0;      // ||P^2 - P||
    double self_adjointness = 0; // ||P - P*||
};

// orthonormal (weight h^2) basis of H_{m,k} on the grid
class LandauProjector {
public:
    LandauProjector(const DiscreteBundle& b, int m, Eigen::MatrixXcd basis) : bundle_(b), m_(m), B_(std::move(basis)) {
        auto [dx, dy] = covariant_differences(b);
        Dx_ = std::move(dx);
        Dy_ = std::move(dy);
    }

    const DiscreteBundle& bundle() const { return bundle_; }
    int m() const { return m_; }
    int dim() const { return static_cast<int>(B_.cols()); }
    double h() const { return bundle_.h(); }
    int k() const { return bundle_.k(); }
    const Eigen::MatrixXcd& basis() const { return B_; }
    const SpMat& Dx() const { return Dx_; }
    const SpMat& Dy() const { return Dy_; }

    Eigen::MatrixXcd gram() const { return B_.adjoint() * B_ * (h() * h()); }
    double gram_defect() const {
        return (gram() - Eigen::MatrixXcd::Identity(dim(), dim())).cwiseAbs().maxCoeff();
    }

    // P = B B* h^2. Its nonzero spectrum is that of the Gram matrix G, so ||P^2 - P|| = max |g(g-1)|;
    // P is Hermitian by construction
    ProjectorDefects projector_defects() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram());
        ProjectorDefects d;
        for (int i = 0; i < dim(); ++i) {
            double g = es.eigenvalues()(i);
            d.idempotence = std::max(d.idempotence, std::abs(g * (g - 1)));
        }
        d.self_adjointness = 0;
        return d;
    }

    // coefficients of Pi psi in the basis, and Pi psi on the grid
    Eigen::VectorXcd coefficients(const Eigen::VectorXcd& psi) const { return B_.adjoint() * psi * (h() * h()); }
    Eigen::VectorXcd project(const Eigen::VectorXcd& psi) const { return B_ * coefficients(psi); }
    double grid_norm(const Eigen::VectorXcd& psi) const { return psi.norm() * h(); }

private:
    DiscreteBundle bundle_;
    int m_;
    Eigen::MatrixXcd B_;
    SpMat Dx_, Dy_;
};

inline LandauProjector level_projector(const DiscreteBundle& b, const SpectralDecomposition& s, int m) {
    const auto& c = s.clusters.at(static_cast<std::size_t>(m));
    if (c.dim == 0) throw std::runtime_error("level_projector: empty cluster");
    Eigen::MatrixXcd V(s.vectors.rows(), c.dim);
    for (int i = 0; i < c.dim; ++i) V.col(i) = s.vectors.col(c.indices[static_cast<std::size_t>(i)]) * b.h();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(V);
    Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(V.rows(), c.dim);
    return LandauProjector(b, m, Q / b.h());
}

struct SharpenResult {
    Eigen::MatrixXcd projector;
    int rank = 0;
    double gap = 0;  // min distance of the spectrum to 1/2
};

// chi(P) with chi = 1 on [1/2, inf), 0 below
inline SharpenResult sharpen_projector(const Eigen::MatrixXcd& P, double min_gap = 1e-3) {
    if (P.rows() != P.cols()) throw std::invalid_argument("sharpen_projector: square matrix required");
    Eigen::MatrixXcd S = 0.5 * (P + P.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S);
    SharpenResult r;
    r.gap = 1e300;
    for (int i = 0; i < S.rows(); ++i) r.gap = std::min(r.gap, std::abs(es.eigenvalues()(i) - 0.5));
    if (r.gap < min_gap)
        throw std::domain_error("sharpen_projector: spectral gap " + std::to_string(r.gap) + " around 1/2 is below " +
                                std::to_string(min_gap));
    Eigen::MatrixXcd U = es.eigenvectors();
    Eigen::VectorXd chi(S.rows());
    for (int i = 0; i < S.rows(); ++i) {
        chi(i) = es.eigenvalues()(i) >= 0.5 ? 1.0 : 0.0;
        r.rank += static_cast<int>(chi(i));
    }
    r.projector = U * chi.cast<Complex>().asDiagonal() * U.adjoint();
    return r;
}

// T^4 = T^2 x T^2: eigenvalues add; clusters use the n = 2 intervals
inline std::vector<Cluster> product_clusters(const SpectralDecomposition& a, const SpectralDecomposition& b, int m_max) {
    if (a.k != b.k) throw std::invalid_argument("product_clusters: factors need the same k");
    std::vector<double> v;
    for (int i = 0; i < a.values.size(); ++i)
        for (int j = 0; j < b.values.size(); ++j) v.push_back(a.values(i) + b.values(j));
    std::sort(v.begin(), v.end());
    // only sums below the smallest uncovered pair are trustworthy
    double limit = std::min(a.values.maxCoeff() + b.values(0), b.values.maxCoeff() + a.values(0));
    std::vector<double> kept;
    for (double x : v) if (x <= limit) kept.push_back(x);
    Eigen::VectorXd w = Eigen::Map<Eigen::VectorXd>(kept.data(), static_cast<Eigen::Index>(kept.size()));
    return detect_clusters(w, a.k, m_max, 2);
}

}  // namespace landau::torus
