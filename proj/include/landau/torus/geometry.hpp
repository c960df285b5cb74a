// geometry.hpp: flat torus of area 2 pi d and the Peierls-phased lattice bundle for L^k

#pragma once

#include "../scalar.hpp"

#include <Eigen/Sparse>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace landau::torus {

struct TorusGeometry {
    int d = 1;
    double side() const {
        if (d < 1) throw std::invalid_argument("TorusGeometry: degree d must be positive");
        return std::sqrt(2 * M_PI * d);
    }
};

struct ResolutionError : std::runtime_error {
    int required_N;
    ResolutionError(const std::string& what, int req) : std::runtime_error(what), required_N(req) {}
};

// smallest N with k h^2 <= limit
inline int required_grid(const TorusGeometry& g, int k, double limit) {
    int N = static_cast<int>(std::ceil(g.side() * std::sqrt(k / limit) - 1e-12));
    return std::max(N, 3);
}

using SpMat = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

// Landau gauge A = k x dy. y-links carry e^{i k x h}; x-links are trivial except the wrap
// link (N-1, j) -> (0, j) which carries e^{-i k L y_j}, making the gauge periodic.
class DiscreteBundle {
public:
    DiscreteBundle(TorusGeometry g, int k, int N) : g_(g), k_(k), N_(N), h_(g.side() / N) {
        if (k < 0) throw std::invalid_argument("DiscreteBundle: k must be non-negative");
        if (N < 3) throw std::invalid_argument("DiscreteBundle: need N >= 3");
    }

    const TorusGeometry& geometry() const { return g_; }
    int k() const { return k_; }
    int N() const { return N_; }
    double h() const { return h_; }
    double side() const { return g_.side(); }
    int size() const { return N_ * N_; }
    int site(int i, int j) const { return ((i % N_ + N_) % N_) * N_ + (j % N_ + N_) % N_; }
    double flux_per_plaquette() const { return k_ * h_ * h_; }

    // parallel-transport phase on the link (i,j) -> (i+1,j)
    Complex ux(int i, int j) const {
        if (i != N_ - 1) return 1.0;
        return std::polar(1.0, -k_ * side() * j * h_);
    }
    // link (i,j) -> (i,j+1)
    Complex uy(int i, int /*j*/) const { return std::polar(1.0, k_ * i * h_ * h_); }

    struct PlaquetteReport {
        double max_deviation = 0;  // max |holonomy - e^{i k h^2}|
        double total_flux = 0;     // sum of plaquette angles, 2 pi k d expected
    };

    PlaquetteReport plaquette_check() const {
        PlaquetteReport r;
        Complex want = std::polar(1.0, flux_per_plaquette());
        for (int i = 0; i < N_; ++i)
            for (int j = 0; j < N_; ++j) {
                Complex hol = ux(i, j) * uy((i + 1) % N_, j) * std::conj(ux(i, (j + 1) % N_)) * std::conj(uy(i, j));
                r.max_deviation = std::max(r.max_deviation, std::abs(hol - want));
                r.total_flux += std::arg(hol);
            }
        return r;
    }

    void guard(double limit = 0.3) const {
        if (flux_per_plaquette() > limit) {
            int req = required_grid(g_, k_, limit);
            throw ResolutionError("resolution guard: k h^2 = " + std::to_string(flux_per_plaquette()) + " exceeds " +
                                      std::to_string(limit) + " at d=" + std::to_string(g_.d) + ", k=" + std::to_string(k_) +
                                      ", N=" + std::to_string(N_) + "; need N >= " + std::to_string(req),
                                  req);
        }
    }

private:
    TorusGeometry g_;
    int k_, N_;
    double h_;
};

// H psi(s) = 1/(2h^2) sum over the four neighbours of (psi(s) - conj(U_{s->s'}) psi(s'))
inline SpMat build_laplacian(const DiscreteBundle& b, double guard_limit = 0.3) {
    b.guard(guard_limit);
    int N = b.N();
    double c = 0.5 / (b.h() * b.h());
    std::vector<Eigen::Triplet<Complex>> t;
    t.reserve(static_cast<std::size_t>(5 * N * N));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            int s = b.site(i, j);
            t.emplace_back(s, s, 4 * c);
            Complex ux = b.ux(i, j), uy = b.uy(i, j);
            int sx = b.site(i + 1, j), sy = b.site(i, j + 1);
            t.emplace_back(s, sx, -c * std::conj(ux));
            t.emplace_back(sx, s, -c * ux);
            t.emplace_back(s, sy, -c * std::conj(uy));
            t.emplace_back(sy, s, -c * uy);
        }
    SpMat H(N * N, N * N);
    H.setFromTriplets(t.begin(), t.end());
    return H;
}

inline double hermiticity_residual(const SpMat& H) {
    SpMat D = SpMat(H.adjoint()) - H;
    double m = 0;
    for (int r = 0; r < D.outerSize(); ++r)
        for (SpMat::InnerIterator it(D, r); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

// centered covariant differences along x and y
inline std::pair<SpMat, SpMat> covariant_differences(const DiscreteBundle& b) {
    int N = b.N();
    double c = 0.5 / b.h();
    std::vector<Eigen::Triplet<Complex>> tx, ty;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            int s = b.site(i, j);
            tx.emplace_back(s, b.site(i + 1, j), c * std::conj(b.ux(i, j)));
            tx.emplace_back(s, b.site(i - 1, j), -c * b.ux((i - 1 + N) % N, j));
            ty.emplace_back(s, b.site(i, j + 1), c * std::conj(b.uy(i, j)));
            ty.emplace_back(s, b.site(i, j - 1), -c * b.uy(i, (j - 1 + N) % N));
        }
    SpMat Dx(N * N, N * N), Dy(N * N, N * N);
    Dx.setFromTriplets(tx.begin(), tx.end());
    Dy.setFromTriplets(ty.begin(), ty.end());
    return {Dx, Dy};
}

}  // namespace landau::torus
