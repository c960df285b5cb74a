#include <landau/fock_core.hpp>
#include <landau/torus_spectral.hpp>

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>

using namespace landau;
using namespace landau::torus;

namespace {

// plain 5-point Laplacian, scaled by 1/2, periodic; independent of the bundle code
Eigen::MatrixXcd free_laplacian(int N, double h) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            int s = i * N + j;
            M(s, s) += 2.0 / (h * h);
            int nb[4] = {((i + 1) % N) * N + j, ((i + N - 1) % N) * N + j, i * N + (j + 1) % N, i * N + (j + N - 1) % N};
            for (int t : nb) M(s, t) -= 0.5 / (h * h);
        }
    return M;
}

struct Fixture {
    DiscreteBundle bundle;
    SpectralDecomposition spec;
    std::vector<LandauProjector> levels;
};

Fixture solve(int d, int k, int N, int m_max) {
    Fixture f{DiscreteBundle(TorusGeometry{d}, k, N), {}, {}};
    SolverOptions opt;
    opt.seed = 11;
    f.spec = landau_spectrum(f.bundle, m_max, opt);
    for (int m = 0; m <= m_max; ++m) f.levels.push_back(level_projector(f.bundle, f.spec, m));
    return f;
}

const Fixture& small_fixture() {
    static Fixture f = solve(1, 4, 40, 2);
    return f;
}

}  // namespace

TEST(Bundle, PlaquetteCurvatureAndFlux) {
    for (int k : {0, 1, 5})
        for (int N : {8, 13}) {
            DiscreteBundle b(TorusGeometry{2}, k, N);
            auto c = b.plaquette_check();
            EXPECT_LT(c.max_deviation, 1e-11);
            EXPECT_NEAR(c.total_flux, 2 * M_PI * k * 2, 1e-9);
        }
    EXPECT_NEAR(TorusGeometry{3}.side() * TorusGeometry{3}.side() / (2 * M_PI), 3.0, 1e-12);
}

TEST(Bundle, LaplacianHermitianAndZeroField) {
    DiscreteBundle b(TorusGeometry{1}, 3, 12);
    auto H = build_laplacian(b);
    EXPECT_LE(hermiticity_residual(H), 1e-13);
    DiscreteBundle z(TorusGeometry{1}, 0, 6);
    Eigen::MatrixXcd H0 = Eigen::MatrixXcd(build_laplacian(z));
    EXPECT_LT((H0 - free_laplacian(6, z.h())).cwiseAbs().maxCoeff(), 1e-12);
    SolverOptions opt;
    auto r = lowest_eigenpairs(build_laplacian(z), 2, opt);
    EXPECT_NEAR(r.values(0), 0.0, 1e-10);
    EXPECT_GT(r.values(1), 1e-3);
    Eigen::VectorXcd v = r.vectors.col(0);
    EXPECT_LT((v.cwiseAbs().array() - v.cwiseAbs().mean()).abs().maxCoeff(), 1e-8);
}

TEST(Bundle, ResolutionGuardNamesRequiredN) {
    try {
        DiscreteBundle b(TorusGeometry{1}, 12, 8);
        build_laplacian(b);
        FAIL() << "guard did not fire";
    } catch (const ResolutionError& e) {
        EXPECT_NE(std::string(e.what()).find("N >= "), std::string::npos);
        EXPECT_EQ(e.required_N, required_grid(TorusGeometry{1}, 12, 0.3));
        DiscreteBundle ok(TorusGeometry{1}, 12, e.required_N);
        EXPECT_LE(ok.flux_per_plaquette(), 0.3);
    }
}

TEST(Eigensolver, ChebyshevMatchesDense) {
    // 36 x 36 grid: above the dense cutoff, small enough for a dense oracle
    DiscreteBundle b(TorusGeometry{1}, 3, 36);
    auto H = build_laplacian(b);
    SolverOptions opt;
    opt.seed = 5;
    auto r = lowest_eigenpairs(H, 10, opt);
    EXPECT_EQ(r.method, "chebyshev");
    EXPECT_TRUE(r.converged);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(H)};
    for (int i = 0; i < 10; ++i) EXPECT_NEAR(r.values(i), es.eigenvalues()(i), 1e-8);
    for (int i = 0; i < 10; ++i) EXPECT_LE(r.residuals(i), opt.tol * r.norm_bound);
    // same seed, same answer
    auto r2 = lowest_eigenpairs(H, 10, opt);
    EXPECT_EQ((r.values - r2.values).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Spectrum, LowestEigenvalueNearHalfK) {
    DiscreteBundle b(TorusGeometry{1}, 4, 128);
    SolverOptions opt;
    auto r = lowest_eigenpairs(build_laplacian(b), 4, opt);
    EXPECT_NEAR(r.values(0), 2.0, 0.02);
}

TEST(Spectrum, ThreeClustersOfSizeKd) {
    auto f = solve(1, 8, 96, 2);
    ASSERT_EQ(f.spec.clusters.size(), 3u);
    for (int m = 0; m <= 2; ++m) {
        auto& c = f.spec.clusters[static_cast<std::size_t>(m)];
        EXPECT_EQ(c.dim, 8);
        double h = f.bundle.h();
        EXPECT_LE(std::abs(c.center - (m + 0.5)), std::max(2 * 8 * h * h * (m + 1), 1e-3));
        EXPECT_FALSE(c.touches_boundary);
        EXPECT_LT(c.spread, 0.1 * f.spec.gap_after(m));
    }
}

TEST(Spectrum, ClusterIntervalsAndCoverage) {
    Eigen::VectorXd v(5);
    v << 0.5, 0.52, 1.5, 1.49, 2.6;  // already divided by k
    auto cl = detect_clusters(v, 1.0, 1, 1);
    EXPECT_EQ(cl[0].dim, 2);
    EXPECT_EQ(cl[1].dim, 2);
    Eigen::VectorXd w(3);
    w << 0.5, 1.5, 1.9;
    EXPECT_THROW(detect_clusters(w, 1.0, 1, 1), std::runtime_error);
    // n = 2 intervals: I0 = [0, 3/2]
    Eigen::VectorXd u(3);
    u << 1.0, 1.47, 2.6;
    auto c2 = detect_clusters(u, 1.0, 0, 2);
    EXPECT_EQ(c2[0].dim, 2);
    EXPECT_TRUE(c2[0].touches_boundary);
}

TEST(Projector, GramAndIdempotence) {
    auto& f = small_fixture();
    for (auto& P : f.levels) {
        EXPECT_EQ(P.dim(), 4);
        EXPECT_LT(P.gram_defect(), 1e-10);
        auto d = P.projector_defects();
        EXPECT_LT(d.idempotence, 1e-10);
        EXPECT_LT(d.self_adjointness, 1e-12);
    }
}

TEST(Projector, Sharpen) {
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(4, 4);
    P(0, 0) = P(1, 1) = 1;
    auto s = sharpen_projector(P);
    EXPECT_LT((s.projector - P).norm(), 1e-12);
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Random(4, 4);
    E = (E + E.adjoint()).eval();
    auto s2 = sharpen_projector(P + 0.01 * E);
    EXPECT_EQ(s2.rank, 2);
    EXPECT_LT((s2.projector * s2.projector - s2.projector).norm(), 1e-12);
    auto s3 = sharpen_projector(0.4 * Eigen::MatrixXcd::Identity(3, 3));
    EXPECT_LT(s3.projector.norm(), 1e-15);
    EXPECT_THROW(sharpen_projector(0.5 * Eigen::MatrixXcd::Identity(2, 2)), std::domain_error);
}

TEST(TrigPoly, ParseAndCalculus) {
    TorusGeometry g{1};
    auto f = TrigPoly::parse("cosx", g);
    auto s = TrigPoly::parse("sin2y*cosx", g);
    EXPECT_THROW(TrigPoly::parse("x", g), std::invalid_argument);
    EXPECT_THROW(TrigPoly::parse("cos", g), std::invalid_argument);
    double a = 2 * M_PI / g.side();
    double x = 0.3, y = 1.1;
    EXPECT_NEAR(f(x, y).real(), std::cos(a * x), 1e-14);
    EXPECT_NEAR(s(x, y).real(), std::sin(2 * a * y) * std::cos(a * x), 1e-14);
    EXPECT_NEAR(f.dx()(x, y).real(), -a * std::sin(a * x), 1e-13);
    EXPECT_NEAR(s.dy()(x, y).real(), 2 * a * std::cos(2 * a * y) * std::cos(a * x), 1e-13);
    EXPECT_NEAR(std::abs(f.conj()(x, y) - std::conj(f(x, y))), 0.0, 1e-14);
    EXPECT_TRUE(TrigPoly::parse("1", g).is_constant());
}

TEST(Hamiltonian, SignConventionAndBracket) {
    TorusGeometry g{1};
    auto c = TrigPoly::constant(3.0);
    auto Xc = hamiltonian_vf(c);
    EXPECT_TRUE(Xc.x.is_zero() && Xc.y.is_zero());
    auto f = TrigPoly::parse("cosx*siny", g), h = TrigPoly::parse("sin2x+cosy", g);
    // omega(X_f, .) + df = 0 with omega = dx^dy: (X^x dy - X^y dx) + f_x dx + f_y dy = 0
    auto X = hamiltonian_vf(f);
    double x = 0.7, y = 0.2;
    EXPECT_NEAR(std::abs(X.x(x, y) + f.dy()(x, y)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(X.y(x, y) - f.dx()(x, y)), 0.0, 1e-13);
    // {f, h} = X_f(h) = -{h, f}
    auto pb = poisson(f, h);
    Complex Xfh = X.x(x, y) * h.dx()(x, y) + X.y(x, y) * h.dy()(x, y);
    EXPECT_NEAR(std::abs(pb(x, y) - Xfh), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(pb(x, y) + poisson(h, f)(x, y)), 0.0, 1e-12);
}

TEST(Toeplitz, IdentityAdjointNormTrace) {
    auto& fx = small_fixture();
    auto& P = fx.levels[0];
    TorusGeometry g{1};
    auto one = toeplitz_fn(P, TrigPoly::constant(1.0));
    EXPECT_LT((one - Eigen::MatrixXcd::Identity(4, 4)).norm(), 1e-10);
    auto f = TrigPoly::parse("cosx*siny", g) + TrigPoly::parse("sinx", g) * Complex(0, 1);
    auto Tf = toeplitz_fn(P, f);
    auto Tfb = toeplitz_fn(P, f.conj());
    EXPECT_LT((Tf.adjoint() - Tfb).norm(), 1e-10);
    EXPECT_LE(operator_norm(Tf), f.sup_on_grid(fx.bundle) + 0.05);
    // mean zero symbol: trace is O(1)-small compared to dim
    EXPECT_LT(std::abs(Tf.trace()), 0.5);
}

TEST(Toeplitz, DerivativeSymbolNorm) {
    auto& fx = small_fixture();
    auto& P = fx.levels[0];
    VectorField dx{TrigPoly::constant(1.0), TrigPoly::constant(0.0)};
    auto T = toeplitz_der(P, {dx, dx});
    // pi0 rho(dx) rho(dx) pi0 on the Fock side
    auto b = enumerate_basis(1, 3, BasisKind::antiholomorphic);
    Complex s = 1.0 / std::sqrt(2.0);
    auto r = fock::rho_tangent<Complex>(b, {s}, {s});
    auto p0 = fock::pi_m<Complex>(b, 0);
    auto sym = compose(p0, compose(r, compose(r, p0)));
    double symnorm = to_dense_orthonormal(sym).operatorNorm();
    EXPECT_NEAR(symnorm, 0.5, 1e-12);
    EXPECT_NEAR(operator_norm(T), symnorm, 0.05);
    VectorField zero{TrigPoly::constant(0.0), TrigPoly::constant(0.0)};
    EXPECT_LT(toeplitz_der(P, {zero, dx}).norm(), 1e-14);
    EXPECT_THROW(toeplitz_der(P, {dx}), std::invalid_argument);
}

TEST(Toeplitz, ConstantSymbolDefectsVanish) {
    auto& fx = small_fixture();
    TorusGeometry g{1};
    auto r = defects_at(fx.levels[0], TrigPoly::constant(2.0), TrigPoly::parse("siny", g));
    EXPECT_LT(r.D2, 1e-9);
    EXPECT_LT(r.D1, 1e-9);
    EXPECT_LT(r.DB, 1e-9);
}

TEST(Kernel, DiagonalAndModel) {
    // at k = 4 on the unit torus the periodic images are still visible for m >= 1; level 0 is already close
    auto& fx = small_fixture();
    EXPECT_EQ(laguerre_q(2, 0)(0.0), 1.0);
    auto r = kernel_compare(fx.levels[0]);
    EXPECT_LT(r.diagonal_rel_error, 0.02);
    EXPECT_GT(r.points_compared, 0);
    EXPECT_GT(r.points_excluded, 0);
    EXPECT_LT(r.sup_error, 0.05 * 4 / (2 * M_PI));
    // mean of the diagonal is dim / area = k / 2pi exactly, whatever the level
    for (auto& P : fx.levels) {
        Eigen::VectorXd diag = P.basis().rowwise().squaredNorm();
        EXPECT_NEAR(diag.mean(), 4 / (2 * M_PI), 1e-10);
    }
}

TEST(Ladder, LevelZeroIsIdentityAndLevelOneNearUnitary) {
    auto& fx = small_fixture();
    auto r0 = ladder_map(fx.levels[0], fx.levels[0]);
    EXPECT_LT(r0.vtv_defect, 1e-10);
    EXPECT_LT(r0.vvt_defect, 1e-10);
    auto r1 = ladder_map(fx.levels[1], fx.levels[0]);
    EXPECT_EQ(r1.rank, 4);
    EXPECT_LT(r1.vtv_defect, 0.05);
    EXPECT_LT(r1.max_principal_angle, 1e-3);
}

TEST(Peaked, NormsAndProjection) {
    auto& fx = small_fixture();
    auto rep = peaked_sections(fx.levels, {fx.bundle.N() / 2, fx.bundle.N() / 2}, 2);
    // radial cut-off: different j stay orthogonal; the cut-off only loses mass
    for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) {
            if (a == c) {
                EXPECT_GT(rep.gram(a, a).real(), 0.0);
                EXPECT_LT(rep.gram(a, a).real(), rep.target(a, a));
            } else {
                EXPECT_LT(std::abs(rep.gram(a, c)), 1e-12);
            }
        }
    EXPECT_EQ(rep.target(2, 2), 2.0);
    EXPECT_EQ(rep.projection_error.size(), 3u);
    EXPECT_THROW(peaked_sections(fx.levels, {1, 1}, 2), std::domain_error);
}

TEST(Product, TwoTorusDimensions) {
    auto& fx = small_fixture();
    auto p = product_clusters(fx.spec, fx.spec, 1);
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[0].dim, 16);
    EXPECT_EQ(p[1].dim, 2 * 16);
    EXPECT_NEAR(p[0].center, 1.0, 0.05);
}
