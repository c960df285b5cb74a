// surface_spectra.hpp: Landau levels of a constant-curvature surface with constant field B.
// Closed forms, plus the induction that produces them (Weitzenbock + the bosonic shift L -> L (x) K^{-1}).
// Everything is exact: a geometry is (genus, degree d, B), and S = B chi / d follows from Gauss-Bonnet.

#pragma once

#include "scalar.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace landau::surface {

struct SurfaceGeometry {
    int genus = 1;
    int chi = 0;
    long d = 1;       // degree of L, = B A / 2pi
    Rational B = 1;
    int canonical = -1;  // r when L = K^r with its own metric, else -1

    Rational S() const { return B * chi / d; }
    Rational area_over_2pi() const { return Rational(d) / B; }

    static SurfaceGeometry from_degree(int g, const Rational& B, long d) {
        if (g < 0) throw std::invalid_argument("genus must be >= 0");
        if (B <= 0) throw std::invalid_argument("B must be > 0");
        if (d <= 0) throw std::invalid_argument("degree d = B A / 2pi must be a positive integer when B > 0");
        SurfaceGeometry s;
        s.genus = g;
        s.chi = 2 - 2 * g;
        s.d = d;
        s.B = B;
        return s;
    }

    // area from Gauss-Bonnet S A = 2 pi chi; the torus has no such relation, use from_degree
    static SurfaceGeometry from_curvature(int g, const Rational& B, const Rational& S) {
        if (g == 1) throw std::invalid_argument("torus: curvature does not fix the area, give the degree instead");
        int chi = 2 - 2 * g;
        if (S == 0 || (S > 0) != (chi > 0))
            throw std::invalid_argument("curvature sign does not match genus " + std::to_string(g));
        Rational deg = B * chi / S;
        deg.canonicalize();
        if (deg.get_den() != 1)
            throw std::invalid_argument("degree B A / 2pi = " + deg.get_str() + " is not an integer");
        return from_degree(g, B, deg.get_num().get_si());
    }

    // L = K^r on a hyperbolic surface (S = -1): B = r
    static SurfaceGeometry canonical_power(int g, int r) {
        if (g < 2 || r < 1) throw std::invalid_argument("canonical_power: needs genus >= 2 and r >= 1");
        auto s = from_degree(g, Rational(r), static_cast<long>(r) * (2 * g - 2));
        s.canonical = r;
        return s;
    }
};

enum class RowStatus { valid, boundary, outside, coincident };

inline const char* to_string(RowStatus s) {
    switch (s) {
        case RowStatus::valid: return "valid";
        case RowStatus::boundary: return "boundary";
        case RowStatus::outside: return "outside";
        case RowStatus::coincident: return "coincident";
    }
    return "?";
}

struct SpectrumRow {
    int m = 0;
    Rational lambda;
    std::optional<long> mult;
    RowStatus status = RowStatus::valid;
    std::string note;
};

struct SpectrumTable {
    std::vector<SpectrumRow> rows;
    bool truncated = false;  // stopped before m_max
    std::string stop_reason;
};

struct RegimeError : std::domain_error {
    bool boundary;
    RegimeError(const std::string& w, bool b) : std::domain_error(w), boundary(b) {}
};

inline Rational landau_eigenvalue(const Rational& B, const Rational& S, int m) {
    return B * (ratio(1, 2) + m) + S * ratio(m * (m + 1), 2);
}

// eigenvalues only, while B + m S > 0
inline SpectrumTable landau_spectrum(const Rational& B, const Rational& S, int m_max) {
    if (B <= 0) throw std::invalid_argument("landau_spectrum: B must be > 0");
    SpectrumTable t;
    for (int m = 0; m <= m_max; ++m) {
        if (B + S * m <= 0) {
            t.truncated = true;
            t.stop_reason = "B + mS <= 0 at m = " + std::to_string(m) + ": no explicit eigenvalue beyond";
            break;
        }
        t.rows.push_back({m, landau_eigenvalue(B, S, m), std::nullopt, RowStatus::valid, ""});
    }
    return t;
}

// d + (1/2 + m) chi, valid while B + (m+1) S > 0 (strict)
inline long landau_multiplicity(const SurfaceGeometry& g, int m) {
    Rational edge = g.B + g.S() * (m + 1);
    if (edge <= 0) {
        bool b = edge == 0;
        throw RegimeError("outside Landau regime: B + (m+1)S = " + edge.get_str() + " at m = " + std::to_string(m) +
                              (b ? " (boundary case, not resolved)" : ""),
                          b);
    }
    // chi is even, so (1/2 + m) chi is an integer
    return g.d + static_cast<long>(g.chi / 2) * (2 * m + 1);
}

// closed forms side by side: eigenvalue rows while B + mS > 0, each with its multiplicity status
inline SpectrumTable spectrum_table(const SurfaceGeometry& g, int m_max) {
    auto t = landau_spectrum(g.B, g.S(), m_max);
    for (auto& r : t.rows) {
        try {
            r.mult = landau_multiplicity(g, r.m);
        } catch (const RegimeError& e) {
            r.status = e.boundary ? RowStatus::boundary : RowStatus::outside;
            r.note = e.what();
        }
    }
    return t;
}

namespace detail {

// h^0(K^s) on a genus g >= 2 surface
inline long h0_canonical(int g, int s) {
    if (s < 0) return 0;
    if (s == 0) return 1;
    if (s == 1) return g;
    return static_cast<long>(2 * s - 1) * (g - 1);
}

}  // namespace detail

// Delta_L = dbar* dbar + B/2. Kernel of dbar on L_j = L (x) K^{-j}: h^0 = deg_j + chi/2 when deg_j > -chi.
// The rest of dbar* dbar on L_j is (B_j + S) + spectrum on L_{j+1}, with deg_{j+1} = deg_j + chi, B_{j+1} = B_j + S.
inline SpectrumTable weitzenbock_iterate(const SurfaceGeometry& g, int m_max) {
    SpectrumTable t;
    Rational shift = g.B / 2, Bj = g.B, S = g.S();
    long deg = g.d;
    for (int j = 0; j <= m_max; ++j) {
        SpectrumRow row{j, shift, std::nullopt, RowStatus::valid, ""};
        long next = deg + g.chi;  // deg_j > -chi  <=>  next > 0
        if (g.canonical >= 0) {
            int s = g.canonical - j;
            if (s == 0) {
                // the previous shift was B_{r-1} + S = 0: constants on K^0 pair with h^1(K), not with eigenvectors on K^r
                row.status = RowStatus::coincident;
                row.note = "coincides with the previous eigenvalue; the constant section of K^0 is not an eigenvector";
                t.rows.push_back(row);
                t.truncated = j < m_max;
                t.stop_reason = "reached K^0: further levels are lambda_r + mu_n/2, mu_n the spectrum of the surface";
                return t;
            }
            row.mult = detail::h0_canonical(g.genus, s);
            if (next <= 0) row.status = RowStatus::boundary;
        } else if (next > 0) {
            row.mult = deg + g.chi / 2;
        } else {
            row.status = next == 0 ? RowStatus::boundary : RowStatus::outside;
            row.note = "deg L_j = " + std::to_string(deg) + " <= 2g - 2: Riemann-Roch no longer gives h^0";
            t.rows.push_back(row);
            t.truncated = j < m_max;
            t.stop_reason = "Riemann-Roch positivity lost at step " + std::to_string(j);
            return t;
        }
        t.rows.push_back(row);
        shift += Bj + S;
        Bj += S;
        deg = next;
    }
    return t;
}

struct SphereRow {
    int m = 0;
    long landau = 0;
    Rational monopole;  // 2(q + m) + 1, q = d/2
};

struct SphereCheck {
    int d = 0;
    std::vector<SphereRow> rows;
    bool pass = true;
};

// multiplicity on the sphere of degree d against the monopole-harmonic count 2(q+m)+1
inline SphereCheck sphere_crosscheck(int d, int m_max) {
    auto geo = SurfaceGeometry::from_degree(0, ratio(d, 2), d);  // unit sphere, S = 1
    SphereCheck c;
    c.d = d;
    Rational qc = ratio(d, 2);
    for (int m = 0; m <= m_max; ++m) {
        SphereRow r{m, landau_multiplicity(geo, m), (qc + m) * 2 + 1};
        if (Rational(r.landau) != r.monopole) c.pass = false;
        c.rows.push_back(r);
    }
    return c;
}

}  // namespace landau::surface
