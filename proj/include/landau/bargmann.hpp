// bargmann.hpp: the calculus on the full polynomial space P(C^n)
//
// a_i = d/dzbar_i, a_i* = zbar_i - d/dz_i (adjoint of a_i for the Gaussian inner product).
// rho~00 is the orthogonal projector onto the holomorphic polynomials,
// sigma_ab = (a*)^a rho~00 a^b and rho~_ab = (a! b!)^{-1/2} sigma_ab.

#pragma once

#include "multi_index.hpp"
#include "polynomial.hpp"
#include "scalar.hpp"
#include "trunc_op.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace landau::bargmann {

using RPoly = PolyZZbar<Rational>;

// <z^a zbar^b, z^c zbar^d> = prod_i [a_i + d_i = b_i + c_i] (a_i + d_i)!
// note this is not diagonal in the monomials: <z zbar, 1> = 1
inline Rational inner_product(const Monomial& f, const Monomial& g) {
    mpz_class v = 1;
    for (int i = 0; i < f.a.size(); ++i) {
        int s = f.a[i] + g.b[i];
        if (s != f.b[i] + g.a[i]) return 0;
        v *= factorial(s);
    }
    return Rational(v);
}

template <class T>
T inner_product(const PolyZZbar<T>& f, const PolyZZbar<T>& g) {
    T s(0);
    for (auto& [mf, cf] : f.terms())
        for (auto& [mg, cg] : g.terms()) {
            Rational w = inner_product(mf, mg);
            if (w != 0) s += scalar_traits<T>::conj(cf) * cg * from_rational<T>(w);
        }
    return s;
}

// rho~00 (z^a zbar^b) = prod a_i!/(a_i - b_i)! z^{a-b} when a >= b, else 0
inline RPoly bargmann_project(const Monomial& m) {
    int n = m.a.size();
    RPoly out(n);
    if (!m.a.dominates(m.b)) return out;
    MultiIndex e = m.a - m.b;
    out.add({e, MultiIndex(n)}, ratio(m.a.factorial(), e.factorial()));
    return out;
}

template <class T>
PolyZZbar<T> project(const PolyZZbar<T>& f) {
    PolyZZbar<T> out(f.n());
    for (auto& [m, c] : f.terms())
        for (auto& [mm, v] : bargmann_project(m).terms()) out.add(mm, c * from_rational<T>(v));
    return out;
}

template <class T>
PolyZZbar<T> lower(const MultiIndex& be, PolyZZbar<T> f) {
    for (int i = 0; i < be.size(); ++i)
        for (int k = 0; k < be[i]; ++k) f = f.d_zbar(i);
    return f;
}

template <class T>
PolyZZbar<T> raise(const MultiIndex& al, PolyZZbar<T> f) {
    for (int i = 0; i < al.size(); ++i)
        for (int k = 0; k < al[i]; ++k) f = f.times_zbar(i) - f.d_z(i);
    return f;
}

template <class T>
PolyZZbar<T> sigma_apply(const MultiIndex& al, const MultiIndex& be, const PolyZZbar<T>& f) {
    return raise(al, project(lower(be, f)));
}

inline Surd tilde_norm(const MultiIndex& al, const MultiIndex& be) {
    return Surd::sqrt_of(ratio(1, al.factorial() * be.factorial()));
}

inline PolyZZbar<Surd> tilde_rho_apply(const MultiIndex& al, const MultiIndex& be, const PolyZZbar<Surd>& f) {
    return tilde_norm(al, be) * sigma_apply(al, be, f);
}

inline void check_full(const BasisPtr& b, const char* who) {
    if (b->kind() != BasisKind::full) throw std::invalid_argument(std::string(who) + ": full basis required");
}

inline TruncOp<Surd> tilde_rho(const BasisPtr& b, const MultiIndex& al, const MultiIndex& be) {
    check_full(b, "tilde_rho");
    if (al.size() != b->n() || be.size() != b->n()) throw std::invalid_argument("tilde_rho: dimension mismatch");
    return TruncOp<Surd>::from_images(b, [&](const Monomial& m) {
        return tilde_rho_apply(al, be, PolyZZbar<Surd>::monomial(m));
    });
}

template <class T>
bool preserves_antiholomorphic(const TruncOp<T>& x) {
    const auto& b = x.basis();
    for (int j = 0; j < b->size(); ++j) {
        if ((*b)[j].a.weight() != 0) continue;
        for (auto& [i, v] : x.column(j))
            if ((*b)[i].a.weight() != 0) return false;
    }
    return true;
}

// the block of a full-basis operator on the zbar-monomials
template <class T>
TruncOp<T> restrict_to_antiholomorphic(const TruncOp<T>& x, const BasisPtr& anti) {
    const auto& b = x.basis();
    check_full(b, "restrict_to_antiholomorphic");
    if (anti->kind() != BasisKind::antiholomorphic || anti->n() != b->n() || anti->cap() != b->cap())
        throw std::invalid_argument("restrict_to_antiholomorphic: incompatible target basis");
    if (!preserves_antiholomorphic(x)) throw std::domain_error("restrict_to_antiholomorphic: operator leaves the subspace");
    TruncOp<T> r(anti, x.exact_degree());
    r.set_tail_zero(x.tail_zero());
    for (int j = 0; j < anti->size(); ++j) {
        int jf = b->index((*anti)[j]);
        for (auto& [i, v] : x.column(jf)) r.column(j).push_back({anti->index((*b)[i]), v});
        std::sort(r.column(j).begin(), r.column(j).end(), [](auto& p, auto& q) { return p.first < q.first; });
    }
    return r;
}

// unnormalized P_ab = (zbar - d_z)^a (-z)^b; leading monomial z^b zbar^a with sign (-1)^{|b|}
inline RPoly P_ab(const MultiIndex& al, const MultiIndex& be) {
    int n = al.size();
    RPoly f = RPoly::monomial({be, MultiIndex(n)}, be.weight() % 2 ? Rational(-1) : Rational(1));
    return raise(al, f);
}

inline PolyZZbar<Surd> p_ab(const MultiIndex& al, const MultiIndex& be) {
    return tilde_norm(al, be) * lift<Surd>(P_ab(al, be));
}

using Expansion = std::map<std::pair<MultiIndex, MultiIndex>, Rational>;

// q = sum d_ab P_ab, peeled off from the top degree down. cap < 0 means no cap
inline Expansion op_expand(RPoly q, int cap = -1) {
    if (cap >= 0 && q.degree() > cap) throw std::domain_error("op_expand: polynomial degree exceeds the cap");
    Expansion d;
    while (!q.is_zero()) {
        int deg = q.degree();
        Monomial top{};
        Rational c;
        for (auto& [m, v] : q.terms())
            if (m.degree() == deg) { top = m; c = v; break; }
        Rational coef = top.a.weight() % 2 ? Rational(-c) : c;
        d[{top.b, top.a}] += coef;
        q -= coef * P_ab(top.b, top.a);
    }
    for (auto it = d.begin(); it != d.end();) it = it->second == 0 ? d.erase(it) : std::next(it);
    return d;
}

// Op(q) f, untruncated
template <class T>
PolyZZbar<T> op_apply(const Expansion& d, const PolyZZbar<T>& f) {
    PolyZZbar<T> out(f.n());
    for (auto& [ab, c] : d) out += from_rational<T>(c) * sigma_apply(ab.first, ab.second, f);
    return out;
}

template <class T>
PolyZZbar<T> op_apply(const RPoly& q, const PolyZZbar<T>& f) { return op_apply(op_expand(q), f); }

inline TruncOp<Rational> op_of(const BasisPtr& b, const RPoly& q) {
    check_full(b, "op_of");
    auto d = op_expand(q, b->cap());
    return TruncOp<Rational>::from_images(b, [&](const Monomial& m) { return op_apply(d, RPoly::monomial(m)); });
}

// sum over |g| <= D of the zbar^g coefficient of Op(q) zbar^g. only g = b terms of the
// expansion contribute, so D >= deg q captures the whole trace
inline Rational antiholomorphic_trace(const RPoly& q, int D) {
    if (q.degree() > D) throw std::domain_error("antiholomorphic_trace: degree exceeds the cap");
    auto d = op_expand(q);
    int n = q.n();
    Rational t = 0;
    for (auto& g : indices_up_to(n, D)) {
        Monomial m{MultiIndex(n), g};
        t += op_apply(d, RPoly::monomial(m)).coeff(m);
    }
    return t;
}

inline Rational max_abs_coeff(const RPoly& p) {
    Rational r = 0;
    for (auto& [m, v] : p.terms()) r = std::max(r, Rational(abs(v)));
    return r;
}

struct ComposeLawResult {
    Rational residual;     // over all checks, symbolic and matrix
    int columns = 0;       // monomials of degree <= D tested symbolically
    int matrix_degree = -1;  // faithful degree of the truncated comparison (-1: none)
};

// Op(f) o Op(g) = Op(Op(f) g), on every monomial up to degree D and on the truncated matrices
inline ComposeLawResult op_compose_law(const RPoly& f, const RPoly& g, int D) {
    ComposeLawResult r;
    r.residual = 0;
    auto df = op_expand(f), dg = op_expand(g);
    RPoly fg = op_apply(df, g);
    auto dfg = op_expand(fg);
    auto b = enumerate_basis(f.n(), D, BasisKind::full);
    for (int j = 0; j < b->size(); ++j) {
        RPoly h = RPoly::monomial((*b)[j]);
        r.residual = std::max(r.residual, max_abs_coeff(op_apply(df, op_apply(dg, h)) - op_apply(dfg, h)));
        ++r.columns;
    }
    if (std::max({f.degree(), g.degree(), fg.degree()}) <= D) {
        auto lhs = compose(op_of(b, f), op_of(b, g));
        auto rhs = op_of(b, fg);
        int e = std::min(lhs.exact_degree(), rhs.exact_degree());
        r.matrix_degree = e;
        for (int j = 0; j < b->size(); ++j) {
            if (b->degree(j) > e) continue;
            std::map<int, Rational> acc;
            for (auto& [i, v] : lhs.column(j)) acc[i] += v;
            for (auto& [i, v] : rhs.column(j)) acc[i] -= v;
            for (auto& [i, v] : acc) r.residual = std::max(r.residual, Rational(abs(v)));
        }
    }
    return r;
}

// literal evaluation of [exp(box)(u(-zeta, zbar - zetabar) v(z + zeta, zetabar))] at zeta = 0.
// variables: z (0..n-1), zbar (n..2n-1), zeta (2n..3n-1), zetabar (3n..4n-1)
inline RPoly star_product(const RPoly& u, const RPoly& v) {
    int n = u.n();
    if (v.n() != n) throw std::invalid_argument("star_product: dimension mismatch");
    using P = Poly<Rational>;
    int nv = 4 * n;
    auto var = [&](int i) { return P::variable(nv, i); };
    std::vector<P> su, sv;
    for (int i = 0; i < n; ++i) su.push_back(-var(2 * n + i));
    for (int i = 0; i < n; ++i) su.push_back(var(n + i) - var(3 * n + i));
    for (int i = 0; i < n; ++i) sv.push_back(var(i) + var(2 * n + i));
    for (int i = 0; i < n; ++i) sv.push_back(var(3 * n + i));
    P w = u.poly().substitute(su) * v.poly().substitute(sv);
    P total(nv), term = w;
    for (int k = 0; !term.is_zero(); ++k) {
        if (k > 0) term = term * ratio(1, k);
        total += term;
        P next(nv);
        for (int i = 0; i < n; ++i) next += term.derivative(2 * n + i).derivative(3 * n + i);
        term = next;
    }
    return RPoly(n, total.restrict_to_first(2 * n));
}

struct StarOrderReport {
    Rational residual_op_u_v;  // |u * v - Op(u) v|
    Rational residual_op_v_u;  // |u * v - Op(v) u|
    const char* matches() const {
        if (residual_op_u_v == 0 && residual_op_v_u == 0) return "both";
        if (residual_op_u_v == 0) return "Op(u)v";
        if (residual_op_v_u == 0) return "Op(v)u";
        return "neither";
    }
};

inline StarOrderReport star_order(const RPoly& u, const RPoly& v) {
    RPoly s = star_product(u, v);
    return {max_abs_coeff(s - op_apply(u, v)), max_abs_coeff(s - op_apply(v, u))};
}

inline RPoly number_apply(int i, const RPoly& f) {
    RPoly g = f.d_zbar(i);
    return g.times_zbar(i) - g.d_z(i);
}

// exact rank over Q of a list of polynomials
inline int exact_rank(const std::vector<RPoly>& vs) {
    std::map<std::vector<int>, int> col;
    for (auto& v : vs)
        for (auto& [e, c] : v.poly().terms()) col.emplace(e, static_cast<int>(col.size()));
    std::vector<std::vector<Rational>> rows;
    for (auto& v : vs) {
        std::vector<Rational> r(col.size());
        for (auto& [e, c] : v.poly().terms()) r[static_cast<std::size_t>(col[e])] = c;
        rows.push_back(std::move(r));
    }
    int rank = 0;
    std::size_t ncol = col.size();
    for (std::size_t c = 0; c < ncol && rank < static_cast<int>(rows.size()); ++c) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
        auto& pr = rows[static_cast<std::size_t>(rank)];
        for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            Rational f = rows[r][c] / pr[c];
            for (std::size_t k = c; k < ncol; ++k) rows[r][k] -= f * pr[k];
        }
        ++rank;
    }
    return rank;
}

// dimension of {q : deg q <= D, Op(q) = 0}. Op(q) zbar^b = b! sum_a d_ab zbar^a, so feeding
// all monomials up to degree D detects every nonzero q of that degree
inline int op_kernel_dimension(int n, int D) {
    auto b = enumerate_basis(n, D, BasisKind::full);
    std::vector<RPoly> images;
    int nv = 4 * n;  // slot layout: (input index, output monomial) packed into one polynomial ring
    for (int j = 0; j < b->size(); ++j) {
        auto d = op_expand(RPoly::monomial((*b)[j]));
        Poly<Rational> flat(nv);
        for (int k = 0; k < b->size(); ++k) {
            RPoly img = op_apply(d, RPoly::monomial((*b)[k]));
            // tag the input monomial with its exponents in the upper 2n slots
            for (auto& [m, c] : img.terms()) {
                std::vector<int> e = img.key(m);
                auto tag = img.key((*b)[k]);
                e.insert(e.end(), tag.begin(), tag.end());
                flat.add_term(e, c);
            }
        }
        images.emplace_back(2 * n, flat);
    }
    return b->size() - exact_rank(images);
}

struct LandauDecomposition {
    BasisPtr basis;
    std::map<MultiIndex, std::vector<RPoly>> spaces;  // L_alpha: v_ab = (a*)^alpha z^beta, |alpha| + |beta| <= D
    std::vector<int> eigenvalues;                     // distinct eigenvalues of the a_i* a_i
    bool eigen_ok = false;                            // N_i v_ab = alpha_i v_ab through the truncated matrices
    bool spans_truncation = false;                    // the v_ab form a basis of the truncation
};

inline LandauDecomposition landau_decompose(const BasisPtr& b) {
    check_full(b, "landau_decompose");
    int n = b->n(), D = b->cap();
    LandauDecomposition dec;
    dec.basis = b;
    std::vector<TruncOp<Rational>> N;
    for (int i = 0; i < n; ++i)
        N.push_back(TruncOp<Rational>::from_images(b, [&](const Monomial& m) { return number_apply(i, RPoly::monomial(m)); }));
    dec.eigen_ok = true;
    std::vector<RPoly> all;
    std::vector<bool> seen(static_cast<std::size_t>(D + 1), false);
    for (auto& al : indices_up_to(n, D)) {
        auto& space = dec.spaces[al];
        for (auto& be : indices_up_to(n, D - al.weight())) {
            RPoly v = raise(al, RPoly::monomial({be, MultiIndex(n)}));
            for (int i = 0; i < n; ++i) {
                if (N[static_cast<std::size_t>(i)].exact_degree() < D) { dec.eigen_ok = false; continue; }
                if (apply(N[static_cast<std::size_t>(i)], v) != Rational(al[i]) * v) dec.eigen_ok = false;
                seen[static_cast<std::size_t>(al[i])] = true;
            }
            space.push_back(v);
            all.push_back(v);
        }
    }
    for (int k = 0; k <= D; ++k) if (seen[static_cast<std::size_t>(k)]) dec.eigenvalues.push_back(k);
    dec.spans_truncation = static_cast<int>(all.size()) == b->size() && exact_rank(all) == b->size();
    return dec;
}

}  // namespace landau::bargmann
