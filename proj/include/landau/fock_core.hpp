// fock_core.hpp: the symbol algebra S(C^n) on truncated antiholomorphic polynomials

#pragma once

#include "trunc_op.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace landau::fock {

// a_i = d/dzbar_i and its creation partner. On the antiholomorphic kind a_i* is
// multiplication by zbar_i; on the full kind it is zbar_i - d/dz_i.
template <class T>
std::pair<TruncOp<T>, TruncOp<T>> ladder_matrices(const BasisPtr& b, int i) {
    if (i < 0 || i >= b->n()) throw std::out_of_range("ladder_matrices: index out of range");
    auto a = TruncOp<T>::from_images(b, [&](const Monomial& m) {
        return PolyZZbar<T>::monomial(m).d_zbar(i);
    });
    auto as = TruncOp<T>::from_images(b, [&](const Monomial& m) {
        auto p = PolyZZbar<T>::monomial(m);
        if (b->kind() == BasisKind::antiholomorphic) return p.times_zbar(i);
        return p.times_zbar(i) - p.d_z(i);
    });
    return {a, as};
}

// rho(sum u_i U_i + v_i Ubar_i) = sum -u_i zbar_i + v_i d/dzbar_i
template <class T>
TruncOp<T> rho_tangent(const BasisPtr& b, const std::vector<T>& u, const std::vector<T>& v) {
    if (b->kind() != BasisKind::antiholomorphic) throw std::invalid_argument("rho_tangent: antiholomorphic basis required");
    if (static_cast<int>(u.size()) != b->n() || static_cast<int>(v.size()) != b->n())
        throw std::invalid_argument("rho_tangent: dimension mismatch");
    return TruncOp<T>::from_images(b, [&](const Monomial& m) {
        auto p = PolyZZbar<T>::monomial(m);
        PolyZZbar<T> out(b->n());
        for (int i = 0; i < b->n(); ++i) {
            if (!is_zero(u[static_cast<std::size_t>(i)])) out -= u[static_cast<std::size_t>(i)] * p.times_zbar(i);
            if (!is_zero(v[static_cast<std::size_t>(i)])) out += v[static_cast<std::size_t>(i)] * p.d_zbar(i);
        }
        return out;
    });
}

// (β!)^{-1/2} zbar^β -> (α!)^{-1/2} zbar^α, i.e. zbar^β -> sqrt(β!/α!) zbar^α
template <class T>
TruncOp<T> rho_ab(const BasisPtr& b, const MultiIndex& al, const MultiIndex& be) {
    if (b->kind() != BasisKind::antiholomorphic) throw std::invalid_argument("rho_ab: antiholomorphic basis required");
    if (al.size() != b->n() || be.size() != b->n()) throw std::invalid_argument("rho_ab: dimension mismatch");
    if (al.weight() > b->cap() || be.weight() > b->cap()) throw std::invalid_argument("rho_ab: degree exceeds cap");
    TruncOp<T> r(b, b->cap());
    r.set_tail_zero(true);
    int j = b->index({MultiIndex(b->n()), be});
    int i = b->index({MultiIndex(b->n()), al});
    r.column(j).push_back({i, scalar_traits<T>::sqrt_rational(ratio(be.factorial(), al.factorial()))});
    return r;
}

template <class T>
TruncOp<T> pi_m(const BasisPtr& b, int m) {
    if (b->kind() != BasisKind::antiholomorphic) throw std::invalid_argument("pi_m: antiholomorphic basis required");
    if (m < 0 || m > b->cap()) throw std::invalid_argument("pi_m: level exceeds degree cap");
    TruncOp<T> r(b, b->cap());
    r.set_tail_zero(true);
    for (int j = 0; j < b->size(); ++j)
        if (b->degree(j) == m) r.column(j).push_back({j, T(1)});
    return r;
}

}  // namespace landau::fock
