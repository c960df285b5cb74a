// laguerre.hpp: Q_m^{(p)} = x^{-p}/m! (d/dx - 1)^m x^{m+p}, computed by symbolic expansion

#pragma once

#include "multi_index.hpp"
#include "polynomial.hpp"
#include "scalar.hpp"

#include <stdexcept>
#include <vector>

namespace landau {

struct LaguerrePoly {
    int m = 0, p = 0;
    std::vector<Rational> coeffs;  // coefficient of x^j at index j

    double operator()(double x) const {
        double v = 0;
        for (std::size_t j = coeffs.size(); j-- > 0;) v = v * x + coeffs[j].get_d();
        return v;
    }
};

inline LaguerrePoly laguerre_q(int m, int p) {
    if (m < 0 || p < 0) throw std::invalid_argument("laguerre_q: m and p must be non-negative");
    // work on coefficient vectors of x^0..x^{m+p}
    std::vector<Rational> c(static_cast<std::size_t>(m + p + 1));
    c.back() = 1;
    for (int step = 0; step < m; ++step) {
        std::vector<Rational> d(c.size());
        for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] += c[j] * Rational(static_cast<long>(j));
        for (std::size_t j = 0; j < c.size(); ++j) d[j] -= c[j];
        c = std::move(d);
    }
    for (int j = 0; j < p; ++j)
        if (c[static_cast<std::size_t>(j)] != 0) throw std::logic_error("laguerre_q: x^p does not divide");
    LaguerrePoly q{m, p, {}};
    Rational inv = ratio(1, factorial(m));
    for (std::size_t j = static_cast<std::size_t>(p); j < c.size(); ++j) q.coeffs.push_back(c[j] * inv);
    return q;
}

struct SumIdentityResult {
    bool equal = false;
    Rational residual;  // largest |coefficient| of lhs - rhs
};

// Q_m^{(n-1)}(x_1 + ... + x_n) against sum over |alpha| = m of prod Q_{alpha_i}^{(0)}(x_i)
inline SumIdentityResult laguerre_sum_identity(int m, int n) {
    if (m < 0 || n < 1) throw std::invalid_argument("laguerre_sum_identity: need m >= 0, n >= 1");
    using P = Poly<Rational>;
    P s(n);
    for (int i = 0; i < n; ++i) s += P::variable(n, i);
    auto to_poly = [&](const LaguerrePoly& q, const P& arg) {
        P out(n), pw = P::constant(n, 1);
        for (auto& c : q.coeffs) {
            out += pw * c;
            pw = pw * arg;
        }
        return out;
    };
    P lhs = to_poly(laguerre_q(m, n - 1), s);
    P rhs(n);
    for (auto& al : indices_of_weight(n, m)) {
        P term = P::constant(n, 1);
        for (int i = 0; i < n; ++i) term = term * to_poly(laguerre_q(al[i], 0), P::variable(n, i));
        rhs += term;
    }
    P diff = lhs - rhs;
    SumIdentityResult r;
    r.equal = diff.is_zero();
    r.residual = 0;
    for (auto& [e, v] : diff.terms()) r.residual = std::max(r.residual, Rational(abs(v)));
    return r;
}

}  // namespace landau
