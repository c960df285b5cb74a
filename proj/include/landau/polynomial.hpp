// polynomial.hpp: sparse multivariate polynomials with exact or float coefficients

#pragma once

#include "multi_index.hpp"
#include "scalar.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace landau {

template <class T>
class Poly {
public:
    using Exponent = std::vector<int>;

    Poly() = default;
    explicit Poly(int nvars) : nv_(nvars) {}

    static Poly constant(int nvars, const T& c) {
        Poly p(nvars);
        p.add_term(Exponent(static_cast<std::size_t>(nvars), 0), c);
        return p;
    }
    static Poly variable(int nvars, int i, const T& c = T(1)) {
        Poly p(nvars);
        Exponent e(static_cast<std::size_t>(nvars), 0);
        e[static_cast<std::size_t>(i)] = 1;
        p.add_term(e, c);
        return p;
    }

    int nvars() const { return nv_; }
    const std::map<Exponent, T>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }

    void add_term(const Exponent& e, const T& v) {
        if (static_cast<int>(e.size()) != nv_) throw std::invalid_argument("Poly: exponent length mismatch");
        if (landau::is_zero(v)) return;
        auto it = c_.find(e);
        if (it == c_.end()) { c_.emplace(e, v); return; }
        it->second += v;
        if (landau::is_zero(it->second)) c_.erase(it);
    }

    T coeff(const Exponent& e) const {
        auto it = c_.find(e);
        return it == c_.end() ? T(0) : it->second;
    }

    int degree() const {
        int d = -1;
        for (auto& [e, v] : c_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    Poly& operator+=(const Poly& o) {
        check(o);
        for (auto& [e, v] : o.c_) add_term(e, v);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check(o);
        for (auto& [e, v] : o.c_) add_term(e, -v);
        return *this;
    }
    Poly operator-() const {
        Poly p(nv_);
        for (auto& [e, v] : c_) p.c_.emplace(e, -v);
        return p;
    }
    Poly& operator*=(const T& s) {
        if (landau::is_zero(s)) { c_.clear(); return *this; }
        for (auto& [e, v] : c_) v *= s;
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const T& s) { return a *= s; }
    friend Poly operator*(const T& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check(b);
        Poly p(a.nv_);
        Exponent e(static_cast<std::size_t>(a.nv_));
        for (auto& [ea, va] : a.c_)
            for (auto& [eb, vb] : b.c_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                p.add_term(e, va * vb);
            }
        return p;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.nv_ == b.nv_ && a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative(int var) const {
        Poly p(nv_);
        for (auto& [e, v] : c_) {
            int k = e[static_cast<std::size_t>(var)];
            if (k == 0) continue;
            Exponent f = e;
            --f[static_cast<std::size_t>(var)];
            p.add_term(f, v * T(static_cast<long>(k)));
        }
        return p;
    }

    Poly times_variable(int var) const {
        Poly p(nv_);
        for (auto& [e, v] : c_) {
            Exponent f = e;
            ++f[static_cast<std::size_t>(var)];
            p.c_.emplace(f, v);
        }
        return p;
    }

    Poly pow(int k) const {
        Poly r = constant(nv_, T(1));
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    // replace variable i by subs[i]; all subs live in the same target ring
    Poly substitute(const std::vector<Poly>& subs) const {
        if (static_cast<int>(subs.size()) != nv_) throw std::invalid_argument("Poly::substitute: arity mismatch");
        int tv = subs.empty() ? 0 : subs[0].nvars();
        std::vector<std::vector<Poly>> powers(subs.size());
        Poly out(tv);
        for (auto& [e, v] : c_) {
            Poly term = constant(tv, v);
            for (std::size_t i = 0; i < e.size(); ++i) {
                auto& pw = powers[i];
                if (pw.empty()) pw.push_back(constant(tv, T(1)));
                while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * subs[i]);
                if (e[i]) term = term * pw[static_cast<std::size_t>(e[i])];
            }
            out += term;
        }
        return out;
    }

    // set the listed variables to zero and drop them: keeps the first `keep` variables
    Poly restrict_to_first(int keep) const {
        Poly p(keep);
        for (auto& [e, v] : c_) {
            bool zero = true;
            for (std::size_t i = static_cast<std::size_t>(keep); i < e.size(); ++i) if (e[i]) { zero = false; break; }
            if (zero) p.add_term(Exponent(e.begin(), e.begin() + keep), v);
        }
        return p;
    }

    Poly embed(int total_vars, int offset) const {
        Poly p(total_vars);
        for (auto& [e, v] : c_) {
            Exponent f(static_cast<std::size_t>(total_vars), 0);
            for (std::size_t i = 0; i < e.size(); ++i) f[i + static_cast<std::size_t>(offset)] = e[i];
            p.c_.emplace(f, v);
        }
        return p;
    }

    Complex evaluate(const std::vector<Complex>& x) const {
        Complex s = 0;
        for (auto& [e, v] : c_) {
            Complex t = scalar_traits<T>::to_complex(v);
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t *= x[i];
            s += t;
        }
        return s;
    }

private:
    void check(const Poly& o) const {
        if (o.nv_ != nv_) throw std::invalid_argument("Poly: variable count mismatch");
    }
    int nv_ = 0;
    std::map<Exponent, T> c_;
};

// polynomials in (z_1..z_n, zbar_1..zbar_n): variable i is z_i, n+i is zbar_i
template <class T>
class PolyZZbar {
public:
    PolyZZbar() = default;
    explicit PolyZZbar(int n) : n_(n), p_(2 * n) {}
    PolyZZbar(int n, Poly<T> p) : n_(n), p_(std::move(p)) {
        if (p_.nvars() != 2 * n) throw std::invalid_argument("PolyZZbar: wrong variable count");
    }

    static PolyZZbar monomial(const Monomial& m, const T& c = T(1)) {
        int n = m.a.size();
        PolyZZbar q(n);
        q.add(m, c);
        return q;
    }
    static PolyZZbar one(int n) { return monomial({MultiIndex(n), MultiIndex(n)}); }
    static PolyZZbar z(int n, int i) { return monomial({MultiIndex::unit(n, i), MultiIndex(n)}); }
    static PolyZZbar zbar(int n, int i) { return monomial({MultiIndex(n), MultiIndex::unit(n, i)}); }

    int n() const { return n_; }
    const Poly<T>& poly() const { return p_; }
    bool is_zero() const { return p_.is_zero(); }
    int degree() const { return p_.degree(); }

    void add(const Monomial& m, const T& c) { p_.add_term(key(m), c); }
    T coeff(const Monomial& m) const { return p_.coeff(key(m)); }

    std::vector<std::pair<Monomial, T>> terms() const {
        std::vector<std::pair<Monomial, T>> out;
        for (auto& [e, v] : p_.terms()) out.emplace_back(unkey(e), v);
        return out;
    }

    PolyZZbar d_z(int i) const { return {n_, p_.derivative(i)}; }
    PolyZZbar d_zbar(int i) const { return {n_, p_.derivative(n_ + i)}; }
    PolyZZbar times_z(int i) const { return {n_, p_.times_variable(i)}; }
    PolyZZbar times_zbar(int i) const { return {n_, p_.times_variable(n_ + i)}; }

    T value_at_zero() const { return p_.coeff(std::vector<int>(static_cast<std::size_t>(2 * n_), 0)); }

    Complex evaluate(const std::vector<Complex>& zz) const {
        std::vector<Complex> x(zz.begin(), zz.end());
        for (auto& v : zz) x.push_back(std::conj(v));
        return p_.evaluate(x);
    }

    PolyZZbar& operator+=(const PolyZZbar& o) { p_ += o.p_; return *this; }
    PolyZZbar& operator-=(const PolyZZbar& o) { p_ -= o.p_; return *this; }
    friend PolyZZbar operator+(PolyZZbar a, const PolyZZbar& b) { return a += b; }
    friend PolyZZbar operator-(PolyZZbar a, const PolyZZbar& b) { return a -= b; }
    friend PolyZZbar operator*(const PolyZZbar& a, const PolyZZbar& b) { return {a.n_, a.p_ * b.p_}; }
    friend PolyZZbar operator*(const T& s, PolyZZbar a) { a.p_ *= s; return a; }
    PolyZZbar operator-() const { return {n_, -p_}; }
    friend bool operator==(const PolyZZbar& a, const PolyZZbar& b) { return a.n_ == b.n_ && a.p_ == b.p_; }
    friend bool operator!=(const PolyZZbar& a, const PolyZZbar& b) { return !(a == b); }

    std::vector<int> key(const Monomial& m) const {
        if (m.a.size() != n_ || m.b.size() != n_) throw std::invalid_argument("PolyZZbar: monomial dimension mismatch");
        std::vector<int> e(m.a.e);
        e.insert(e.end(), m.b.e.begin(), m.b.e.end());
        return e;
    }
    Monomial unkey(const std::vector<int>& e) const {
        return {MultiIndex(std::vector<int>(e.begin(), e.begin() + n_)), MultiIndex(std::vector<int>(e.begin() + n_, e.end()))};
    }

    std::string str() const {
        if (p_.is_zero()) return "0";
        std::string s;
        for (auto& [m, v] : terms()) {
            if (!s.empty()) s += " + ";
            s += "(" + to_str(v) + ")";
            for (int i = 0; i < n_; ++i) {
                if (m.a[i]) s += "*z" + std::to_string(i + 1) + "^" + std::to_string(m.a[i]);
                if (m.b[i]) s += "*zb" + std::to_string(i + 1) + "^" + std::to_string(m.b[i]);
            }
        }
        return s;
    }

private:
    int n_ = 0;
    Poly<T> p_;
};

}  // namespace landau

namespace landau {

// exact rational polynomial viewed over a larger scalar ring
template <class U>
PolyZZbar<U> lift(const PolyZZbar<Rational>& p) {
    PolyZZbar<U> out(p.n());
    for (auto& [m, v] : p.terms()) out.add(m, from_rational<U>(v));
    return out;
}

}  // namespace landau
