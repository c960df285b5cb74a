// scalar.hpp: exact rationals, real surds and the float mirror

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace landau {

using Rational = mpq_class;
using Complex = std::complex<double>;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// squarefree split: v = s^2 * r, r squarefree. all factors of our inputs are small
inline std::pair<std::uint64_t, std::uint64_t> squarefree_split(std::uint64_t v) {
    if (v == 0) throw std::invalid_argument("squarefree_split: zero");
    std::uint64_t s = 1, r = 1;
    for (std::uint64_t p = 2; p * p <= v; ++p) {
        int e = 0;
        while (v % p == 0) { v /= p; ++e; }
        for (int i = 0; i < e / 2; ++i) s *= p;
        if (e % 2) r *= p;
    }
    r *= v;
    return {s, r};
}

// element of Q(sqrt2, sqrt3, ...): sum of q * sqrt(r), r squarefree
class Surd {
public:
    Surd() = default;
    Surd(long v) { if (v) t_.emplace_back(1, Rational(v)); }
    Surd(const Rational& q) { if (q != 0) t_.emplace_back(1, q); }

    static Surd radical(const Rational& q, std::uint64_t r) {
        Surd s;
        if (q == 0) return s;
        auto [sq, rr] = squarefree_split(r);
        s.t_.emplace_back(rr, q * Rational(static_cast<unsigned long>(sq)));
        return s;
    }

    // exact sqrt of a non-negative rational
    static Surd sqrt_of(const Rational& q) {
        if (q < 0) throw std::invalid_argument("Surd::sqrt_of: negative");
        if (q == 0) return {};
        mpz_class num = q.get_num(), den = q.get_den();
        mpz_class prod = num * den;  // sqrt(n/d) = sqrt(n d) / d
        if (!prod.fits_ulong_p()) throw std::overflow_error("Surd::sqrt_of: radicand too large");
        return radical(Rational(1) / Rational(den), prod.get_ui());
    }

    const std::vector<std::pair<std::uint64_t, Rational>>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_rational() const { return t_.empty() || (t_.size() == 1 && t_[0].first == 1); }
    Rational rational_part() const {
        for (auto& [r, q] : t_) if (r == 1) return q;
        return 0;
    }

    double to_double() const {
        double v = 0;
        for (auto& [r, q] : t_) v += q.get_d() * std::sqrt(static_cast<double>(r));
        return v;
    }

    Surd& operator+=(const Surd& o) {
        std::vector<std::pair<std::uint64_t, Rational>> out;
        out.reserve(t_.size() + o.t_.size());
        std::size_t i = 0, j = 0;
        while (i < t_.size() || j < o.t_.size()) {
            if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) out.push_back(t_[i++]);
            else if (i == t_.size() || o.t_[j].first < t_[i].first) out.push_back(o.t_[j++]);
            else {
                Rational s = t_[i].second + o.t_[j].second;
                if (s != 0) out.emplace_back(t_[i].first, s);
                ++i; ++j;
            }
        }
        t_ = std::move(out);
        return *this;
    }
    Surd operator-() const {
        Surd s = *this;
        for (auto& [r, q] : s.t_) q = -q;
        return s;
    }
    Surd& operator-=(const Surd& o) { return *this += -o; }

    Surd& operator*=(const Surd& o) {
        if (t_.empty() || o.t_.empty()) { t_.clear(); return *this; }
        std::map<std::uint64_t, Rational> acc;
        for (auto& [a, p] : t_)
            for (auto& [b, q] : o.t_) {
                std::uint64_t g = std::gcd(a, b);
                unsigned __int128 rr = static_cast<unsigned __int128>(a / g) * (b / g);
                if (rr >> 64) throw std::overflow_error("Surd: radical overflow");
                acc[static_cast<std::uint64_t>(rr)] += p * q * Rational(static_cast<unsigned long>(g));
            }
        t_.clear();
        for (auto& [r, q] : acc) if (q != 0) t_.emplace_back(r, q);
        return *this;
    }

    // only single-term values are invertible here; that is all the calculus needs
    Surd inverse() const {
        if (t_.size() != 1) throw std::domain_error("Surd::inverse: only monomial surds are invertible");
        auto [r, q] = t_[0];
        Surd s;
        s.t_.emplace_back(r, Rational(1) / (q * Rational(static_cast<unsigned long>(r))));
        return s;
    }
    Surd& operator/=(const Surd& o) { return *this *= o.inverse(); }

    friend Surd operator+(Surd a, const Surd& b) { return a += b; }
    friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
    friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
    friend Surd operator/(Surd a, const Surd& b) { return a /= b; }
    friend bool operator==(const Surd& a, const Surd& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Surd& a, const Surd& b) { return !(a == b); }

    std::string str() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [r, q] : t_) {
            if (!first) os << " + ";
            first = false;
            os << q.get_str();
            if (r != 1) os << "*sqrt(" << r << ")";
        }
        return os.str();
    }

private:
    std::vector<std::pair<std::uint64_t, Rational>> t_;  // sorted by radicand, no zeros
};

// traits so the algebra templates run on Surd (exact) and Complex (float mirror)
template <class T> struct scalar_traits;

template <> struct scalar_traits<Surd> {
    static constexpr bool exact = true;
    static Surd from_rational(const Rational& q) { return Surd(q); }
    static Surd sqrt_rational(const Rational& q) { return Surd::sqrt_of(q); }
    static bool is_zero(const Surd& s) { return s.is_zero(); }
    static Surd conj(const Surd& s) { return s; }
    static Complex to_complex(const Surd& s) { return {s.to_double(), 0.0}; }
    static double abs(const Surd& s) { return std::abs(s.to_double()); }
};

template <> struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational from_rational(const Rational& q) { return q; }
    static bool is_zero(const Rational& q) { return q == 0; }
    static Rational conj(const Rational& q) { return q; }
    static Complex to_complex(const Rational& q) { return {q.get_d(), 0.0}; }
    static double abs(const Rational& q) { return std::abs(q.get_d()); }
};

template <> struct scalar_traits<Complex> {
    static constexpr bool exact = false;
    static Complex from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
    static Complex sqrt_rational(const Rational& q) { return {std::sqrt(q.get_d()), 0.0}; }
    static bool is_zero(const Complex& c) { return c == Complex(0.0, 0.0); }
    static Complex conj(const Complex& c) { return std::conj(c); }
    static Complex to_complex(const Complex& c) { return c; }
    static double abs(const Complex& c) { return std::abs(c); }
};

inline std::string to_str(const Surd& s) { return s.str(); }
inline std::string to_str(const Rational& q) { return q.get_str(); }
inline std::string to_str(const Complex& c) {
    std::ostringstream os;
    os << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    return os.str();
}

inline Rational ratio(const mpz_class& a, const mpz_class& b) {
    Rational q(a, b);
    q.canonicalize();
    return q;
}

template <class T> bool is_zero(const T& v) { return scalar_traits<T>::is_zero(v); }
template <class T> T from_rational(const Rational& q) { return scalar_traits<T>::from_rational(q); }

inline mpz_class factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

inline mpz_class binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

}  // namespace landau
