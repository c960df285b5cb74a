// trig_poly.hpp: lattice-periodic trigonometric polynomials sum c_pq e^{2 pi i (p x + q y)/L}

#pragma once

#include "geometry.hpp"

#include <Eigen/Dense>

#include <cctype>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace landau::torus {

class TrigPoly {
public:
    using Mode = std::pair<int, int>;

    TrigPoly() = default;
    explicit TrigPoly(double side) : side_(side) {}

    static TrigPoly constant(Complex c, double side = 0) {
        TrigPoly t(side);
        t.add({0, 0}, c);
        return t;
    }
    static TrigPoly mode(int p, int q, Complex c, double side) {
        TrigPoly t(side);
        t.add({p, q}, c);
        return t;
    }

    // products of factors like 2, cosx, sin3y joined by '*', summed with '+'
    static TrigPoly parse(const std::string& text, const TorusGeometry& g) {
        double L = g.side();
        std::string s;
        for (char c : text) if (!std::isspace(static_cast<unsigned char>(c))) s += c;
        if (s.empty()) throw std::invalid_argument("TrigPoly: empty expression");
        TrigPoly total(L);
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t plus = s.find('+', pos);
            std::string term = s.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
            TrigPoly prod = constant(1.0, L);
            std::size_t q = 0;
            while (q <= term.size()) {
                std::size_t star = term.find('*', q);
                std::string fac = term.substr(q, star == std::string::npos ? std::string::npos : star - q);
                prod = prod * factor(fac, L);
                if (star == std::string::npos) break;
                q = star + 1;
            }
            total = total + prod;
            if (plus == std::string::npos) break;
            pos = plus + 1;
        }
        return total;
    }

    double side() const { return side_; }
    const std::map<Mode, Complex>& modes() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == Mode{0, 0}); }
    Complex mean() const {
        auto it = c_.find({0, 0});
        return it == c_.end() ? Complex(0) : it->second;
    }

    void add(Mode m, Complex v) {
        if (v == Complex(0)) return;
        if (m != Mode{0, 0} && side_ <= 0) throw std::invalid_argument("TrigPoly: oscillating mode needs a side length");
        auto& slot = c_[m];
        slot += v;
        if (std::abs(slot) < 1e-300) c_.erase(m);
    }

    Complex operator()(double x, double y) const {
        Complex s = 0;
        for (auto& [m, v] : c_) {
            double a = m.first == 0 && m.second == 0 ? 0.0 : 2 * M_PI / side_ * (m.first * x + m.second * y);
            s += v * Complex(std::cos(a), std::sin(a));
        }
        return s;
    }

    TrigPoly dx() const { return derivative(true); }
    TrigPoly dy() const { return derivative(false); }

    TrigPoly conj() const {
        TrigPoly t(side_);
        for (auto& [m, v] : c_) t.add({-m.first, -m.second}, std::conj(v));
        return t;
    }

    friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
        TrigPoly t(common(a, b));
        for (auto& [m, v] : a.c_) t.add(m, v);
        for (auto& [m, v] : b.c_) t.add(m, v);
        return t;
    }
    friend TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) { return a + b * Complex(-1); }
    friend TrigPoly operator*(const TrigPoly& a, Complex s) {
        TrigPoly t(a.side_);
        for (auto& [m, v] : a.c_) t.add(m, v * s);
        return t;
    }
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
        TrigPoly t(common(a, b));
        for (auto& [ma, va] : a.c_)
            for (auto& [mb, vb] : b.c_) t.add({ma.first + mb.first, ma.second + mb.second}, va * vb);
        return t;
    }

    // values at the grid points (i h, j h), flattened as s = i N + j
    Eigen::VectorXcd on_grid(int N, double h) const {
        Eigen::VectorXcd v(N * N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) v(i * N + j) = (*this)(i * h, j * h);
        return v;
    }

    template <class Bundle>
    double sup_on_grid(const Bundle& b) const {
        return on_grid(b.N(), b.h()).cwiseAbs().maxCoeff();
    }

private:
    static double common(const TrigPoly& a, const TrigPoly& b) {
        if (a.side_ > 0 && b.side_ > 0 && std::abs(a.side_ - b.side_) > 1e-12)
            throw std::invalid_argument("TrigPoly: different periods");
        return a.side_ > 0 ? a.side_ : b.side_;
    }

    TrigPoly derivative(bool wrt_x) const {
        TrigPoly t(side_);
        for (auto& [m, v] : c_) {
            int p = wrt_x ? m.first : m.second;
            if (p) t.add(m, v * Complex(0, 2 * M_PI * p / side_));
        }
        return t;
    }

    static TrigPoly factor(const std::string& f, double L) {
        if (f.empty()) throw std::invalid_argument("TrigPoly: empty factor");
        if (f.rfind("cos", 0) == 0 || f.rfind("sin", 0) == 0) {
            bool is_cos = f[0] == 'c';
            std::string rest = f.substr(3);
            if (rest.empty()) throw std::invalid_argument("TrigPoly: '" + f + "' lacks a variable");
            char var = rest.back();
            if (var != 'x' && var != 'y') throw std::invalid_argument("TrigPoly: '" + f + "' must end in x or y");
            std::string num = rest.substr(0, rest.size() - 1);
            int p = 1;
            if (!num.empty()) {
                std::size_t used = 0;
                try { p = std::stoi(num, &used); } catch (...) { used = 0; }
                if (used != num.size()) throw std::invalid_argument("TrigPoly: bad frequency in '" + f + "'");
            }
            int px = var == 'x' ? p : 0, py = var == 'y' ? p : 0;
            TrigPoly t(L);
            if (is_cos) {
                t.add({px, py}, 0.5);
                t.add({-px, -py}, 0.5);
            } else {
                t.add({px, py}, Complex(0, -0.5));
                t.add({-px, -py}, Complex(0, 0.5));
            }
            return t;
        }
        std::size_t used = 0;
        double c = 0;
        try { c = std::stod(f, &used); } catch (...) { used = 0; }
        if (used != f.size())
            throw std::invalid_argument("TrigPoly: '" + f + "' is not lattice-periodic (use cos/sin of x, y or constants)");
        return constant(c, L);
    }

    double side_ = 0;
    std::map<Mode, Complex> c_;
};

struct VectorField {
    TrigPoly x, y;
};

// omega(X_f, .) + df = 0 with omega = dx ^ dy gives X_f = (-f_y, f_x)
inline VectorField hamiltonian_vf(const TrigPoly& f) { return {f.dy() * Complex(-1), f.dx()}; }

inline TrigPoly poisson(const TrigPoly& f, const TrigPoly& g) { return f.dx() * g.dy() - f.dy() * g.dx(); }

inline TrigPoly metric(const VectorField& X, const VectorField& Y) { return X.x * Y.x + X.y * Y.y; }
inline TrigPoly symplectic(const VectorField& X, const VectorField& Y) { return X.x * Y.y - X.y * Y.x; }

}  // namespace landau::torus
