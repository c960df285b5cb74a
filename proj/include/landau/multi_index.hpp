// multi_index.hpp: exponent vectors and the graded monomial bases

#pragma once

#include "scalar.hpp"

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace landau {

struct MultiIndex {
    std::vector<int> e;

    MultiIndex() = default;
    explicit MultiIndex(int n) : e(static_cast<std::size_t>(n), 0) {}
    MultiIndex(std::initializer_list<int> v) : e(v) {
        for (int x : e) if (x < 0) throw std::invalid_argument("MultiIndex: negative entry");
    }
    explicit MultiIndex(std::vector<int> v) : e(std::move(v)) {
        for (int x : e) if (x < 0) throw std::invalid_argument("MultiIndex: negative entry");
    }

    int size() const { return static_cast<int>(e.size()); }
    int operator[](int i) const { return e[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return e[static_cast<std::size_t>(i)]; }
    int weight() const { int s = 0; for (int x : e) s += x; return s; }
    mpz_class factorial() const {
        mpz_class f = 1;
        for (int x : e) f *= landau::factorial(x);
        return f;
    }
    static MultiIndex unit(int n, int i) { MultiIndex m(n); m[i] = 1; return m; }

    friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) {
        for (int i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    }
    // componentwise a >= b
    bool dominates(const MultiIndex& b) const {
        for (int i = 0; i < size(); ++i) if (e[static_cast<std::size_t>(i)] < b[i]) return false;
        return true;
    }
    friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) {
        for (int i = 0; i < a.size(); ++i) {
            a[i] -= b[i];
            if (a[i] < 0) throw std::invalid_argument("MultiIndex: negative difference");
        }
        return a;
    }
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
        return s + ")";
    }
};

// all multi-indices of length n and weight exactly w, descending lexicographic
inline std::vector<MultiIndex> indices_of_weight(int n, int w) {
    std::vector<MultiIndex> out;
    MultiIndex cur(n);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n - 1) { cur[pos] = left; out.push_back(cur); return; }
        for (int v = left; v >= 0; --v) { cur[pos] = v; rec(pos + 1, left - v); }
    };
    if (n == 0) return out;
    rec(0, w);
    return out;
}

inline std::vector<MultiIndex> indices_up_to(int n, int D) {
    std::vector<MultiIndex> out;
    for (int w = 0; w <= D; ++w)
        for (auto& m : indices_of_weight(n, w)) out.push_back(m);
    return out;
}

// z^a zbar^b
struct Monomial {
    MultiIndex a, b;
    int degree() const { return a.weight() + b.weight(); }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

enum class BasisKind { antiholomorphic, full };

inline const char* to_string(BasisKind k) { return k == BasisKind::full ? "full" : "antiholomorphic"; }

class GradedBasis {
public:
    GradedBasis(int n, int D, BasisKind kind) : n_(n), D_(D), kind_(kind) {
        if (n < 1) throw std::invalid_argument("GradedBasis: n must be >= 1");
        if (D < 0) throw std::invalid_argument("GradedBasis: degree cap must be >= 0");
        if (kind == BasisKind::antiholomorphic) {
            for (auto& b : indices_up_to(n, D)) add({MultiIndex(n), b});
        } else {
            // full basis: total degree of (a,b) together, then descending lex on (a,b)
            for (auto& ab : indices_up_to(2 * n, D)) {
                std::vector<int> a(ab.e.begin(), ab.e.begin() + n), b(ab.e.begin() + n, ab.e.end());
                add({MultiIndex(a), MultiIndex(b)});
            }
        }
    }

    int n() const { return n_; }
    int cap() const { return D_; }
    BasisKind kind() const { return kind_; }
    int size() const { return static_cast<int>(elems_.size()); }
    const Monomial& operator[](int i) const { return elems_[static_cast<std::size_t>(i)]; }
    int degree(int i) const { return elems_[static_cast<std::size_t>(i)].degree(); }

    int index(const Monomial& m) const {
        auto it = index_.find(m);
        return it == index_.end() ? -1 : it->second;
    }
    bool contains(const Monomial& m) const { return index_.count(m) != 0; }

    // squared norm of a basis monomial; only diagonal for the antiholomorphic kind
    mpz_class norm2(int i) const {
        if (kind_ != BasisKind::antiholomorphic) throw std::logic_error("GradedBasis::norm2: full basis is not orthogonal");
        return (*this)[i].b.factorial();
    }

    bool operator==(const GradedBasis& o) const { return n_ == o.n_ && D_ == o.D_ && kind_ == o.kind_; }

private:
    void add(const Monomial& m) {
        index_[m] = static_cast<int>(elems_.size());
        elems_.push_back(m);
    }
    int n_, D_;
    BasisKind kind_;
    std::vector<Monomial> elems_;
    std::map<Monomial, int> index_;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;

inline BasisPtr enumerate_basis(int n, int D, BasisKind kind) {
    return std::make_shared<const GradedBasis>(n, D, kind);
}

}  // namespace landau
