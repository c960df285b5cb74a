// trunc_op.hpp: sparse operators on a graded monomial truncation, with a certified exactness degree

#pragma once

#include "multi_index.hpp"
#include "polynomial.hpp"
#include "scalar.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace landau {

enum class Parity { even, odd, mixed };

inline const char* to_string(Parity p) {
    switch (p) {
        case Parity::even: return "even";
        case Parity::odd: return "odd";
        default: return "mixed";
    }
}

// Column j holds the image of basis monomial j. Columns of degree above exact_degree
// are never stored: the truncation could not represent them faithfully.
template <class T>
class TruncOp {
public:
    using Column = std::vector<std::pair<int, T>>;

    TruncOp() = default;
    TruncOp(BasisPtr b, int exact_degree)
        : b_(std::move(b)), cols_(static_cast<std::size_t>(b_->size())), exact_(std::min(exact_degree, b_->cap())) {}

    static TruncOp zero(BasisPtr b) {
        TruncOp r(b, b->cap());
        r.tail_zero_ = true;
        return r;
    }
    static TruncOp identity(BasisPtr b) {
        TruncOp r(b, b->cap());
        for (int j = 0; j < b->size(); ++j) r.cols_[static_cast<std::size_t>(j)].push_back({j, T(1)});
        return r;
    }

    // build column-by-column from the image polynomial of each monomial;
    // images leaving the truncation make that column (and the exactness degree) fail
    template <class F>
    static TruncOp from_images(BasisPtr b, F&& image) {
        TruncOp r(b, b->cap());
        int bad = b->cap() + 1;
        for (int j = 0; j < b->size(); ++j) {
            PolyZZbar<T> img = image((*b)[j]);
            bool ok = true;
            for (auto& [m, v] : img.terms())
                if (!b->contains(m)) { ok = false; break; }
            if (!ok) { bad = std::min(bad, b->degree(j)); continue; }
            auto& c = r.cols_[static_cast<std::size_t>(j)];
            for (auto& [m, v] : img.terms()) c.push_back({b->index(m), v});
            std::sort(c.begin(), c.end(), [](auto& x, auto& y) { return x.first < y.first; });
        }
        r.exact_ = bad - 1;
        r.truncate();
        return r;
    }

    const BasisPtr& basis() const { return b_; }
    int exact_degree() const { return exact_; }
    const Column& column(int j) const { return cols_[static_cast<std::size_t>(j)]; }
    Column& column(int j) { return cols_[static_cast<std::size_t>(j)]; }
    int size() const { return b_->size(); }

    T entry(int i, int j) const {
        for (auto& [r, v] : column(j)) if (r == i) return v;
        return T(0);
    }

    void set_exact_degree(int e) { exact_ = std::min(e, b_->cap()); truncate(); }

    // true when the untruncated operator kills every monomial above exact_degree
    // (finite-rank pieces like rho_ab); the adjoint then loses nothing
    bool tail_zero() const { return tail_zero_; }
    void set_tail_zero(bool v) { tail_zero_ = v; }

    Parity parity() const {
        bool ev = false, od = false;
        for (int j = 0; j < size(); ++j)
            for (auto& [i, v] : column(j)) ((b_->degree(i) + b_->degree(j)) % 2 ? od : ev) = true;
        if (ev && od) return Parity::mixed;
        return od ? Parity::odd : Parity::even;
    }

    int rank() const {
        Eigen::MatrixXcd d(size(), size());
        d.setZero();
        for (int j = 0; j < size(); ++j)
            for (auto& [i, v] : column(j)) d(i, j) = scalar_traits<T>::to_complex(v);
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(d);
        return static_cast<int>(lu.rank());
    }

    TruncOp operator-() const {
        TruncOp r = *this;
        for (auto& c : r.cols_) for (auto& [i, v] : c) v = -v;
        return r;
    }
    friend TruncOp operator+(const TruncOp& x, const TruncOp& y) { return combine(x, y, T(1)); }
    friend TruncOp operator-(const TruncOp& x, const TruncOp& y) { return combine(x, y, T(-1)); }
    friend TruncOp operator*(const T& s, const TruncOp& x) {
        TruncOp r = x;
        for (auto& c : r.cols_) {
            for (auto& [i, v] : c) v *= s;
            c.erase(std::remove_if(c.begin(), c.end(), [](auto& e) { return landau::is_zero(e.second); }), c.end());
        }
        return r;
    }

private:
    static TruncOp combine(const TruncOp& x, const TruncOp& y, const T& s) {
        check_same(x, y);
        TruncOp r(x.b_, std::min(x.exact_, y.exact_));
        r.tail_zero_ = x.tail_zero_ && y.tail_zero_ && x.exact_ == y.exact_;
        for (int j = 0; j < x.size(); ++j) {
            if (x.b_->degree(j) > r.exact_) continue;
            std::map<int, T> acc;
            for (auto& [i, v] : x.column(j)) acc[i] += v;
            for (auto& [i, v] : y.column(j)) acc[i] += s * v;
            auto& c = r.cols_[static_cast<std::size_t>(j)];
            for (auto& [i, v] : acc) if (!landau::is_zero(v)) c.push_back({i, v});
        }
        return r;
    }

    void truncate() {
        for (int j = 0; j < size(); ++j)
            if (b_->degree(j) > exact_) cols_[static_cast<std::size_t>(j)].clear();
    }

public:
    static void check_same(const TruncOp& x, const TruncOp& y) {
        if (!x.b_ || !y.b_ || !(*x.b_ == *y.b_)) throw std::invalid_argument("TruncOp: basis mismatch");
    }

private:
    BasisPtr b_;
    std::vector<Column> cols_;
    int exact_ = -1;
    bool tail_zero_ = false;
};

// X o Y. Column j is certified when deg j <= e_Y and every row Y hits has degree <= e_X;
// the composite exactness degree is the largest e with all columns of degree <= e certified.
template <class T>
TruncOp<T> compose(const TruncOp<T>& x, const TruncOp<T>& y) {
    TruncOp<T>::check_same(x, y);
    const auto& b = x.basis();
    std::vector<bool> ok(static_cast<std::size_t>(b->size()), false);
    for (int j = 0; j < b->size(); ++j) {
        if (b->degree(j) > y.exact_degree()) continue;
        bool good = true;
        for (auto& [i, v] : y.column(j)) if (b->degree(i) > x.exact_degree()) { good = false; break; }
        ok[static_cast<std::size_t>(j)] = good;
    }
    int e = -1;
    for (int deg = 0; deg <= b->cap(); ++deg) {
        bool all = true;
        for (int j = 0; j < b->size(); ++j) if (b->degree(j) == deg && !ok[static_cast<std::size_t>(j)]) { all = false; break; }
        if (!all) break;
        e = deg;
    }
    TruncOp<T> r(b, e);
    r.set_tail_zero(y.tail_zero() && e == y.exact_degree());
    for (int j = 0; j < b->size(); ++j) {
        if (b->degree(j) > e) continue;
        std::map<int, T> acc;
        for (auto& [k, v] : y.column(j))
            for (auto& [i, w] : x.column(k)) acc[i] += w * v;
        auto& c = r.column(j);
        for (auto& [i, v] : acc) if (!is_zero(v)) c.push_back({i, v});
    }
    return r;
}

// adjoint for the orthogonal monomial basis z̄^α (weights α!). Column j of X* needs row j of X,
// i.e. every column that can reach degree deg j; unknown columns start above e_X and lower the
// degree by at most `drop` (measured on the stored entries), giving e* = e_X - drop.
template <class T>
TruncOp<T> adjoint(const TruncOp<T>& x) {
    const auto& b = x.basis();
    if (b->kind() != BasisKind::antiholomorphic) throw std::logic_error("adjoint: only defined on the antiholomorphic basis");
    int drop = -b->cap() - 1;
    bool any = false;
    for (int j = 0; j < b->size(); ++j)
        for (auto& [i, v] : x.column(j)) { drop = std::max(drop, b->degree(j) - b->degree(i)); any = true; }
    if (!any) drop = 0;
    TruncOp<T> r(b, x.tail_zero() ? b->cap() : x.exact_degree() - drop);
    std::vector<std::map<int, T>> acc(static_cast<std::size_t>(b->size()));
    for (int j = 0; j < b->size(); ++j)
        for (auto& [i, v] : x.column(j)) {
            // (X*)_{j i} = conj(X_{i j}) g_i / g_j, stored in column i
            if (b->degree(i) > r.exact_degree()) continue;
            Rational w = ratio(b->norm2(i), b->norm2(j));
            acc[static_cast<std::size_t>(i)][j] += scalar_traits<T>::conj(v) * from_rational<T>(w);
        }
    for (int i = 0; i < b->size(); ++i)
        for (auto& [j, v] : acc[static_cast<std::size_t>(i)]) if (!is_zero(v)) r.column(i).push_back({j, v});
    return r;
}

template <class T>
std::pair<TruncOp<T>, TruncOp<T>> parity_split(const TruncOp<T>& x) {
    const auto& b = x.basis();
    TruncOp<T> ev(b, x.exact_degree()), od(b, x.exact_degree());
    ev.set_tail_zero(x.tail_zero());
    od.set_tail_zero(x.tail_zero());
    for (int j = 0; j < b->size(); ++j)
        for (auto& [i, v] : x.column(j)) ((b->degree(i) + b->degree(j)) % 2 ? od : ev).column(j).push_back({i, v});
    return {ev, od};
}

// equality on all columns of degree <= e; false if either side is not certified up to e
template <class T>
bool equal_up_to(const TruncOp<T>& x, const TruncOp<T>& y, int e) {
    TruncOp<T>::check_same(x, y);
    if (x.exact_degree() < e || y.exact_degree() < e) return false;
    const auto& b = x.basis();
    for (int j = 0; j < b->size(); ++j) {
        if (b->degree(j) > e) continue;
        if (x.column(j) != y.column(j)) return false;
    }
    return true;
}

template <class T>
double max_abs_difference(const TruncOp<T>& x, const TruncOp<T>& y, int e) {
    TruncOp<T>::check_same(x, y);
    const auto& b = x.basis();
    double m = 0;
    for (int j = 0; j < b->size(); ++j) {
        if (b->degree(j) > e) continue;
        std::map<int, T> acc;
        for (auto& [i, v] : x.column(j)) acc[i] += v;
        for (auto& [i, v] : y.column(j)) acc[i] -= v;
        for (auto& [i, v] : acc) m = std::max(m, scalar_traits<T>::abs(v));
    }
    return m;
}

template <class T>
PolyZZbar<T> apply(const TruncOp<T>& x, const PolyZZbar<T>& f) {
    const auto& b = x.basis();
    PolyZZbar<T> out(b->n());
    for (auto& [m, v] : f.terms()) {
        int j = b->index(m);
        if (j < 0) throw std::invalid_argument("apply: monomial outside the basis");
        if (b->degree(j) > x.exact_degree()) throw std::domain_error("apply: input degree outside the faithful range");
        for (auto& [i, w] : x.column(j)) out.add((*b)[i], w * v);
    }
    return out;
}

template <class U, class T>
TruncOp<U> convert(const TruncOp<T>& x) {
    TruncOp<U> r(x.basis(), x.exact_degree());
    r.set_tail_zero(x.tail_zero());
    for (int j = 0; j < x.size(); ++j)
        for (auto& [i, v] : x.column(j)) r.column(j).push_back({i, U(scalar_traits<T>::to_complex(v))});
    return r;
}

template <class U>
TruncOp<U> convert_exact(const TruncOp<Rational>& x) {
    TruncOp<U> r(x.basis(), x.exact_degree());
    r.set_tail_zero(x.tail_zero());
    for (int j = 0; j < x.size(); ++j)
        for (auto& [i, v] : x.column(j)) r.column(j).push_back({i, from_rational<U>(v)});
    return r;
}

// matrix in the monomial basis
template <class T>
Eigen::MatrixXcd to_dense(const TruncOp<T>& x) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(x.size(), x.size());
    for (int j = 0; j < x.size(); ++j)
        for (auto& [i, v] : x.column(j)) d(i, j) = scalar_traits<T>::to_complex(v);
    return d;
}

// matrix in the orthonormal basis (α!)^{-1/2} z̄^α
template <class T>
Eigen::MatrixXcd to_dense_orthonormal(const TruncOp<T>& x) {
    const auto& b = x.basis();
    Eigen::MatrixXcd d = to_dense(x);
    for (int i = 0; i < x.size(); ++i)
        for (int j = 0; j < x.size(); ++j)
            d(i, j) *= std::sqrt(b->norm2(i).get_d() / b->norm2(j).get_d());
    return d;
}

}  // namespace landau
