// riemann_roch.hpp: dimension of the m-th Landau level for large k, on the models this library handles.
// Surfaces: D_m(TM) = K^{-m}, so dim = RR(L^k (x) K^{-m}) = kd + (1/2 + m) chi.
// Flat tori: D_m(TM) is trivial of rank binom(m+n-1, n-1) and Todd = 1.

#pragma once

#include "multi_index.hpp"

#include <climits>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace landau::rr {

namespace detail {

inline long long mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("dimension does not fit in 64 bits");
    return r;
}

inline long long add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("dimension does not fit in 64 bits");
    return r;
}

inline long long binom(int n, int r) {
    if (r < 0 || r > n) return 0;
    long long c = 1;
    for (int i = 1; i <= r; ++i) c = mul(c, n - r + i) / i;  // c stays an integer at every step
    return c;
}

}  // namespace detail

struct DimReport {
    std::string geometry;
    int k = 0, m = 0;
    long long dim = 0;
    double leading = 0;
    bool regime_guaranteed = true;
    int threshold_k = 1;  // conjectural: smallest k keeping every step of the Weitzenbock induction in range
    std::string note;
};

// smallest k >= 1 with k d + (j+1) chi > 0 for j = 0..m
inline int surface_threshold(int d, int g, int m) {
    int chi = 2 - 2 * g;
    if (d <= 0) throw std::invalid_argument("degree must be positive");
    // worst j is m when chi < 0, j = 0 otherwise
    long long need = chi < 0 ? -static_cast<long long>(m + 1) * chi : -static_cast<long long>(chi);
    long long k = need < 0 ? 1 : need / d + 1;
    return static_cast<int>(std::max<long long>(1, k));
}

inline double demailly_leading(int n, int m, double vol, int k) {
    if (!(vol > 0)) throw std::invalid_argument("demailly_leading: volume must be positive");
    if (n < 1 || m < 0) throw std::invalid_argument("demailly_leading: need n >= 1, m >= 0");
    return std::pow(k / (2 * M_PI), n) * static_cast<double>(detail::binom(m + n - 1, n - 1)) * vol;
}

inline DimReport dim_surface(int k, int d, int g, int m) {
    if (k < 1 || d < 1 || g < 0 || m < 0) throw std::invalid_argument("dim_surface: need k, d >= 1 and g, m >= 0");
    int chi = 2 - 2 * g;
    DimReport r;
    r.geometry = "surface g=" + std::to_string(g) + ",d=" + std::to_string(d);
    r.k = k;
    r.m = m;
    r.dim = detail::add(detail::mul(k, d), static_cast<long long>(chi / 2) * (2 * m + 1));
    r.leading = demailly_leading(1, m, 2 * M_PI * d, k);
    r.threshold_k = surface_threshold(d, g, m);
    r.regime_guaranteed = k >= r.threshold_k;
    if (!r.regime_guaranteed) r.note = "formula regime not guaranteed: k below the threshold " + std::to_string(r.threshold_k);
    return r;
}

inline long long dim_torus(int n, int k, const std::vector<int>& d_list, int m) {
    if (n < 1 || static_cast<int>(d_list.size()) != n)
        throw std::invalid_argument("dim_torus: n must equal the number of degrees");
    if (k < 1 || m < 0) throw std::invalid_argument("dim_torus: need k >= 1, m >= 0");
    long long v = detail::binom(m + n - 1, n - 1);
    for (int d : d_list) {
        if (d < 1) throw std::invalid_argument("dim_torus: degrees must be positive");
        v = detail::mul(v, detail::mul(k, d));
    }
    return v;
}

// sum over |alpha| = m of prod_i dim_surface(k, d_i, g = 1, alpha_i)
inline long long composition_sum(int k, const std::vector<int>& d_list, int m) {
    int n = static_cast<int>(d_list.size());
    if (n < 1) throw std::invalid_argument("composition_sum: empty degree list");
    long long total = 0;
    for (auto& a : indices_of_weight(n, m)) {
        long long p = 1;
        for (int i = 0; i < n; ++i) p = detail::mul(p, dim_surface(k, d_list[static_cast<std::size_t>(i)], 1, a[i]).dim);
        total = detail::add(total, p);
    }
    return total;
}

inline DimReport dim_torus_report(int k, const std::vector<int>& d_list, int m) {
    DimReport r;
    int n = static_cast<int>(d_list.size());
    r.geometry = "torus n=" + std::to_string(n);
    r.k = k;
    r.m = m;
    r.dim = dim_torus(n, k, d_list, m);
    double vol = 1;
    for (int d : d_list) vol *= 2 * M_PI * d;
    r.leading = demailly_leading(n, m, vol, k);
    return r;
}

}  // namespace landau::rr
