#pragma once

// Exact rational scalars, vectors and dense matrices on top of GMP.
// Everything downstream that decides emptiness or containment of cones
// runs on these types; floating point never enters those code paths.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace glass {

using Rat = mpq_class;
using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

// Accepts "p/q" or plain integer text, with optional leading sign.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
            throw std::invalid_argument("bad rational literal: " + s);
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline double rat_double(const Rat& r) { return r.get_d(); }

inline Vec parse_rat_vec(const std::vector<std::string>& xs) {
    Vec v;
    v.reserve(xs.size());
    for (const auto& s : xs) v.push_back(parse_rat(s));
    return v;
}

inline Rat dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Mat identity_mat(std::size_t n) {
    Mat m(n, Vec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Vec mat_vec(const Mat& m, const Vec& v) {
    Vec out(m.size(), Rat(0));
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
    return out;
}

// a^T M, as a row vector
inline Vec vec_mat(const Vec& a, const Mat& m) {
    if (m.empty()) return {};
    Vec out(m[0].size(), Rat(0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += a[i] * m[i][j];
    return out;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Mat out(n, Vec(m, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

inline Rat l1_norm(const Vec& v) {
    Rat s = 0;
    for (const auto& x : v) s += abs(x);
    return s;
}

inline Vec l1_normalized(const Vec& v) {
    Rat s = l1_norm(v);
    if (s == 0) return v;
    Vec out(v);
    for (auto& x : out) x /= s;
    return out;
}

inline bool is_zero_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

inline bool lex_less(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

// Rank by fraction-free-ish Gaussian elimination (exact).
inline int mat_rank(Mat m) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (int r = rank + 1; r < rows; ++r) {
            if (m[r][c] == 0) continue;
            Rat f = m[r][c] / m[rank][c];
            for (int j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace glass
