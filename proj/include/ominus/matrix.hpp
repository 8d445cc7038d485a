#ifndef OMINUS_MATRIX_HPP
#define OMINUS_MATRIX_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "finite_field.hpp"

namespace ominus {

/// Dense row-major matrix over GF(2^r). Ordering is lexicographic on
/// (rows, cols, entries), which is the canonical element order used for
/// double cosets.
struct MatrixGF {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Elem> entries;

    MatrixGF() = default;
    MatrixGF(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}
    MatrixGF(std::size_t r, std::size_t c, std::vector<Elem> e) : rows(r), cols(c), entries(std::move(e)) {
        if (entries.size() != rows * cols) throw DomainError("MatrixGF: entry count does not match shape");
    }

    static MatrixGF identity(std::size_t n) {
        MatrixGF m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    Elem& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    bool square() const { return rows == cols; }

    friend auto operator<=>(const MatrixGF&, const MatrixGF&) = default;
    friend bool operator==(const MatrixGF&, const MatrixGF&) = default;
};

struct MatrixHash {
    std::size_t operator()(const MatrixGF& m) const noexcept {
        std::size_t h = m.rows * 1315423911u + m.cols;
        for (Elem e : m.entries) h = h * 1099511628211ull ^ e;
        return h;
    }
};

inline MatrixGF multiply(const FieldCtx& f, const MatrixGF& x, const MatrixGF& y) {
    if (x.cols != y.rows) throw DomainError("multiply: shape mismatch");
    MatrixGF out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Elem xik = x(i, k);
            if (xik == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) out(i, j) ^= f.mul(xik, y(k, j));
        }
    return out;
}

inline MatrixGF add(const MatrixGF& x, const MatrixGF& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw DomainError("add: shape mismatch");
    MatrixGF out = x;
    for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] ^= y.entries[i];
    return out;
}

inline MatrixGF transpose(const MatrixGF& x) {
    MatrixGF out(x.cols, x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) out(j, i) = x(i, j);
    return out;
}

inline Elem matrix_trace(const MatrixGF& x) {
    if (!x.square()) throw DomainError("matrix_trace: matrix is not square");
    Elem t = 0;
    for (std::size_t i = 0; i < x.rows; ++i) t ^= x(i, i);
    return t;
}

/// Gauss-Jordan inverse; nullopt when singular.
inline std::optional<MatrixGF> inverse(const FieldCtx& f, const MatrixGF& x) {
    if (!x.square()) throw DomainError("inverse: matrix is not square");
    const std::size_t n = x.rows;
    MatrixGF a = x;
    MatrixGF inv = MatrixGF::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        const Elem s = f.inv(a(col, col));
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) = f.mul(a(col, j), s);
            inv(col, j) = f.mul(inv(col, j), s);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            const Elem c = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) ^= f.mul(c, a(col, j));
                inv(i, j) ^= f.mul(c, inv(col, j));
            }
        }
    }
    return inv;
}

inline MatrixGF block(const MatrixGF& x, std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) {
    MatrixGF out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) out(i, j) = x(r0 + i, c0 + j);
    return out;
}

inline void set_block(MatrixGF& x, std::size_t r0, std::size_t c0, const MatrixGF& b) {
    for (std::size_t i = 0; i < b.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) x(r0 + i, c0 + j) = b(i, j);
}

/// Row-major hexadecimal entry encodings.
inline std::vector<std::string> to_hex_entries(const MatrixGF& x) {
    std::vector<std::string> out;
    out.reserve(x.entries.size());
    for (Elem e : x.entries) out.push_back(detail::hex(e));
    return out;
}

/// Every rows x cols matrix over the field, in encoding order. Caller bounds the size.
template <class Visit>
void for_each_matrix(const FieldCtx& f, std::size_t rows, std::size_t cols, Visit&& visit) {
    MatrixGF m(rows, cols);
    const std::size_t n = rows * cols;
    for (;;) {
        visit(static_cast<const MatrixGF&>(m));
        std::size_t k = n;
        while (k > 0) {
            --k;
            if (++m.entries[k] < f.q()) break;
            m.entries[k] = 0;
            if (k == 0) return;
        }
        if (n == 0) return;
    }
}

}  // namespace ominus

#endif
