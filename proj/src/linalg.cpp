#include "sgl/linalg.hpp"

#include "sgl/error.hpp"

#include <utility>

namespace sgl {

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

void RationalMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

std::optional<RationalMatrix> solve(const RationalMatrix& a, const RationalMatrix& b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n) throw InvariantViolation("solve: dimension mismatch");
    const std::size_t m = b.cols();

    RationalMatrix aug(n, n + m);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
        for (std::size_t c = 0; c < m; ++c) aug(r, n + c) = b(r, c);
    }

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && aug(pivot, col) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        aug.swap_rows(pivot, col);

        const Rational inv = 1 / aug(col, col);
        for (std::size_t c = col; c < n + m; ++c) aug(col, c) *= inv;

        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || aug(r, col) == 0) continue;
            const Rational factor = aug(r, col);
            for (std::size_t c = col; c < n + m; ++c) aug(r, c) -= factor * aug(col, c);
        }
    }

    RationalMatrix x(n, m);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < m; ++c) x(r, c) = aug(r, n + c);
    }
    return x;
}

}  // namespace sgl
