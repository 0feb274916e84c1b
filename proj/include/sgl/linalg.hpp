#ifndef SGL_LINALG_HPP
#define SGL_LINALG_HPP

#include "sgl/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace sgl {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b);

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Solves A X = B by Gauss-Jordan elimination over the rationals.
///
/// The pivot in each column is the first nonzero entry at or below the
/// diagonal; there is no scaling. Returns nullopt when A is singular.
std::optional<RationalMatrix> solve(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace sgl

#endif
