#ifndef SGL_KERNELS_HPP
#define SGL_KERNELS_HPP

#include "sgl/space.hpp"

#include <string>
#include <vector>

namespace sgl {

/// Substochastic kernel S ~> S: one subprobability row per state.
class Kernel {
public:
    explicit Kernel(std::vector<Dist> rows);

    static Kernel identity(const SpacePtr& space);
    static Kernel zero(const SpacePtr& space);

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return rows_.size(); }
    const Dist& row(std::size_t s) const { return rows_[s]; }
    const std::vector<Dist>& rows() const { return rows_; }
    const Rational& operator()(std::size_t s, std::size_t t) const { return rows_[s][t]; }

    friend bool operator==(const Kernel& a, const Kernel& b) { return a.rows_ == b.rows_; }

private:
    SpacePtr space_;
    std::vector<Dist> rows_;
};

/// Nonnegative rational or +infinity, with 0 * inf = 0.
class ExtValue {
public:
    ExtValue() = default;
    ExtValue(Rational v);  // NOLINT(google-explicit-constructor)
    ExtValue(int v) : ExtValue(Rational(v)) {}  // NOLINT(google-explicit-constructor)

    static ExtValue infinity();

    bool is_infinite() const { return infinite_; }
    bool is_zero() const { return !infinite_ && value_ == 0; }
    /// Finite value; throws if infinite.
    const Rational& value() const;

    /// Strictly greater than a finite bound (infinity exceeds everything).
    bool exceeds(const Rational& q) const { return infinite_ || value_ > q; }

    friend ExtValue operator+(const ExtValue& a, const ExtValue& b);
    friend ExtValue operator*(const ExtValue& a, const ExtValue& b);
    friend bool operator==(const ExtValue& a, const ExtValue& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend bool operator<=(const ExtValue& a, const ExtValue& b) {
        if (b.infinite_) return true;
        if (a.infinite_) return false;
        return a.value_ <= b.value_;
    }

    /// "p/q" or "inf".
    std::string str() const;

private:
    Rational value_ = 0;
    bool infinite_ = false;
};

/// State-indexed matrix over the extended nonnegative rationals.
class ExtKernel {
public:
    explicit ExtKernel(SpacePtr space);

    static ExtKernel from(const Kernel& k);
    static ExtKernel identity(const SpacePtr& space);

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return space_->size(); }

    const ExtValue& at(std::size_t s, std::size_t t) const { return entries_[s * size() + t]; }
    ExtValue& at(std::size_t s, std::size_t t) { return entries_[s * size() + t]; }

    /// N(s)(A): row sum over A.
    ExtValue eval(std::size_t s, const StateSet& a) const;

    friend bool operator==(const ExtKernel& a, const ExtKernel& b) { return a.entries_ == b.entries_; }

private:
    SpacePtr space_;
    std::vector<ExtValue> entries_;
};

/// Kleisli product (K1 * K2)(s)(t) = sum_u K1(s)(u) K2(u)(t).
Kernel convolve(const Kernel& k1, const Kernel& k2);
ExtKernel convolve(const ExtKernel& k1, const ExtKernel& k2);

ExtKernel kernel_sum(const ExtKernel& k1, const ExtKernel& k2);

/// sum_{n >= 0} K^n, computed exactly.
///
/// An entry (s, t) diverges iff some path from s to t passes through a
/// divergent strongly connected component or crosses an infinite entry. A
/// component is divergent iff it contains an infinite entry or its spectral
/// radius is at least 1; for substochastic rows that means "closed and
/// internally stochastic", otherwise it is decided by inverting I - M_C and
/// checking the inverse for a negative entry. The remaining finite entries
/// solve X = I + M X on the states that reach t without divergence.
ExtKernel star_closure(const Kernel& k);
ExtKernel star_closure(const ExtKernel& m);

/// Row s is the Dirac measure at s localized to phi_set (positive) or to its complement.
Kernel test_kernel(const StateSet& phi_set, bool positive);

}  // namespace sgl

#endif
