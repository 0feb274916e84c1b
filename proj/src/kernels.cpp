#include "sgl/kernels.hpp"

#include "sgl/error.hpp"
#include "sgl/linalg.hpp"

#include <algorithm>
#include <functional>

namespace sgl {

Kernel::Kernel(std::vector<Dist> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw Error("kernel without rows");
    space_ = rows_.front().space();
    if (rows_.size() != space_->size()) throw SpaceMismatch("kernel row count differs from space size");
    for (const auto& r : rows_) require_same_space(space_, r.space());
}

Kernel Kernel::identity(const SpacePtr& space) {
    std::vector<Dist> rows;
    for (std::size_t s = 0; s < space->size(); ++s) rows.push_back(Dist::dirac(space, s));
    return Kernel(std::move(rows));
}

Kernel Kernel::zero(const SpacePtr& space) {
    return Kernel(std::vector<Dist>(space->size(), Dist::zero(space)));
}

// ---------------------------------------------------------------------------

ExtValue::ExtValue(Rational v) : value_(std::move(v)) {
    value_.canonicalize();
    if (value_ < 0) throw Error("extended value must be nonnegative");
}

ExtValue ExtValue::infinity() {
    ExtValue v;
    v.infinite_ = true;
    return v;
}

const Rational& ExtValue::value() const {
    if (infinite_) throw InvariantViolation("value() on an infinite extended value");
    return value_;
}

ExtValue operator+(const ExtValue& a, const ExtValue& b) {
    if (a.infinite_ || b.infinite_) return ExtValue::infinity();
    return ExtValue(a.value_ + b.value_);
}

ExtValue operator*(const ExtValue& a, const ExtValue& b) {
    if (a.is_zero() || b.is_zero()) return ExtValue(0);
    if (a.infinite_ || b.infinite_) return ExtValue::infinity();
    return ExtValue(a.value_ * b.value_);
}

std::string ExtValue::str() const { return infinite_ ? "inf" : format_rational(value_); }

// ---------------------------------------------------------------------------

ExtKernel::ExtKernel(SpacePtr space) : space_(std::move(space)), entries_(space_->size() * space_->size()) {}

ExtKernel ExtKernel::from(const Kernel& k) {
    ExtKernel out(k.space());
    for (std::size_t s = 0; s < k.size(); ++s) {
        for (std::size_t t = 0; t < k.size(); ++t) out.at(s, t) = ExtValue(k(s, t));
    }
    return out;
}

ExtKernel ExtKernel::identity(const SpacePtr& space) {
    ExtKernel out(space);
    for (std::size_t s = 0; s < space->size(); ++s) out.at(s, s) = ExtValue(1);
    return out;
}

ExtValue ExtKernel::eval(std::size_t s, const StateSet& a) const {
    require_same_space(space_, a.space());
    ExtValue sum(0);
    for (std::size_t t = 0; t < size(); ++t) {
        if (a.contains(t)) sum = sum + at(s, t);
    }
    return sum;
}

// ---------------------------------------------------------------------------

Kernel convolve(const Kernel& k1, const Kernel& k2) {
    require_same_space(k1.space(), k2.space());
    const auto n = k1.size();
    std::vector<Dist> rows;
    rows.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<Rational> w(n, Rational(0));
        for (std::size_t u = 0; u < n; ++u) {
            if (k1(s, u) == 0) continue;
            for (std::size_t t = 0; t < n; ++t) w[t] += k1(s, u) * k2(u, t);
        }
        rows.emplace_back(k1.space(), std::move(w));
    }
    return Kernel(std::move(rows));
}

ExtKernel convolve(const ExtKernel& k1, const ExtKernel& k2) {
    require_same_space(k1.space(), k2.space());
    const auto n = k1.size();
    ExtKernel out(k1.space());
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t u = 0; u < n; ++u) {
            if (k1.at(s, u).is_zero()) continue;
            for (std::size_t t = 0; t < n; ++t) out.at(s, t) = out.at(s, t) + k1.at(s, u) * k2.at(u, t);
        }
    }
    return out;
}

ExtKernel kernel_sum(const ExtKernel& k1, const ExtKernel& k2) {
    require_same_space(k1.space(), k2.space());
    ExtKernel out(k1.space());
    for (std::size_t s = 0; s < k1.size(); ++s) {
        for (std::size_t t = 0; t < k1.size(); ++t) out.at(s, t) = k1.at(s, t) + k2.at(s, t);
    }
    return out;
}

namespace {

/// Tarjan's algorithm; components are returned in reverse topological order.
std::vector<std::vector<std::size_t>> strongly_connected_components(const std::vector<std::vector<bool>>& adj) {
    const auto n = adj.size();
    std::vector<int> index(n, -1);
    std::vector<int> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> comps;
    int counter = 0;

    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w = 0; w < n; ++w) {
            if (!adj[v][w]) continue;
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::size_t> comp;
            std::size_t w = 0;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (index[v] < 0) visit(v);
    }
    return comps;
}

bool component_diverges(const ExtKernel& m, const std::vector<std::size_t>& comp,
                        const std::vector<std::vector<bool>>& adj) {
    bool has_internal_edge = false;
    bool substochastic = true;
    for (auto u : comp) {
        for (auto v : comp) {
            if (m.at(u, v).is_infinite()) return true;
            if (adj[u][v]) has_internal_edge = true;
        }
        ExtValue row(0);
        for (std::size_t t = 0; t < m.size(); ++t) row = row + m.at(u, t);
        if (!(row <= ExtValue(1))) substochastic = false;
    }
    if (!has_internal_edge) return false;

    if (substochastic) {
        // Closed and internally stochastic: a recurrent class.
        for (auto u : comp) {
            Rational inside = 0;
            for (auto v : comp) inside += m.at(u, v).value();
            if (inside != 1) return false;
        }
        return true;
    }

    // Spectral radius < 1 iff I - M_C is invertible with a nonnegative inverse.
    const auto k = comp.size();
    RationalMatrix a = RationalMatrix::identity(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) a(i, j) -= m.at(comp[i], comp[j]).value();
    }
    const auto inv = solve(a, RationalMatrix::identity(k));
    if (!inv) return true;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if ((*inv)(i, j) < 0) return true;
        }
    }
    return false;
}

}  // namespace

ExtKernel star_closure(const ExtKernel& m) {
    const auto n = m.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) adj[u][v] = !m.at(u, v).is_zero();
    }

    // Reflexive-transitive reachability.
    std::vector<std::vector<bool>> reach = adj;
    for (std::size_t u = 0; u < n; ++u) reach[u][u] = true;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!reach[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (reach[k][j]) reach[i][j] = true;
            }
        }
    }

    // Divergence sources: (x, y) such that any path s ->* x, y ->* t diverges.
    std::vector<std::pair<std::size_t, std::size_t>> sources;
    for (const auto& comp : strongly_connected_components(adj)) {
        if (component_diverges(m, comp, adj)) {
            for (auto x : comp) sources.emplace_back(x, x);
        }
    }
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (m.at(u, v).is_infinite()) sources.emplace_back(u, v);
        }
    }

    ExtKernel out(m.space());
    std::vector<std::vector<bool>> infinite(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            for (const auto& [x, y] : sources) {
                if (reach[s][x] && reach[y][t]) {
                    infinite[s][t] = true;
                    break;
                }
            }
        }
    }

    for (std::size_t t = 0; t < n; ++t) {
        std::vector<std::size_t> finite;
        for (std::size_t s = 0; s < n; ++s) {
            if (reach[s][t] && !infinite[s][t]) finite.push_back(s);
        }
        const auto k = finite.size();
        RationalMatrix a = RationalMatrix::identity(k);
        RationalMatrix rhs(k, 1);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) a(i, j) -= m.at(finite[i], finite[j]).value();
            if (finite[i] == t) rhs(i, 0) = 1;
        }
        const auto x = solve(a, rhs);
        if (!x) throw InvariantViolation("star_closure: singular system on a non-divergent block");
        for (std::size_t i = 0; i < k; ++i) {
            if ((*x)(i, 0) < 0) throw InvariantViolation("star_closure: negative visit count");
            out.at(finite[i], t) = ExtValue((*x)(i, 0));
        }
        for (std::size_t s = 0; s < n; ++s) {
            if (infinite[s][t]) out.at(s, t) = ExtValue::infinity();
        }
    }
    return out;
}

ExtKernel star_closure(const Kernel& k) { return star_closure(ExtKernel::from(k)); }

Kernel test_kernel(const StateSet& phi_set, bool positive) {
    const auto& space = phi_set.space();
    const StateSet keep = positive ? phi_set : phi_set.complement();
    std::vector<Dist> rows;
    for (std::size_t s = 0; s < space->size(); ++s) rows.push_back(localize(keep, Dist::dirac(space, s)));
    return Kernel(std::move(rows));
}

}  // namespace sgl
