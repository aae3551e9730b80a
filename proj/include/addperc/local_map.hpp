#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "addperc/errors.hpp"
#include "addperc/state_space.hpp"

namespace addperc {

// Site values of a window or grid, as canonical state indices.
using Config = std::vector<int>;

inline std::string config_to_string(const Config& x) {
    std::string s = "(";
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(x[i]);
    }
    return s + ")";
}

// Local map m : S^Γ -> S^Γ stored as an explicit table over the window Γ.
// Window positions carry grid offsets; anchoring them to absolute sites is the
// model layer's job.
class LocalFunction {
public:
    LocalFunction(std::shared_ptr<const StateSpace> space, std::vector<int> offsets,
                  std::vector<uint8_t> table)
        : space_(std::move(space)), offsets_(std::move(offsets)), table_(std::move(table)) {
        const long n = num_inputs();
        if (static_cast<long>(table_.size()) != n * arity())
            throw ModelError("local map table has wrong size");
    }

    static LocalFunction identity(std::shared_ptr<const StateSpace> space,
                                  std::vector<int> offsets) {
        const int w = static_cast<int>(offsets.size());
        const int s = space->states();
        long n = 1;
        for (int k = 0; k < w; ++k) n *= s;
        std::vector<uint8_t> table(static_cast<size_t>(n) * w);
        for (long idx = 0; idx < n; ++idx) {
            long v = idx;
            for (int k = 0; k < w; ++k) {
                table[idx * w + k] = static_cast<uint8_t>(v % s);
                v /= s;
            }
        }
        return LocalFunction(std::move(space), std::move(offsets), std::move(table));
    }

    // Identity except on the listed input rows.
    static LocalFunction from_rules(std::shared_ptr<const StateSpace> space,
                                    std::vector<int> offsets,
                                    const std::vector<std::pair<Config, Config>>& rules) {
        LocalFunction f = identity(space, std::move(offsets));
        for (const auto& [in, out] : rules) {
            long idx = f.encode(in);
            for (int k = 0; k < f.arity(); ++k)
                f.table_[idx * f.arity() + k] = static_cast<uint8_t>(out[k]);
        }
        return f;
    }

    const StateSpace& space() const { return *space_; }
    std::shared_ptr<const StateSpace> space_ptr() const { return space_; }
    int arity() const { return static_cast<int>(offsets_.size()); }
    const std::vector<int>& offsets() const { return offsets_; }

    long num_inputs() const {
        long n = 1;
        for (int k = 0; k < arity(); ++k) n *= space_->states();
        return n;
    }

    long encode(const Config& x) const {
        long idx = 0;
        for (int k = arity() - 1; k >= 0; --k) idx = idx * space_->states() + x[k];
        return idx;
    }
    Config decode(long idx) const {
        Config x(arity());
        for (int k = 0; k < arity(); ++k) {
            x[k] = static_cast<int>(idx % space_->states());
            idx /= space_->states();
        }
        return x;
    }

    int value_at(long input_idx, int pos) const { return table_[input_idx * arity() + pos]; }

    Config apply(const Config& x) const {
        if (static_cast<int>(x.size()) != arity()) throw GridMismatch("window size mismatch");
        long idx = encode(x);
        Config out(arity());
        for (int k = 0; k < arity(); ++k) out[k] = value_at(idx, k);
        return out;
    }

    bool operator==(const LocalFunction& o) const {
        return space_->same_structure(*o.space_) && offsets_ == o.offsets_ && table_ == o.table_;
    }

private:
    std::shared_ptr<const StateSpace> space_;
    std::vector<int> offsets_;
    std::vector<uint8_t> table_;  // row-major: input index * arity + position
};

inline constexpr long kAdditiveGuard = 1'000'000;

// First pair (x, y) with m(0) != 0 or m(x v y) != m(x) v m(y), if any.
// All-pairs when the table is small; above that, the equivalent decomposition
// over single-site generators keeps the check quadratic-free.
inline std::optional<std::pair<Config, Config>> additivity_witness(
    const LocalFunction& f, long guard = kAdditiveGuard) {
    const long n = f.num_inputs();
    if (n > guard) throw TooLarge("additivity check: |S|^|Γ| exceeds guard");
    const StateSpace& sp = f.space();
    const int w = f.arity();
    Config zero(w, sp.bottom());
    if (f.apply(zero) != zero) return std::make_pair(zero, zero);

    auto join_cfg = [&](const Config& a, const Config& b) {
        Config c(w);
        for (int k = 0; k < w; ++k) c[k] = sp.join(a[k], b[k]);
        return c;
    };
    if (n * n <= guard) {
        for (long i = 0; i < n; ++i) {
            Config x = f.decode(i);
            Config mx = f.apply(x);
            for (long j = i; j < n; ++j) {
                Config y = f.decode(j);
                if (f.apply(join_cfg(x, y)) != join_cfg(mx, f.apply(y)))
                    return std::make_pair(x, y);
            }
        }
        return std::nullopt;
    }
    // m additive iff m(x) = join of m on x's single-site components and each
    // per-site restriction is additive in the site value.
    for (long i = 0; i < n; ++i) {
        Config x = f.decode(i);
        Config acc(w, sp.bottom());
        for (int k = 0; k < w; ++k) {
            Config e(w, sp.bottom());
            e[k] = x[k];
            acc = join_cfg(acc, f.apply(e));
        }
        if (acc != f.apply(x)) {
            // Walk the prefix decomposition to extract a genuine violating pair.
            Config prefix(w, sp.bottom());
            for (int k = 0; k < w; ++k) {
                Config e(w, sp.bottom());
                e[k] = x[k];
                Config next = join_cfg(prefix, e);
                if (f.apply(next) != join_cfg(f.apply(prefix), f.apply(e)))
                    return std::make_pair(prefix, e);
                prefix = next;
            }
            return std::make_pair(x, x);  // unreachable when join_cfg is exact
        }
    }
    for (int k = 0; k < f.arity(); ++k)
        for (int a = 0; a < sp.states(); ++a)
            for (int b = 0; b < sp.states(); ++b) {
                Config ea(w, sp.bottom()), eb(w, sp.bottom());
                ea[k] = a;
                eb[k] = b;
                if (f.apply(join_cfg(ea, eb)) != join_cfg(f.apply(ea), f.apply(eb)))
                    return std::make_pair(ea, eb);
            }
    return std::nullopt;
}

inline bool check_additive(const LocalFunction& f, long guard = kAdditiveGuard) {
    return !additivity_witness(f, guard).has_value();
}

// Single-site map S -> S as a value table.
using SingleSiteMap = std::vector<uint8_t>;

inline bool is_zero_map(const SingleSiteMap& g, const StateSpace& sp) {
    for (uint8_t v : g)
        if (v != sp.bottom()) return false;
    return true;
}

inline bool is_identity_map(const SingleSiteMap& g) {
    for (size_t a = 0; a < g.size(); ++a)
        if (g[a] != a) return false;
    return true;
}

// m[i,j] : a -> m(e^a_i)(j), over window positions.
inline SingleSiteMap matrix_element(const LocalFunction& f, int src_pos, int tgt_pos) {
    const StateSpace& sp = f.space();
    SingleSiteMap g(sp.states());
    for (int a = 0; a < sp.states(); ++a) {
        Config e(f.arity(), sp.bottom());
        e[src_pos] = a;
        g[a] = static_cast<uint8_t>(f.apply(e)[tgt_pos]);
    }
    return g;
}

// R(m) = {(i,j) : m(e^T_i)(j) != 0}, over window positions, sorted.
inline std::vector<std::pair<int, int>> relevant_pairs(const LocalFunction& f) {
    const StateSpace& sp = f.space();
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < f.arity(); ++i) {
        Config e(f.arity(), sp.bottom());
        e[i] = sp.top();
        Config r = f.apply(e);
        for (int j = 0; j < f.arity(); ++j)
            if (r[j] != sp.bottom()) out.emplace_back(i, j);
    }
    return out;
}

// D(m) = {j : some i != j has m[i,j] != o, or m[j,j] != id}.
inline std::vector<int> changed_sites(const LocalFunction& f) {
    const StateSpace& sp = f.space();
    std::vector<int> out;
    for (int j = 0; j < f.arity(); ++j) {
        bool changed = !is_identity_map(matrix_element(f, j, j));
        for (int i = 0; i < f.arity() && !changed; ++i)
            if (i != j && !is_zero_map(matrix_element(f, i, j), sp)) changed = true;
        if (changed) out.push_back(j);
    }
    return out;
}

inline constexpr long kDualGuard = 10'000;

// Dual of a single-site additive map: g^(b)' = greatest a with g(a) <= b',
// where ' is the complement identification between S and S'.
inline SingleSiteMap dual_single(const StateSpace& sp, const SingleSiteMap& g) {
    auto dsp = sp.dual();
    // state index in S of the S'-element b (inverse priming)
    auto unprime = [&](int b) {
        uint32_t full = (sp.levels() >= 32) ? ~uint32_t{0} : ((uint32_t{1} << sp.levels()) - 1);
        return sp.state_of_mask(full & ~dsp->down_mask(b));
    };
    SingleSiteMap out(dsp->states());
    for (int b = 0; b < dsp->states(); ++b) {
        int u = unprime(b);
        int best = sp.bottom();
        for (int a = 0; a < sp.states(); ++a)
            if (sp.leq(g[a], u)) best = sp.join(best, a);
        out[b] = static_cast<uint8_t>(sp.dual_state(best));
    }
    return out;
}

// Dual local map on (S')^Γ: \hat m(y)' is the greatest z with m(z) <= y',
// which exists because {z : m(z) <= y'} is closed under joins.
inline LocalFunction dual_local(const LocalFunction& f, long guard = kDualGuard) {
    if (f.num_inputs() > guard) throw TooLarge("dual_local: |S|^|Γ| exceeds guard");
    const StateSpace& sp = f.space();
    auto dsp = sp.dual();
    const int w = f.arity();
    auto unprime = [&](int b) {
        uint32_t full = (sp.levels() >= 32) ? ~uint32_t{0} : ((uint32_t{1} << sp.levels()) - 1);
        return sp.state_of_mask(full & ~dsp->down_mask(b));
    };
    const long n = f.num_inputs();
    std::vector<uint8_t> table(static_cast<size_t>(n) * w);
    LocalFunction shape(dsp, f.offsets(), std::vector<uint8_t>(static_cast<size_t>(n) * w, 0));
    for (long yi = 0; yi < n; ++yi) {
        Config y = shape.decode(yi);
        Config u(w);
        for (int k = 0; k < w; ++k) u[k] = unprime(y[k]);
        Config best(w, sp.bottom());
        for (long zi = 0; zi < n; ++zi) {
            Config z = f.decode(zi);
            Config mz = f.apply(z);
            bool below = true;
            for (int k = 0; k < w && below; ++k)
                if (!sp.leq(mz[k], u[k])) below = false;
            if (below)
                for (int k = 0; k < w; ++k) best[k] = sp.join(best[k], z[k]);
        }
        for (int k = 0; k < w; ++k)
            table[yi * w + k] = static_cast<uint8_t>(sp.dual_state(best[k]));
    }
    return LocalFunction(dsp, f.offsets(), std::move(table));
}

// Duality pairing φ(x, y) = 1{x <= y'} for x over S, y over S'.
inline int phi_pair(const StateSpace& sp, const Config& x, const Config& y) {
    auto dsp = sp.dual();
    if (x.size() != y.size()) throw GridMismatch("phi: configuration sizes differ");
    for (size_t k = 0; k < x.size(); ++k) {
        // x(k) <= y(k)' iff down(x) ∩ up(y) = ∅ at this site
        if (sp.down_mask(x[k]) & dsp->down_mask(y[k])) return 0;
    }
    return 1;
}

inline int psi_pair(const StateSpace& sp, const Config& x, const Config& y) {
    return 1 - phi_pair(sp, x, y);
}

}  // namespace addperc
