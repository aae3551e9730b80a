#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "addperc/errors.hpp"

namespace addperc {

// Finite partially ordered set with opaque string labels.  The stored relation
// is always the reflexive-transitive closure of the input pairs.
class Poset {
public:
    Poset() = default;

    // Accepts cover pairs or arbitrary leq pairs; computes the closure and
    // rejects relations whose closure is not antisymmetric.
    static Poset from_pairs(std::vector<std::string> elements,
                            const std::vector<std::pair<std::string, std::string>>& leq_pairs) {
        Poset p;
        p.labels_ = std::move(elements);
        p.n_ = static_cast<int>(p.labels_.size());
        {
            std::set<std::string> seen;
            for (const auto& l : p.labels_)
                if (!seen.insert(l).second) throw DuplicateElement("duplicate element '" + l + "'");
        }
        p.leq_.assign(static_cast<size_t>(p.n_) * p.n_, 0);
        for (int i = 0; i < p.n_; ++i) p.leq_[i * p.n_ + i] = 1;
        for (const auto& [a, b] : leq_pairs) {
            int ia = p.index_of(a), ib = p.index_of(b);
            if (ia < 0) throw ModelError("unknown element '" + a + "' in order pair");
            if (ib < 0) throw ModelError("unknown element '" + b + "' in order pair");
            p.leq_[ia * p.n_ + ib] = 1;
        }
        // Warshall closure.
        for (int k = 0; k < p.n_; ++k)
            for (int i = 0; i < p.n_; ++i)
                if (p.leq_[i * p.n_ + k])
                    for (int j = 0; j < p.n_; ++j)
                        if (p.leq_[k * p.n_ + j]) p.leq_[i * p.n_ + j] = 1;
        for (int i = 0; i < p.n_; ++i)
            for (int j = i + 1; j < p.n_; ++j)
                if (p.leq_[i * p.n_ + j] && p.leq_[j * p.n_ + i])
                    throw CycleError("antisymmetry fails between '" + p.labels_[i] + "' and '" +
                                     p.labels_[j] + "'");
        return p;
    }

    static Poset chain(int n) {
        std::vector<std::string> labels;
        std::vector<std::pair<std::string, std::string>> pairs;
        for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
        for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(labels[i], labels[i + 1]);
        return from_pairs(std::move(labels), pairs);
    }

    static Poset antichain(int n) {
        std::vector<std::string> labels;
        for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
        return from_pairs(std::move(labels), {});
    }

    int size() const { return n_; }
    bool leq(int a, int b) const { return leq_[a * n_ + b] != 0; }
    bool less(int a, int b) const { return a != b && leq(a, b); }
    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    int index_of(const std::string& l) const {
        for (int i = 0; i < n_; ++i)
            if (labels_[i] == l) return i;
        return -1;
    }

    // Same elements, reversed order.
    Poset dual() const {
        Poset d;
        d.n_ = n_;
        d.labels_ = labels_;
        d.leq_.assign(leq_.size(), 0);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) d.leq_[i * n_ + j] = leq_[j * n_ + i];
        return d;
    }

    // Transitive reduction, sorted by (src, dst) index.
    std::vector<std::pair<int, int>> cover_pairs() const {
        std::vector<std::pair<int, int>> covers;
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                if (!less(a, b)) continue;
                bool direct = true;
                for (int c = 0; c < n_ && direct; ++c)
                    if (less(a, c) && less(c, b)) direct = false;
                if (direct) covers.emplace_back(a, b);
            }
        return covers;
    }

    // Order-reversing self-bijection, if one exists.  Permutation search,
    // guarded because it is factorial in |Δ|.
    std::optional<std::vector<int>> self_dual_iso(int max_n = 8) const {
        if (n_ > max_n) throw TooLarge("self_dual_iso: poset has more than " +
                                       std::to_string(max_n) + " elements");
        std::vector<int> perm(n_);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool ok = true;
            for (int a = 0; a < n_ && ok; ++a)
                for (int b = 0; b < n_ && ok; ++b)
                    if (leq(a, b) != leq(perm[b], perm[a])) ok = false;
            if (ok) return perm;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return std::nullopt;
    }

    bool operator==(const Poset& o) const { return labels_ == o.labels_ && leq_ == o.leq_; }

private:
    int n_ = 0;
    std::vector<std::string> labels_;
    std::vector<char> leq_;
};

// Order-preserving bijection a -> b, ignoring labels.  Backtracking with a
// down/up-degree signature filter; intended for the small posets in tests.
inline std::optional<std::vector<int>> find_poset_isomorphism(const Poset& a, const Poset& b) {
    if (a.size() != b.size()) return std::nullopt;
    const int n = a.size();
    auto signature = [](const Poset& p, int i) {
        int below = 0, above = 0;
        for (int j = 0; j < p.size(); ++j) {
            if (p.less(j, i)) ++below;
            if (p.less(i, j)) ++above;
        }
        return std::pair{below, above};
    };
    std::vector<std::pair<int, int>> siga(n), sigb(n);
    for (int i = 0; i < n; ++i) siga[i] = signature(a, i);
    for (int i = 0; i < n; ++i) sigb[i] = signature(b, i);

    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    auto consistent = [&](int i, int j) {
        if (siga[i] != sigb[j]) return false;
        for (int k = 0; k < n; ++k) {
            if (map[k] < 0) continue;
            if (a.leq(i, k) != b.leq(j, map[k])) return false;
            if (a.leq(k, i) != b.leq(map[k], j)) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == n) return true;
        for (int j = 0; j < n; ++j) {
            if (used[j] || !consistent(i, j)) continue;
            map[i] = j;
            used[j] = 1;
            if (self(self, i + 1)) return true;
            map[i] = -1;
            used[j] = 0;
        }
        return false;
    };
    if (rec(rec, 0)) return map;
    return std::nullopt;
}

}  // namespace addperc
