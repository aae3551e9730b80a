#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "addperc/errors.hpp"
#include "addperc/poset.hpp"

namespace addperc {

// Finite lattice with explicit meet/join tables.  |S| stays small in every
// intended model, so the O(|S|^2) tables buy O(1) lattice ops in the
// simulation loop.
class Lattice {
public:
    Lattice() = default;

    // Builds meet/join by brute-force glb/lub from the order relation.
    static Lattice from_leq(std::vector<std::string> labels, const std::vector<char>& leq) {
        Lattice lat;
        lat.n_ = static_cast<int>(labels.size());
        lat.labels_ = std::move(labels);
        lat.leq_ = leq;
        if (lat.n_ == 0) throw NotALattice("a lattice cannot be empty");
        lat.meet_.assign(static_cast<size_t>(lat.n_) * lat.n_, 0);
        lat.join_.assign(static_cast<size_t>(lat.n_) * lat.n_, 0);
        for (int a = 0; a < lat.n_; ++a)
            for (int b = 0; b < lat.n_; ++b) {
                lat.meet_[a * lat.n_ + b] = static_cast<uint8_t>(lat.bound(a, b, /*lower=*/true));
                lat.join_[a * lat.n_ + b] = static_cast<uint8_t>(lat.bound(a, b, /*lower=*/false));
            }
        int bot = 0, top = 0;
        for (int a = 0; a < lat.n_; ++a) {
            bot = lat.meet(bot, a);
            top = lat.join(top, a);
        }
        lat.bottom_ = bot;
        lat.top_ = top;
        return lat;
    }

    int size() const { return n_; }
    bool leq(int a, int b) const { return leq_[a * n_ + b] != 0; }
    bool less(int a, int b) const { return a != b && leq(a, b); }
    int meet(int a, int b) const { return meet_[a * n_ + b]; }
    int join(int a, int b) const { return join_[a * n_ + b]; }
    int bottom() const { return bottom_; }
    int top() const { return top_; }
    const std::string& label(int i) const { return labels_[i]; }

    // Maximal elements strictly below a.
    std::vector<int> lower_covers(int a) const {
        std::vector<int> covers;
        for (int b = 0; b < n_; ++b) {
            if (!less(b, a)) continue;
            bool maximal = true;
            for (int c = 0; c < n_ && maximal; ++c)
                if (less(b, c) && less(c, a)) maximal = false;
            if (maximal) covers.push_back(b);
        }
        return covers;
    }

    bool operator==(const Lattice& o) const {
        return labels_ == o.labels_ && leq_ == o.leq_;
    }

private:
    int bound(int a, int b, bool lower) const {
        std::vector<int> cands;
        for (int c = 0; c < n_; ++c) {
            bool ok = lower ? (leq(c, a) && leq(c, b)) : (leq(a, c) && leq(b, c));
            if (ok) cands.push_back(c);
        }
        for (int c : cands) {
            bool extreme = true;
            for (int d : cands) {
                bool rel = lower ? leq(d, c) : leq(c, d);
                if (!rel) {
                    extreme = false;
                    break;
                }
            }
            if (extreme) return c;
        }
        throw NotALattice("elements '" + labels_[a] + "' and '" + labels_[b] + "' have no " +
                          (lower ? "greatest lower" : "least upper") + " bound");
    }

    int n_ = 0;
    std::vector<std::string> labels_;
    std::vector<char> leq_;
    std::vector<uint8_t> meet_, join_;
    int bottom_ = 0, top_ = 0;
};

inline bool is_distributive(const Lattice& lat) {
    const int n = lat.size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (lat.meet(a, lat.join(b, c)) != lat.join(lat.meet(a, b), lat.meet(a, c)))
                    return false;
    return true;
}

inline bool is_downset(const Poset& delta, uint32_t mask) {
    for (int a = 0; a < delta.size(); ++a) {
        if (!((mask >> a) & 1u)) continue;
        for (int b = 0; b < delta.size(); ++b)
            if (delta.leq(b, a) && !((mask >> b) & 1u)) return false;
    }
    return true;
}

inline std::string downset_label(const Poset& delta, uint32_t mask) {
    std::string s = "{";
    bool first = true;
    for (int a = 0; a < delta.size(); ++a) {
        if (!((mask >> a) & 1u)) continue;
        if (!first) s += ",";
        s += delta.label(a);
        first = false;
    }
    return s + "}";
}

struct DownsetLattice {
    Lattice lattice;
    std::vector<uint32_t> masks;  // element index -> down-set bits, canonical order
};

// All down-sets of delta, ordered by (cardinality, lexicographic member list);
// meet is intersection, join is union.  The ordering gives every state space a
// stable numbering 0..|S|-1 across runs.
inline DownsetLattice downset_lattice(const Poset& delta, int max_delta = 20,
                                      int max_lattice = 4096) {
    if (delta.size() > max_delta)
        throw TooLarge("downset_lattice: poset has more than " + std::to_string(max_delta) +
                       " elements");
    const int d = delta.size();
    std::vector<uint32_t> masks;
    for (uint64_t m = 0; m < (uint64_t{1} << d); ++m) {
        if (is_downset(delta, static_cast<uint32_t>(m))) {
            masks.push_back(static_cast<uint32_t>(m));
            if (static_cast<int>(masks.size()) > max_lattice)
                throw TooLarge("downset_lattice: more than " + std::to_string(max_lattice) +
                               " down-sets");
        }
    }
    auto members = [d](uint32_t m) {
        std::vector<int> v;
        for (int a = 0; a < d; ++a)
            if ((m >> a) & 1u) v.push_back(a);
        return v;
    };
    std::sort(masks.begin(), masks.end(), [&](uint32_t a, uint32_t b) {
        int ca = std::popcount(a), cb = std::popcount(b);
        if (ca != cb) return ca < cb;
        return members(a) < members(b);
    });
    const int n = static_cast<int>(masks.size());
    std::vector<char> leq(static_cast<size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if ((masks[a] & ~masks[b]) == 0) leq[a * n + b] = 1;
    std::vector<std::string> labels;
    labels.reserve(n);
    for (uint32_t m : masks) labels.push_back(downset_label(delta, m));
    return DownsetLattice{Lattice::from_leq(std::move(labels), leq), std::move(masks)};
}

// Poset of join-irreducible elements (nonzero, exactly one lower cover) under
// the lattice order.  Verifies the Birkhoff round trip a -> {irreducibles <= a}
// and reports NotDistributive when it fails.
inline Poset join_irreducibles(const Lattice& lat) {
    std::vector<int> irr;
    for (int a = 0; a < lat.size(); ++a) {
        if (a == lat.bottom()) continue;
        if (lat.lower_covers(a).size() == 1) irr.push_back(a);
    }
    const int k = static_cast<int>(irr.size());
    if (k > 30) throw TooLarge("join_irreducibles: more than 30 irreducibles");
    std::vector<std::string> labels;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 0; i < k; ++i) labels.push_back(lat.label(irr[i]));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (lat.leq(irr[i], irr[j])) pairs.emplace_back(labels[i], labels[j]);
    Poset result;
    try {
        result = Poset::from_pairs(labels, pairs);
    } catch (const DuplicateElement&) {
        throw NotDistributive("join-irreducible labels collide");
    }
    // Round trip: a -> mask of irreducibles below a must be an order
    // isomorphism onto the down-sets of the irreducible poset.
    std::vector<uint32_t> image(lat.size());
    for (int a = 0; a < lat.size(); ++a) {
        uint32_t m = 0;
        for (int i = 0; i < k; ++i)
            if (lat.leq(irr[i], a)) m |= uint32_t{1} << i;
        image[a] = m;
    }
    for (int a = 0; a < lat.size(); ++a)
        if (!is_downset(result, image[a])) throw NotDistributive("image is not a down-set");
    for (int a = 0; a < lat.size(); ++a)
        for (int b = 0; b < lat.size(); ++b) {
            bool sub = (image[a] & ~image[b]) == 0;
            if (sub != lat.leq(a, b)) throw NotDistributive("Birkhoff map is not an isomorphism");
        }
    size_t count = 0;
    for (uint64_t m = 0; m < (uint64_t{1} << k); ++m)
        if (is_downset(result, static_cast<uint32_t>(m))) ++count;
    if (count != static_cast<size_t>(lat.size()))
        throw NotDistributive("Birkhoff map is not onto");
    return result;
}

}  // namespace addperc
