#pragma once

#include <algorithm>
#include <compare>
#include <set>
#include <string>
#include <vector>

#include "addperc/errors.hpp"

namespace addperc {

// Point of the extended grid Λ×Δ: a grid site and a level of Δ.
struct ExtSite {
    int site;
    int level;
    friend auto operator<=>(const ExtSite&, const ExtSite&) = default;
};

struct Arrow {
    ExtSite from;
    ExtSite to;
    friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

// Countably additive map on subsets of the extended grid, stored as its
// connection set relative to the identity: finitely many arrows (off-diagonal
// pairs) plus finitely many blocks (missing diagonal points).  Everything not
// mentioned acts as the identity.
class ArrowBlockMap {
public:
    ArrowBlockMap() = default;
    ArrowBlockMap(std::vector<Arrow> arrows, std::vector<ExtSite> blocks)
        : arrows_(std::move(arrows)), blocks_(std::move(blocks)) {
        for (const Arrow& a : arrows_)
            if (a.from == a.to) throw ModelError("arrow may not be a self-loop");
        std::sort(arrows_.begin(), arrows_.end());
        arrows_.erase(std::unique(arrows_.begin(), arrows_.end()), arrows_.end());
        std::sort(blocks_.begin(), blocks_.end());
        blocks_.erase(std::unique(blocks_.begin(), blocks_.end()), blocks_.end());
    }

    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::vector<ExtSite>& blocks() const { return blocks_; }

    bool blocked(const ExtSite& p) const {
        return std::binary_search(blocks_.begin(), blocks_.end(), p);
    }

    // (x \ blocks) ∪ {j : some i in x has an arrow i -> j}
    std::set<ExtSite> apply(const std::set<ExtSite>& x) const {
        std::set<ExtSite> out;
        for (const ExtSite& p : x)
            if (!blocked(p)) out.insert(p);
        for (const Arrow& a : arrows_)
            if (x.count(a.from)) out.insert(a.to);
        return out;
    }

    // Reverse the arrows, keep the blocking symbols.
    ArrowBlockMap transpose() const {
        std::vector<Arrow> rev;
        rev.reserve(arrows_.size());
        for (const Arrow& a : arrows_) rev.push_back({a.to, a.from});
        return ArrowBlockMap(std::move(rev), blocks_);
    }

    template <typename Fn>
    ArrowBlockMap relabel_sites(Fn&& fn) const {
        std::vector<Arrow> as;
        std::vector<ExtSite> bs;
        for (const Arrow& a : arrows_)
            as.push_back({{fn(a.from.site), a.from.level}, {fn(a.to.site), a.to.level}});
        for (const ExtSite& b : blocks_) bs.push_back({fn(b.site), b.level});
        return ArrowBlockMap(std::move(as), std::move(bs));
    }

    // One line per arrow "(i,σ) -> (j,τ)" and per block "block (i,σ)",
    // in canonical order.
    std::string render() const {
        std::string s;
        for (const Arrow& a : arrows_)
            s += "(" + std::to_string(a.from.site) + "," + std::to_string(a.from.level) +
                 ") -> (" + std::to_string(a.to.site) + "," + std::to_string(a.to.level) + ")\n";
        for (const ExtSite& b : blocks_)
            s += "block (" + std::to_string(b.site) + "," + std::to_string(b.level) + ")\n";
        return s;
    }

    bool operator==(const ArrowBlockMap&) const = default;

private:
    std::vector<Arrow> arrows_;  // sorted, unique
    std::vector<ExtSite> blocks_;
};

}  // namespace addperc
