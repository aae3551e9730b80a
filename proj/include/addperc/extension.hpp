#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "addperc/arrow_block.hpp"
#include "addperc/local_map.hpp"

namespace addperc {

using SitePair = std::pair<ExtSite, ExtSite>;

// N, N↓, N↑ of an additive local map, over window positions.  Off-window pairs
// follow the identity pattern by locality and are not stored.
struct ExtensionTriple {
    std::set<SitePair> N, N_down, N_up;
};

inline ExtensionTriple extension_triple(const LocalFunction& f) {
    const StateSpace& sp = f.space();
    const int w = f.arity();
    const int d = sp.levels();
    ExtensionTriple t;
    for (int g = 0; g < w; ++g)
        for (int s = 0; s < d; ++s) {
            // {i}↓ with i = (g,s) is the configuration e^a_g, a = principal
            // down-set of s.
            Config e(w, sp.bottom());
            e[g] = sp.state_of_mask(sp.principal_down(s));
            Config out = f.apply(e);
            for (int g2 = 0; g2 < w; ++g2) {
                uint32_t m = sp.down_mask(out[g2]);
                for (int s2 = 0; s2 < d; ++s2)
                    if ((m >> s2) & 1u) t.N.insert({{g, s}, {g2, s2}});
            }
        }
    for (const SitePair& p : t.N) {
        const auto& [i, j] = p;
        for (int s = 0; s < d; ++s) {
            if (s != i.level && sp.delta().leq(s, i.level) &&
                t.N.count({{i.site, s}, j})) {
                t.N_down.insert(p);
                break;
            }
        }
        for (int s = 0; s < d; ++s) {
            if (s != j.level && sp.delta().leq(j.level, s) &&
                t.N.count({i, {j.site, s}})) {
                t.N_up.insert(p);
                break;
            }
        }
    }
    return t;
}

namespace detail {

// Connection-set membership for an ArrowBlockMap: arrows off-diagonal,
// unblocked points on the diagonal.
inline bool in_connection_set(const ArrowBlockMap& a, const SitePair& p) {
    if (p.first == p.second) return !a.blocked(p.first);
    return std::binary_search(a.arrows().begin(), a.arrows().end(), Arrow{p.first, p.second});
}

// Forward evaluation of an ArrowBlockMap restricted to the window: does it
// reproduce m on every down-set of Γ×Δ?  Arrows incident to sites outside the
// window make the restriction fail by construction.
inline bool restricts_to(const ArrowBlockMap& a, const LocalFunction& f,
                         const std::vector<int>& window_sites) {
    const StateSpace& sp = f.space();
    const int w = f.arity();
    const int d = sp.levels();
    std::map<int, int> pos_of;
    for (int k = 0; k < w; ++k) pos_of[window_sites[k]] = k;
    auto to_set = [&](const Config& x) {
        std::set<ExtSite> out;
        for (int k = 0; k < w; ++k) {
            uint32_t m = sp.down_mask(x[k]);
            for (int s = 0; s < d; ++s)
                if ((m >> s) & 1u) out.insert({window_sites[k], s});
        }
        return out;
    };
    for (long idx = 0; idx < f.num_inputs(); ++idx) {
        Config x = f.decode(idx);
        if (a.apply(to_set(x)) != to_set(f.apply(x))) return false;
    }
    return true;
}

// Same for the dual: transpose(a) must reproduce dual_local(f) on every
// up-set of Γ×Δ.
inline bool transpose_restricts_to_dual(const ArrowBlockMap& a, const LocalFunction& f,
                                        const LocalFunction& fdual,
                                        const std::vector<int>& window_sites) {
    const StateSpace& dsp = fdual.space();
    const int w = f.arity();
    const int d = dsp.levels();
    ArrowBlockMap at = a.transpose();
    auto to_set = [&](const Config& y) {
        std::set<ExtSite> out;
        for (int k = 0; k < w; ++k) {
            uint32_t m = dsp.down_mask(y[k]);  // up-set of Δ, same level universe
            for (int s = 0; s < d; ++s)
                if ((m >> s) & 1u) out.insert({window_sites[k], s});
        }
        return out;
    };
    for (long idx = 0; idx < fdual.num_inputs(); ++idx) {
        Config y = fdual.decode(idx);
        if (at.apply(to_set(y)) != to_set(fdual.apply(y))) return false;
    }
    return true;
}

}  // namespace detail

// Sandwich test N\N↓ ⊂ M ⊂ N (extends m) and N\N↑ ⊂ M ⊂ N (transpose extends
// the dual), cross-validated against direct evaluation on all window down-sets
// and up-sets.  window_sites maps window positions to the sites used in A;
// defaults to 0..w-1.  Sites of A outside the window must follow the identity
// pattern: diagonal present, only downward arrows within the site.
inline std::pair<bool, bool> is_valid_extension(const ArrowBlockMap& a, const LocalFunction& f,
                                                std::vector<int> window_sites = {}) {
    const StateSpace& sp = f.space();
    const int w = f.arity();
    const int d = sp.levels();
    if (window_sites.empty())
        for (int k = 0; k < w; ++k) window_sites.push_back(k);
    std::set<int> window_set(window_sites.begin(), window_sites.end());

    // Split A into the window part and per-site off-window parts; any arrow
    // between distinct sites where either side is off-window lies outside N.
    std::vector<Arrow> win_arrows;
    std::vector<ExtSite> win_blocks;
    std::set<int> extra_sites;
    bool cross = false;
    for (const Arrow& ar : a.arrows()) {
        bool fin = window_set.count(ar.from.site), tin = window_set.count(ar.to.site);
        if (fin && tin) {
            win_arrows.push_back(ar);
        } else if (ar.from.site == ar.to.site) {
            extra_sites.insert(ar.from.site);
        } else {
            cross = true;
        }
    }
    for (const ExtSite& b : a.blocks()) {
        if (window_set.count(b.site))
            win_blocks.push_back(b);
        else
            extra_sites.insert(b.site);
    }
    if (cross) return {false, false};

    // Off-window sites: connection set must sit between the diagonal and the
    // identity's N = {(σ,τ) : τ <= σ}; this is the sandwich for m = id, and it
    // is the same condition for both coordinates.
    for (int s : extra_sites) {
        for (int lv = 0; lv < d; ++lv)
            if (a.blocked({s, lv})) return {false, false};
        for (const Arrow& ar : a.arrows()) {
            if (ar.from.site != s || ar.to.site != s) continue;
            if (!sp.delta().less(ar.to.level, ar.from.level)) return {false, false};
        }
    }

    ArrowBlockMap win(std::move(win_arrows), std::move(win_blocks));
    ExtensionTriple t = extension_triple(f);
    auto pos_of = [&](int site) {
        for (int k = 0; k < w; ++k)
            if (window_sites[k] == site) return k;
        return -1;
    };
    auto abs_pair = [&](const SitePair& p) {
        return SitePair{{window_sites[p.first.site], p.first.level},
                        {window_sites[p.second.site], p.second.level}};
    };

    // M ⊂ N over the window.
    bool m_in_n = true;
    for (const Arrow& ar : win.arrows())
        if (!t.N.count({{pos_of(ar.from.site), ar.from.level},
                        {pos_of(ar.to.site), ar.to.level}})) {
            m_in_n = false;
            break;
        }
    for (int k = 0; k < w && m_in_n; ++k)
        for (int lv = 0; lv < d; ++lv) {
            ExtSite p{window_sites[k], lv};
            if (!win.blocked(p) && !t.N.count({{k, lv}, {k, lv}})) {
                m_in_n = false;
                break;
            }
        }

    bool lower_fwd = true, lower_dual = true;
    for (const SitePair& p : t.N) {
        bool in_m = detail::in_connection_set(win, abs_pair(p));
        if (!t.N_down.count(p) && !in_m) lower_fwd = false;
        if (!t.N_up.count(p) && !in_m) lower_dual = false;
    }
    bool extends_m = m_in_n && lower_fwd;
    bool extends_dual = m_in_n && lower_dual;

    // Direct evaluation cross-check.
    bool direct_m = detail::restricts_to(win, f, window_sites);
    if (direct_m != extends_m)
        throw std::logic_error("extension sandwich disagrees with direct evaluation");
    LocalFunction fd = dual_local(f);
    bool direct_dual = detail::transpose_restricts_to_dual(win, f, fd, window_sites);
    if (direct_dual != extends_dual)
        throw std::logic_error("dual extension sandwich disagrees with direct evaluation");
    return {extends_m, extends_dual};
}

// Connection set M = N \ (N↓ ∩ N↑): the smallest map that extends m and whose
// transpose extends the dual of m.
inline ArrowBlockMap minimal_extension(const LocalFunction& f) {
    if (auto wit = additivity_witness(f))
        throw NotAdditiveError("", config_to_string(wit->first) + " vs " +
                                       config_to_string(wit->second));
    const StateSpace& sp = f.space();
    const int w = f.arity();
    const int d = sp.levels();
    ExtensionTriple t = extension_triple(f);
    std::vector<Arrow> arrows;
    std::vector<ExtSite> blocks;
    for (const SitePair& p : t.N) {
        if (t.N_down.count(p) && t.N_up.count(p)) continue;
        if (p.first != p.second) arrows.push_back({p.first, p.second});
    }
    for (int k = 0; k < w; ++k)
        for (int lv = 0; lv < d; ++lv) {
            SitePair diag{{k, lv}, {k, lv}};
            bool in_m = t.N.count(diag) && !(t.N_down.count(diag) && t.N_up.count(diag));
            if (!in_m) blocks.push_back({k, lv});
        }
    ArrowBlockMap result(std::move(arrows), std::move(blocks));
    auto [ok_fwd, ok_dual] = is_valid_extension(result, f);
    if (!ok_fwd || !ok_dual)
        throw std::logic_error("minimal extension failed its own validity check");
    return result;
}

// Connection set M = N over an explicit finite grid: the window part plus, at
// every other grid site, all downward arrows of the identity's N.  Generally
// nonlocal, hence only materialized per grid.
inline ArrowBlockMap maximal_extension(const LocalFunction& f,
                                       const std::vector<int>& window_sites, int grid_size) {
    const StateSpace& sp = f.space();
    const int d = sp.levels();
    ExtensionTriple t = extension_triple(f);
    std::set<int> window_set(window_sites.begin(), window_sites.end());
    std::vector<Arrow> arrows;
    std::vector<ExtSite> blocks;
    for (const SitePair& p : t.N)
        if (p.first != p.second)
            arrows.push_back({{window_sites[p.first.site], p.first.level},
                              {window_sites[p.second.site], p.second.level}});
    for (size_t k = 0; k < window_sites.size(); ++k)
        for (int lv = 0; lv < d; ++lv)
            if (!t.N.count({{static_cast<int>(k), lv}, {static_cast<int>(k), lv}}))
                blocks.push_back({window_sites[k], lv});
    for (int s = 0; s < grid_size; ++s) {
        if (window_set.count(s)) continue;
        for (int hi = 0; hi < d; ++hi)
            for (int lo = 0; lo < d; ++lo)
                if (sp.delta().less(lo, hi)) arrows.push_back({{s, hi}, {s, lo}});
    }
    return ArrowBlockMap(std::move(arrows), std::move(blocks));
}

// True iff dropping any single connection-set point of A breaks at least one
// of the two extension properties.  Diagonal points are dropped by inserting a
// block; only sites touched by A or the window need checking, since removing a
// far-away diagonal point always breaks the identity pattern.
inline bool minimality_check(const ArrowBlockMap& a, const LocalFunction& f,
                             std::vector<int> window_sites = {}) {
    const StateSpace& sp = f.space();
    const int w = f.arity();
    const int d = sp.levels();
    if (window_sites.empty())
        for (int k = 0; k < w; ++k) window_sites.push_back(k);
    auto still_valid = [&](const ArrowBlockMap& cand) {
        auto [x, y] = is_valid_extension(cand, f, window_sites);
        return x && y;
    };
    for (size_t i = 0; i < a.arrows().size(); ++i) {
        std::vector<Arrow> arrows = a.arrows();
        arrows.erase(arrows.begin() + i);
        if (still_valid(ArrowBlockMap(std::move(arrows), a.blocks()))) return false;
    }
    std::set<int> sites(window_sites.begin(), window_sites.end());
    for (const Arrow& ar : a.arrows()) {
        sites.insert(ar.from.site);
        sites.insert(ar.to.site);
    }
    for (const ExtSite& b : a.blocks()) sites.insert(b.site);
    for (int s : sites)
        for (int lv = 0; lv < d; ++lv) {
            ExtSite p{s, lv};
            if (a.blocked(p)) continue;
            std::vector<ExtSite> blocks = a.blocks();
            blocks.push_back(p);
            if (still_valid(ArrowBlockMap(a.arrows(), std::move(blocks)))) return false;
        }
    return true;
}

}  // namespace addperc
