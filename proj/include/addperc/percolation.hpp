#pragma once

#include <optional>

#include "addperc/flow.hpp"

namespace addperc {

// {j : some i in sources has an open path (i,s) ~> (j,t)}.  The set sweep and
// the stochastic flow share one engine by design; the flow is this sweep
// restricted to down-sets.
inline ExtSet reach_forward(const Model& m, const Timeline& tl, const ExtSet& sources, double s,
                            double t) {
    return sweep_forward(m, tl, sources, s, t);
}

// {i : some j in targets has an open path (i,s) ~> (j,t)}.
inline ExtSet reach_backward(const Model& m, const Timeline& tl, const ExtSet& targets, double t,
                             double s) {
    return sweep_backward(m, tl, targets, t, s);
}

// One step of an open path: the path sits at `at` from `time` onward.
struct PathStep {
    double time;
    ExtSite at;
};

// Reconstructs one open path from (from,s) to (to,t) by backtracking the
// stored sweep frontiers; between events the path is constant.  Holds are
// preferred over jumps, and arrows are tried in canonical order, so the result
// is deterministic.
inline std::optional<std::vector<PathStep>> witness_path(const Model& m, const Timeline& tl,
                                                         ExtSite from, double s, ExtSite to,
                                                         double t) {
    detail::check_window(tl, s, t);
    auto [lo, hi] = detail::event_range(tl, s, t);
    ExtSet state(m.bits());
    state.set(m.bit(from.site, from.level));
    std::vector<ExtSet> frontiers;  // state after each event
    frontiers.reserve(hi - lo);
    std::vector<int> scratch;
    for (size_t k = lo; k < hi; ++k) {
        m.instances()[tl.events[k].instance].op.apply(state, scratch);
        frontiers.push_back(state);
    }
    if (!state.test(m.bit(to.site, to.level))) return std::nullopt;

    std::vector<PathStep> rev;  // collected backwards
    ExtSite cur = to;
    for (size_t k = hi; k-- > lo;) {
        const MapInstance& inst = m.instances()[tl.events[k].instance];
        const ExtSet& before =
            (k == lo) ? [&] {
                ExtSet init(m.bits());
                init.set(m.bit(from.site, from.level));
                return init;
            }()
                      : frontiers[k - lo - 1];
        int cur_bit = m.bit(cur.site, cur.level);
        bool can_hold = before.test(cur_bit) && !inst.op.block_mask.test(cur_bit);
        if (can_hold) continue;
        bool jumped = false;
        for (const auto& [src, tgt] : inst.op.arrow_bits) {
            if (tgt != cur_bit || !before.test(src)) continue;
            rev.push_back({tl.events[k].time, cur});
            cur = {src / m.levels(), src % m.levels()};
            jumped = true;
            break;
        }
        if (!jumped) return std::nullopt;  // should not happen for reachable targets
    }
    if (!(cur == from)) return std::nullopt;
    std::vector<PathStep> path;
    path.push_back({s, from});
    for (size_t i = rev.size(); i-- > 0;) path.push_back(rev[i]);
    return path;
}

// Independent re-check of an open path against the raw event data: every jump
// must ride an arrow of the event at that time, and every hold must avoid the
// event's blocking symbols.
inline bool validate_path(const Model& m, const Timeline& tl, const std::vector<PathStep>& path,
                          ExtSite from, double s, ExtSite to, double t) {
    if (path.empty() || !(path.front().at == from) || path.front().time != s) return false;
    if (!(path.back().at == to)) return false;
    for (const PathStep& st : path)
        if (st.time < s || st.time > t) return false;
    auto [lo, hi] = detail::event_range(tl, s, t);
    for (size_t k = lo; k < hi; ++k) {
        const Event& e = tl.events[k];
        const MapInstance& inst = m.instances()[e.instance];
        // γ(t-): last step strictly before the event; γ(t): last step at or
        // before it (the path is cadlag)
        ExtSite before = path.front().at;
        ExtSite after = path.front().at;
        for (const PathStep& st : path) {
            if (st.time < e.time) before = st.at;
            if (st.time <= e.time) after = st.at;
        }
        int bbit = m.bit(before.site, before.level);
        int abit = m.bit(after.site, after.level);
        if (bbit == abit) {
            if (inst.op.block_mask.test(abit)) return false;
        } else {
            bool has_arrow = false;
            for (const auto& [src, tgt] : inst.op.arrow_bits)
                if (src == bbit && tgt == abit) has_arrow = true;
            if (!has_arrow) return false;
        }
    }
    // jumps may only happen at event times
    for (size_t i = 1; i < path.size(); ++i) {
        bool at_event = false;
        for (size_t k = lo; k < hi; ++k)
            if (tl.events[k].time == path[i].time) at_event = true;
        if (!at_event) return false;
    }
    return true;
}

}  // namespace addperc
