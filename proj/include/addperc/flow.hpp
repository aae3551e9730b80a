#pragma once

#include <functional>

#include "addperc/timeline.hpp"

namespace addperc {

// Down-set encoding of an S-valued configuration on the extended grid.
inline ExtSet encode_downsets(const Model& m, const Config& x) {
    if (static_cast<int>(x.size()) != m.sites())
        throw GridMismatch("configuration does not match the grid");
    ExtSet s(m.bits());
    for (int i = 0; i < m.sites(); ++i) {
        uint32_t mask = m.space().down_mask(x[i]);
        for (int l = 0; l < m.levels(); ++l)
            if ((mask >> l) & 1u) s.set(m.bit(i, l));
    }
    return s;
}

inline Config decode_downsets(const Model& m, const ExtSet& s) {
    Config x(m.sites());
    for (int i = 0; i < m.sites(); ++i) {
        int a = m.space().state_of_mask(s.site_mask(i, m.levels()));
        if (a < 0) throw std::logic_error("state is not downward closed");
        x[i] = a;
    }
    return x;
}

// Up-set encoding of an S'-valued configuration; the dual space stores each
// element's up-set of Δ over the same level universe.
inline ExtSet encode_upsets(const Model& m, const Config& y) {
    if (static_cast<int>(y.size()) != m.sites())
        throw GridMismatch("configuration does not match the grid");
    auto dsp = m.space_ptr()->dual();
    ExtSet s(m.bits());
    for (int i = 0; i < m.sites(); ++i) {
        uint32_t mask = dsp->down_mask(y[i]);
        for (int l = 0; l < m.levels(); ++l)
            if ((mask >> l) & 1u) s.set(m.bit(i, l));
    }
    return s;
}

inline Config decode_upsets(const Model& m, const ExtSet& s) {
    auto dsp = m.space_ptr()->dual();
    Config y(m.sites());
    for (int i = 0; i < m.sites(); ++i) {
        int b = dsp->state_of_mask(s.site_mask(i, m.levels()));
        if (b < 0) throw std::logic_error("state is not upward closed");
        y[i] = b;
    }
    return y;
}

using EventObserver = std::function<void(const Event&, const ExtSet&)>;

namespace detail {

inline void check_window(const Timeline& tl, double s, double t) {
    if (s > t) throw WindowError("flow needs s <= t");
    if (s < tl.t0 || t > tl.t1) throw WindowError("flow outside the timeline window");
}

// Events with s < time <= t, as an index range into the sorted list.
inline std::pair<size_t, size_t> event_range(const Timeline& tl, double s, double t) {
    auto lo = std::upper_bound(tl.events.begin(), tl.events.end(), s,
                               [](double v, const Event& e) { return v < e.time; });
    auto hi = std::upper_bound(tl.events.begin(), tl.events.end(), t,
                               [](double v, const Event& e) { return v < e.time; });
    return {static_cast<size_t>(lo - tl.events.begin()),
            static_cast<size_t>(hi - tl.events.begin())};
}

}  // namespace detail

// Percolation sweep forward in time: each event removes its blocked points and
// adds its arrow targets reachable from the current set.
inline ExtSet sweep_forward(const Model& m, const Timeline& tl, ExtSet state, double s, double t,
                            const EventObserver& observer = {}) {
    detail::check_window(tl, s, t);
    auto [lo, hi] = detail::event_range(tl, s, t);
    std::vector<int> scratch;
    for (size_t k = lo; k < hi; ++k) {
        const Event& e = tl.events[k];
        m.instances()[e.instance].op.apply(state, scratch);
        if (observer) observer(e, state);
    }
    return state;
}

// Dual sweep backward in time with transposed maps.
inline ExtSet sweep_backward(const Model& m, const Timeline& tl, ExtSet state, double t, double s,
                             const EventObserver& observer = {}) {
    detail::check_window(tl, s, t);
    auto [lo, hi] = detail::event_range(tl, s, t);
    std::vector<int> scratch;
    for (size_t k = hi; k-- > lo;) {
        const Event& e = tl.events[k];
        m.instances()[e.instance].op_transposed.apply(state, scratch);
        if (observer) observer(e, state);
    }
    return state;
}

// X_{s,t}(x): transport an S-valued configuration forward through the events.
inline Config forward_flow(const Model& m, const Timeline& tl, const Config& x, double s,
                           double t) {
    return decode_downsets(m, sweep_forward(m, tl, encode_downsets(m, x), s, t));
}

// Y_{t,s}(y): transport an S'-valued configuration backward through the events.
inline Config backward_flow(const Model& m, const Timeline& tl, const Config& y, double t,
                            double s) {
    return decode_upsets(m, sweep_backward(m, tl, encode_upsets(m, y), t, s));
}

// ψ(x, y) = 1{x ∩ y ≠ ∅} on encoded subsets of the extended grid.
inline int psi_sets(const ExtSet& x, const ExtSet& y) { return x.intersects(y) ? 1 : 0; }

}  // namespace addperc
