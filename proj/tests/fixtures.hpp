#pragma once

// Shared 4-site fixture: a hand-laid event list on a line of four sites whose
// forward and backward boundary configurations are known exactly.

#include "addperc/builtin_models.hpp"
#include "addperc/timeline.hpp"

namespace addperc::fixture {

inline Model four_site_model() {
    TwoStageParams p;
    p.lambda = 1.0;
    p.gamma = 1.0;
    p.delta1 = 1.0;
    p.delta2 = 1.0;
    p.grid = {4, Topology::Line};
    return two_stage_model(p);
}

struct NamedEvent {
    double time;
    const char* family;
    int anchor;
};

inline const std::vector<NamedEvent>& four_site_events() {
    static const std::vector<NamedEvent> events = {
        {0.3, "mature", 1},     {0.9, "infect_m1", 3}, {1.2, "die_young", 1},
        {1.7, "die", 3},        {1.8, "infect_p1", 1}, {2.5, "infect_m1", 1},
        {2.7, "mature", 2},     {3.0, "die", 1},       {3.1, "infect_p1", 2},
        {3.5, "die", 0},        {3.6, "infect_m1", 2}, {3.7, "die_young", 3},
    };
    return events;
}

inline Timeline four_site_timeline(const Model& m) {
    Timeline tl;
    tl.t0 = 0.0;
    tl.t1 = 4.0;
    tl.seed = 0;
    uint64_t seq = 0;
    for (const NamedEvent& e : four_site_events()) {
        int idx = m.find_instance(e.family, e.anchor);
        if (idx < 0) throw std::logic_error("fixture instance missing");
        tl.events.push_back({e.time, idx, seq++});
    }
    return tl;
}

// Boundary configurations of the fixture.
inline Config initial_state() { return {0, 1, 0, 2}; }        // X_0
inline Config final_state() { return {0, 1, 2, 0}; }          // X_{0,4}(X_0)
inline Config dual_top_state() { return {2, 0, 1, 2}; }       // Y_0 at time 4
inline Config dual_bottom_state() { return {0, 2, 2, 1}; }    // on-off flow at time 0

}  // namespace addperc::fixture
