#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "addperc/model.hpp"
#include "addperc/rng.hpp"

namespace addperc {

struct Event {
    double time;
    int instance;
    uint64_t seq;  // insertion index; breaks exact time ties deterministically
};

struct Timeline {
    double t0 = 0.0;
    double t1 = 0.0;
    uint64_t seed = 0;
    std::vector<Event> events;  // strictly sorted by (time, seq)
};

// Poisson events per map instance on (t0, t1], sampled as exponential gaps so
// each instance's stream depends only on (seed, instance index).
inline Timeline sample_timeline(const Model& m, double t0, double t1, uint64_t seed) {
    if (t1 < t0) throw WindowError("timeline window must have t0 <= t1");
    Timeline tl;
    tl.t0 = t0;
    tl.t1 = t1;
    tl.seed = seed;
    for (size_t i = 0; i < m.instances().size(); ++i) {
        double rate = m.instances()[i].rate;
        if (rate <= 0.0) continue;
        CounterRng rng(seed, i);
        double t = t0;
        for (;;) {
            t += rng.exponential(rate);
            if (t > t1) break;
            tl.events.push_back({t, static_cast<int>(i), 0});
        }
    }
    std::stable_sort(tl.events.begin(), tl.events.end(),
                     [](const Event& a, const Event& b) { return a.time < b.time; });
    for (size_t k = 0; k < tl.events.size(); ++k) tl.events[k].seq = k;
    return tl;
}

inline std::string format_time(double t) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", t);
    return buf;
}

// Event-log line: t (decimal), family (string), anchor (integer site).
inline std::string event_log_line(const Model& m, const Event& e) {
    const MapInstance& inst = m.instances()[e.instance];
    return "t=" + format_time(e.time) + " family=" + m.families()[inst.family].name +
           " anchor=" + std::to_string(inst.anchor);
}

}  // namespace addperc
