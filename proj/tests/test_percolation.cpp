#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

#include "addperc/percolation.hpp"

using namespace addperc;

namespace {

Model test_model(int n) {
    TwoStageParams p;
    p.lambda = 1.5;
    p.gamma = 1.0;
    p.delta1 = 0.4;
    p.delta2 = 0.4;
    p.grid = {n, Topology::Torus};
    return two_stage_model(p);
}

ExtSet singleton(const Model& m, int site, int level) {
    ExtSet s(m.bits());
    s.set(m.bit(site, level));
    return s;
}

}  // namespace

TEST_CASE("no events: reachability is the identity") {
    Model m = test_model(4);
    Timeline tl;
    tl.t1 = 1.0;
    ExtSet src = singleton(m, 2, 1);
    CHECK(reach_forward(m, tl, src, 0.0, 1.0) == src);
    CHECK(reach_backward(m, tl, src, 1.0, 0.0) == src);
}

TEST_CASE("one infection arrow extends the reachable set") {
    Model m = test_model(4);
    Timeline tl;
    tl.t1 = 1.0;
    tl.events.push_back({0.4, m.find_instance("infect_p1", 1), 0});
    // arrow (1,1) -> (2,0)
    ExtSet src = singleton(m, 1, 1);
    ExtSet expect = src;
    expect.set(m.bit(2, 0));
    CHECK(reach_forward(m, tl, src, 0.0, 1.0) == expect);

    ExtSet tgt = singleton(m, 2, 0);
    ExtSet expect_back = tgt;
    expect_back.set(m.bit(1, 1));
    CHECK(reach_backward(m, tl, tgt, 1.0, 0.0) == expect_back);
}

TEST_CASE("percolation representation: reach equals flow on singleton generators") {
    Model m = test_model(6);
    for (int trial = 0; trial < 200; ++trial) {
        Timeline tl = sample_timeline(m, 0.0, 3.0, 2024 + trial);
        for (int i = 0; i < m.sites(); ++i)
            for (int a = 1; a < m.space().states(); ++a) {
                Config e(m.sites(), 0);
                e[i] = a;
                ExtSet reached = reach_forward(m, tl, encode_downsets(m, e), 0.0, 3.0);
                CHECK(reached ==
                      encode_downsets(m, oracle::table_forward_flow(m, tl, e, 0.0, 3.0)));
            }
        auto dsp = m.space_ptr()->dual();
        for (int i = 0; i < m.sites(); ++i)
            for (int b = 1; b < dsp->states(); ++b) {
                Config e(m.sites(), 0);
                e[i] = b;
                ExtSet reached = reach_backward(m, tl, encode_upsets(m, e), 3.0, 0.0);
                CHECK(reached ==
                      encode_upsets(m, oracle::table_backward_flow(m, tl, e, 3.0, 0.0)));
            }
    }
}

TEST_CASE("duality of connections on random sets") {
    Model m = test_model(6);
    CounterRng rng(4242, 0);
    int nonempty = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Timeline tl = sample_timeline(m, 0.0, 2.0, 31 + trial);
        for (int rep = 0; rep < 10; ++rep) {
            ExtSet sources(m.bits()), targets(m.bits());
            for (int b = 0; b < m.bits(); ++b) {
                if (rng.u01() < 0.25) sources.set(b);
                if (rng.u01() < 0.25) targets.set(b);
            }
            bool fwd = reach_forward(m, tl, sources, 0.0, 2.0).intersects(targets);
            bool bwd = sources.intersects(reach_backward(m, tl, targets, 2.0, 0.0));
            REQUIRE(fwd == bwd);
            if (fwd) ++nonempty;
        }
    }
    CHECK(nonempty > 0);
}

TEST_CASE("connection sets compose over a time mesh") {
    Model m = test_model(5);
    for (int trial = 0; trial < 20; ++trial) {
        Timeline tl = sample_timeline(m, 0.0, 2.0, 800 + trial);
        for (int b = 0; b < m.bits(); ++b) {
            ExtSet src(m.bits());
            src.set(b);
            ExtSet direct = reach_forward(m, tl, src, 0.0, 2.0);
            ExtSet legs = reach_forward(m, tl, reach_forward(m, tl, src, 0.0, 0.9), 0.9, 2.0);
            CHECK(direct == legs);
        }
    }
}

TEST_CASE("reachability is monotone in the source set") {
    Model m = test_model(6);
    CounterRng rng(8, 0);
    for (int trial = 0; trial < 25; ++trial) {
        Timeline tl = sample_timeline(m, 0.0, 2.0, 95 + trial);
        ExtSet small(m.bits()), big(m.bits());
        for (int b = 0; b < m.bits(); ++b) {
            bool in_small = rng.u01() < 0.2;
            if (in_small) small.set(b);
            if (in_small || rng.u01() < 0.3) big.set(b);
        }
        CHECK(reach_forward(m, tl, small, 0.0, 2.0)
                  .is_subset_of(reach_forward(m, tl, big, 0.0, 2.0)));
    }
}

TEST_CASE("witness paths: trivial and blocked cases") {
    Model m = test_model(3);
    Timeline tl;
    tl.t1 = 1.0;
    auto path = witness_path(m, tl, {1, 0}, 0.0, {1, 0}, 1.0);
    REQUIRE(path.has_value());
    CHECK(path->size() == 1);
    CHECK(validate_path(m, tl, *path, {1, 0}, 0.0, {1, 0}, 1.0));

    // a kill event blocks the constant path and there are no arrows
    Timeline tl2;
    tl2.t1 = 1.0;
    tl2.events.push_back({0.5, m.find_instance("die", 1), 0});
    CHECK_FALSE(witness_path(m, tl2, {1, 0}, 0.0, {1, 0}, 1.0).has_value());
}

TEST_CASE("witness paths validate on random timelines") {
    Model m = test_model(6);
    int found = 0;
    for (int trial = 0; trial < 30; ++trial) {
        Timeline tl = sample_timeline(m, 0.0, 2.0, 610 + trial);
        for (int from_site = 0; from_site < m.sites(); ++from_site) {
            ExtSite from{from_site, 1};
            ExtSet reached = reach_forward(m, tl, singleton(m, from.site, from.level), 0.0, 2.0);
            for (int b = 0; b < m.bits(); ++b) {
                ExtSite to{b / m.levels(), b % m.levels()};
                auto path = witness_path(m, tl, from, 0.0, to, 2.0);
                CHECK(path.has_value() == reached.test(b));
                if (path) {
                    CHECK(validate_path(m, tl, *path, from, 0.0, to, 2.0));
                    ++found;
                }
            }
        }
    }
    CHECK(found > 100);
}

TEST_CASE("a tampered path fails the validator") {
    Model m = fixture::four_site_model();
    Timeline tl = fixture::four_site_timeline(m);
    ExtSite from{1, 0}, to{1, 1};
    auto path = witness_path(m, tl, from, 0.0, to, 0.4);  // mature event at 0.3
    REQUIRE(path.has_value());
    REQUIRE(path->size() == 2);
    auto bad = *path;
    bad[1].time = 0.2;  // jump where no event happens
    CHECK_FALSE(validate_path(m, tl, bad, from, 0.0, to, 0.4));
    auto bad2 = *path;
    bad2[1].at = {2, 1};  // jump to a site the arrow does not reach
    CHECK_FALSE(validate_path(m, tl, bad2, from, 0.0, {2, 1}, 0.4));
}
