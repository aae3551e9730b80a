#pragma once

#include <string>
#include <vector>

#include "addperc/model.hpp"

namespace addperc {

// Krone's two-stage contact process on the three-chain S = {empty, young,
// adult}: adults infect empty neighbours with young, young mature at gamma,
// young die at delta1 (on top of delta2), everything dies at delta2.
struct TwoStageParams {
    double lambda = 0.0;
    std::vector<int> neighbor_offsets = {1, -1};  // used when lambda_table is empty
    std::vector<RateEntry> lambda_table;          // explicit directed pairs
    double gamma = 0.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    GridSpec grid;
};

namespace detail {

inline std::string offset_suffix(int d) {
    return (d >= 0 ? "_p" : "_m") + std::to_string(d >= 0 ? d : -d);
}

inline LocalFunction infection_map(std::shared_ptr<const StateSpace> sp, int offset) {
    return LocalFunction::from_rules(sp, {0, offset}, {{{2, 0}, {2, 1}}});
}

}  // namespace detail

inline Model two_stage_model(const TwoStageParams& p) {
    auto sp = StateSpace::create(Poset::chain(2));
    std::vector<FamilySpec> fams;
    if (!p.lambda_table.empty()) {
        fams.push_back({"infect", detail::infection_map(sp, 1), 0.0, p.lambda_table});
    } else {
        for (int d : p.neighbor_offsets)
            fams.push_back({"infect" + detail::offset_suffix(d), detail::infection_map(sp, d),
                            p.lambda, {}});
    }
    fams.push_back({"mature", LocalFunction::from_rules(sp, {0}, {{{1}, {2}}}), p.gamma, {}});
    fams.push_back({"die_young", LocalFunction::from_rules(sp, {0}, {{{1}, {0}}}), p.delta1, {}});
    fams.push_back(
        {"die", LocalFunction::from_rules(sp, {0}, {{{1}, {0}}, {{2}, {0}}}), p.delta2, {}});
    return Model(sp, p.grid, std::move(fams));
}

// Dual of the two-stage contact process: infection kernel reversed, young
// death replaced by adult reversion (adults entering a non-reproductive
// state).
inline Model onoff_dual_model(const TwoStageParams& p) {
    auto sp = StateSpace::create(Poset::chain(2));
    std::vector<FamilySpec> fams;
    if (!p.lambda_table.empty()) {
        std::vector<RateEntry> reversed;
        for (const RateEntry& e : p.lambda_table) reversed.push_back({e.dst, e.src, e.rate});
        fams.push_back({"infect", detail::infection_map(sp, 1), 0.0, std::move(reversed)});
    } else {
        for (int d : p.neighbor_offsets)
            fams.push_back({"infect" + detail::offset_suffix(-d), detail::infection_map(sp, -d),
                            p.lambda, {}});
    }
    fams.push_back({"mature", LocalFunction::from_rules(sp, {0}, {{{1}, {2}}}), p.gamma, {}});
    fams.push_back({"revert", LocalFunction::from_rules(sp, {0}, {{{2}, {1}}}), p.delta1, {}});
    fams.push_back(
        {"die", LocalFunction::from_rules(sp, {0}, {{{1}, {0}}, {{2}, {0}}}), p.delta2, {}});
    return Model(sp, p.grid, std::move(fams));
}

// Classical contact process: the degenerate one-level case.
inline Model contact_model(double lambda, double delta, GridSpec grid,
                           const std::vector<int>& offsets = {1, -1}) {
    auto sp = StateSpace::create(Poset::chain(1));  // S = {0,1}
    std::vector<FamilySpec> fams;
    for (int d : offsets)
        fams.push_back({"infect" + detail::offset_suffix(d),
                        LocalFunction::from_rules(sp, {0, d}, {{{1, 0}, {1, 1}}}), lambda, {}});
    fams.push_back({"die", LocalFunction::from_rules(sp, {0}, {{{1}, {0}}}), delta, {}});
    return Model(sp, grid, std::move(fams));
}

// Krone's duality function on three-chain configurations:
// 1 iff some site has x(i) + y(i) >= 3.
inline int psi_tilde(const Config& x, const Config& y) {
    if (x.size() != y.size()) throw GridMismatch("psi_tilde: grids differ");
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] + y[i] >= 3) return 1;
    return 0;
}

}  // namespace addperc
