#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "addperc/bitset.hpp"
#include "addperc/extension.hpp"
#include "addperc/local_map.hpp"

namespace addperc {

enum class Topology { Line, Torus };

struct GridSpec {
    int size = 0;
    Topology topology = Topology::Torus;
    bool operator==(const GridSpec&) const = default;
};

// Explicit per-pair rate for arity-2 families: instance window (src, dst).
struct RateEntry {
    int src;
    int dst;
    double rate;
    bool operator==(const RateEntry&) const = default;
};

struct FamilySpec {
    std::string name;
    LocalFunction map;
    double rate = 0.0;                  // constant, one instance per anchor
    std::vector<RateEntry> rate_table;  // overrides `rate` when nonempty
};

struct Family {
    std::string name;
    LocalFunction map;
    double rate = 0.0;
    std::vector<RateEntry> rate_table;
    ArrowBlockMap min_ext;  // over window positions
};

// Arrow/block action precompiled to grid bit indices.
struct CompiledMap {
    ExtSet block_mask;
    std::vector<std::pair<int, int>> arrow_bits;

    void apply(ExtSet& s, std::vector<int>& scratch) const {
        scratch.clear();
        for (const auto& [src, tgt] : arrow_bits)
            if (s.test(src)) scratch.push_back(tgt);
        s.and_not(block_mask);
        for (int b : scratch) s.set(b);
    }
};

struct MapInstance {
    int family;
    int anchor;              // anchor site, or rate-table row source
    std::vector<int> sites;  // absolute site per window position
    double rate;
    CompiledMap op;
    CompiledMap op_transposed;
};

struct PlacementNote {
    std::string family;
    int anchor;
    std::string reason;
};

// The three per-site rate sums whose maxima bound the dynamics: total rate of
// maps changing the site in place, of incoming off-site influence, and of
// outgoing off-site influence.
struct RateReport {
    double max_change = 0.0;
    double max_incoming = 0.0;
    double max_outgoing = 0.0;
};

class Model {
public:
    Model(std::shared_ptr<const StateSpace> space, GridSpec grid,
          std::vector<FamilySpec> families,
          std::vector<std::string> state_names = {})
        : space_(std::move(space)), grid_(grid), state_names_(std::move(state_names)) {
        if (grid_.size <= 0) throw ModelError("grid size must be positive");
        if (!state_names_.empty() &&
            static_cast<int>(state_names_.size()) != space_->states())
            throw ModelError("state name list does not match the lattice size");
        for (FamilySpec& fs : families) {
            if (!fs.map.space().same_structure(*space_))
                throw ModelError("family '" + fs.name + "' uses a different state space");
            if (fs.rate < 0) throw ModelError("family '" + fs.name + "' has a negative rate");
            for (const RateEntry& e : fs.rate_table)
                if (e.rate < 0)
                    throw ModelError("family '" + fs.name + "' has a negative rate");
            if (auto wit = additivity_witness(fs.map))
                throw NotAdditiveError(fs.name, config_to_string(wit->first) + " vs " +
                                                    config_to_string(wit->second));
            families_.push_back(Family{fs.name, fs.map, fs.rate, fs.rate_table,
                                       minimal_extension(fs.map)});
        }
        instantiate();
    }

    const StateSpace& space() const { return *space_; }
    std::shared_ptr<const StateSpace> space_ptr() const { return space_; }
    const GridSpec& grid() const { return grid_; }
    int sites() const { return grid_.size; }
    int levels() const { return space_->levels(); }
    int bits() const { return grid_.size * space_->levels(); }
    int bit(int site, int level) const { return site * levels() + level; }

    const std::vector<Family>& families() const { return families_; }
    const std::vector<MapInstance>& instances() const { return instances_; }
    const std::vector<PlacementNote>& placement() const { return placement_; }
    const std::vector<std::string>& state_names() const { return state_names_; }

    int family_index(const std::string& name) const {
        for (size_t i = 0; i < families_.size(); ++i)
            if (families_[i].name == name) return static_cast<int>(i);
        return -1;
    }

    int find_instance(const std::string& family, int anchor) const {
        for (size_t i = 0; i < instances_.size(); ++i)
            if (instances_[i].anchor == anchor &&
                families_[instances_[i].family].name == family)
                return static_cast<int>(i);
        return -1;
    }

    // Equality of the defining data; instances are derived deterministically.
    bool operator==(const Model& o) const {
        if (!space_->same_structure(*o.space_) || !(grid_ == o.grid_) ||
            state_names_ != o.state_names_ || families_.size() != o.families_.size())
            return false;
        for (size_t i = 0; i < families_.size(); ++i) {
            const Family &a = families_[i], &b = o.families_[i];
            if (a.name != b.name || !(a.map == b.map) || a.rate != b.rate ||
                a.rate_table != b.rate_table)
                return false;
        }
        return true;
    }

private:
    std::optional<int> place(int site) const {
        if (grid_.topology == Topology::Torus) {
            int n = grid_.size;
            return ((site % n) + n) % n;
        }
        if (site < 0 || site >= grid_.size) return std::nullopt;
        return site;
    }

    void instantiate() {
        for (size_t fi = 0; fi < families_.size(); ++fi) {
            const Family& fam = families_[fi];
            const int w = fam.map.arity();
            auto add_instance = [&](int anchor, const std::vector<int>& sites, double rate) {
                MapInstance inst;
                inst.family = static_cast<int>(fi);
                inst.anchor = anchor;
                inst.sites = sites;
                inst.rate = rate;
                ArrowBlockMap abs =
                    fam.min_ext.relabel_sites([&](int pos) { return sites[pos]; });
                inst.op = compile(abs);
                inst.op_transposed = compile(abs.transpose());
                instances_.push_back(std::move(inst));
            };
            if (!fam.rate_table.empty()) {
                for (const RateEntry& e : fam.rate_table) {
                    auto s = place(e.src), d = place(e.dst);
                    if (!s || !d) {
                        placement_.push_back({fam.name, e.src, "pair outside the grid"});
                        continue;
                    }
                    if (*s == *d) {
                        placement_.push_back({fam.name, e.src, "degenerate pair"});
                        continue;
                    }
                    add_instance(*s, {*s, *d}, e.rate);
                }
                continue;
            }
            for (int anchor = 0; anchor < grid_.size; ++anchor) {
                std::vector<int> sites;
                bool ok = true;
                for (int k = 0; k < w && ok; ++k) {
                    auto s = place(anchor + fam.map.offsets()[k]);
                    if (!s) {
                        ok = false;
                        break;
                    }
                    for (int prev : sites)
                        if (prev == *s) ok = false;  // window collapsed by wrapping
                    if (ok) sites.push_back(*s);
                }
                if (!ok) {
                    placement_.push_back({fam.name, anchor, "window does not fit the grid"});
                    continue;
                }
                add_instance(anchor, sites, fam.rate);
            }
        }
    }

    CompiledMap compile(const ArrowBlockMap& a) const {
        CompiledMap c;
        c.block_mask = ExtSet(bits());
        for (const ExtSite& b : a.blocks()) c.block_mask.set(bit(b.site, b.level));
        for (const Arrow& ar : a.arrows())
            c.arrow_bits.emplace_back(bit(ar.from.site, ar.from.level),
                                      bit(ar.to.site, ar.to.level));
        return c;
    }

    std::shared_ptr<const StateSpace> space_;
    GridSpec grid_;
    std::vector<std::string> state_names_;
    std::vector<Family> families_;
    std::vector<MapInstance> instances_;
    std::vector<PlacementNote> placement_;
};

inline RateReport check_rate_conditions(const Model& m) {
    const int n = m.sites();
    std::vector<double> change(n, 0.0), incoming(n, 0.0), outgoing(n, 0.0);
    const StateSpace& sp = m.space();
    // per-family matrix-element structure over window positions
    struct FamStruct {
        std::vector<int> diag_not_id;
        std::vector<std::pair<int, int>> offdiag;  // (src pos, tgt pos), nonzero
    };
    std::vector<FamStruct> fs;
    for (const Family& fam : m.families()) {
        FamStruct s;
        const int w = fam.map.arity();
        for (int k = 0; k < w; ++k)
            if (!is_identity_map(matrix_element(fam.map, k, k))) s.diag_not_id.push_back(k);
        for (int i = 0; i < w; ++i)
            for (int j = 0; j < w; ++j)
                if (i != j && !is_zero_map(matrix_element(fam.map, i, j), sp))
                    s.offdiag.emplace_back(i, j);
        fs.push_back(std::move(s));
    }
    for (const MapInstance& inst : m.instances()) {
        const FamStruct& s = fs[inst.family];
        for (int k : s.diag_not_id) change[inst.sites[k]] += inst.rate;
        for (const auto& [i, j] : s.offdiag) {
            outgoing[inst.sites[i]] += inst.rate;
            incoming[inst.sites[j]] += inst.rate;
        }
    }
    RateReport r;
    for (int i = 0; i < n; ++i) {
        r.max_change = std::max(r.max_change, change[i]);
        r.max_incoming = std::max(r.max_incoming, incoming[i]);
        r.max_outgoing = std::max(r.max_outgoing, outgoing[i]);
    }
    return r;
}

}  // namespace addperc
