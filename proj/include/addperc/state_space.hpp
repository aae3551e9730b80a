#pragma once

#include <memory>
#include <mutex>

#include "addperc/lattice.hpp"
#include "addperc/poset.hpp"

namespace addperc {

// Birkhoff pair: a finite poset Δ of levels together with S = down-sets of Δ.
// All state indices are canonical (card, lex) positions, so two StateSpaces
// built from equal posets number their states identically.
class StateSpace {
public:
    static std::shared_ptr<const StateSpace> create(Poset delta) {
        auto sp = std::shared_ptr<StateSpace>(new StateSpace(std::move(delta)));
        return sp;
    }

    const Poset& delta() const { return delta_; }
    const Lattice& lattice() const { return lat_.lattice; }
    int levels() const { return delta_.size(); }
    int states() const { return lat_.lattice.size(); }

    uint32_t down_mask(int a) const { return lat_.masks[a]; }
    int state_of_mask(uint32_t m) const {
        if (m >= mask_to_state_.size()) return -1;
        return mask_to_state_[m];
    }

    int bottom() const { return lat_.lattice.bottom(); }
    int top() const { return lat_.lattice.top(); }
    int join(int a, int b) const { return lat_.lattice.join(a, b); }
    int meet(int a, int b) const { return lat_.lattice.meet(a, b); }
    bool leq(int a, int b) const { return lat_.lattice.leq(a, b); }

    // Principal down-set {τ : τ <= σ} of a level, as a bitmask.
    uint32_t principal_down(int sigma) const {
        uint32_t m = 0;
        for (int t = 0; t < levels(); ++t)
            if (delta_.leq(t, sigma)) m |= uint32_t{1} << t;
        return m;
    }

    // Lazily built dual space over the reversed level order.  Its down-sets
    // are the up-sets of Δ, stored over the same level universe so bitmasks
    // line up between the two spaces.
    std::shared_ptr<const StateSpace> dual() const {
        std::call_once(dual_once_, [this] { dual_ = create(delta_.dual()); });
        return dual_;
    }

    // Index in the dual space of a' (complement of a's down-set).
    int dual_state(int a) const {
        uint32_t full = (levels() >= 32) ? ~uint32_t{0} : ((uint32_t{1} << levels()) - 1);
        int b = dual()->state_of_mask(full & ~down_mask(a));
        return b;
    }

    bool same_structure(const StateSpace& o) const { return delta_ == o.delta_; }

private:
    explicit StateSpace(Poset delta) : delta_(std::move(delta)), lat_(downset_lattice(delta_)) {
        mask_to_state_.assign(size_t{1} << delta_.size(), -1);
        for (int a = 0; a < states(); ++a) mask_to_state_[lat_.masks[a]] = a;
    }

    Poset delta_;
    DownsetLattice lat_;
    std::vector<int> mask_to_state_;
    mutable std::once_flag dual_once_;
    mutable std::shared_ptr<const StateSpace> dual_;
};

}  // namespace addperc
