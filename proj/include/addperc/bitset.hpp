#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace addperc {

// Fixed-width bitset over the extended grid (site, level) -> bit index.
// Word layout is LSB-first so iteration order equals bit-index order.
class ExtSet {
public:
    ExtSet() = default;
    explicit ExtSet(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    int size() const { return nbits_; }

    bool test(int b) const {
        assert(b >= 0 && b < nbits_);
        return (w_[b >> 6] >> (b & 63)) & 1u;
    }
    void set(int b) {
        assert(b >= 0 && b < nbits_);
        w_[b >> 6] |= uint64_t{1} << (b & 63);
    }
    void reset(int b) {
        assert(b >= 0 && b < nbits_);
        w_[b >> 6] &= ~(uint64_t{1} << (b & 63));
    }

    bool none() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }
    bool any() const { return !none(); }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    ExtSet& operator|=(const ExtSet& o) {
        assert(nbits_ == o.nbits_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    ExtSet& operator&=(const ExtSet& o) {
        assert(nbits_ == o.nbits_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    ExtSet& and_not(const ExtSet& o) {
        assert(nbits_ == o.nbits_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend ExtSet operator|(ExtSet a, const ExtSet& b) { return a |= b; }
    friend ExtSet operator&(ExtSet a, const ExtSet& b) { return a &= b; }

    bool intersects(const ExtSet& o) const {
        assert(nbits_ == o.nbits_);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    bool is_subset_of(const ExtSet& o) const {
        assert(nbits_ == o.nbits_);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    // Bits of the given site block, as a small mask.  levels <= 32.
    uint32_t site_mask(int site, int levels) const {
        uint32_t m = 0;
        for (int l = 0; l < levels; ++l)
            if (test(site * levels + l)) m |= uint32_t{1} << l;
        return m;
    }
    void set_site_mask(int site, int levels, uint32_t m) {
        for (int l = 0; l < levels; ++l) {
            int b = site * levels + l;
            if ((m >> l) & 1u)
                set(b);
            else
                reset(b);
        }
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (size_t i = 0; i < w_.size(); ++i) {
            uint64_t w = w_[i];
            while (w) {
                int b = std::countr_zero(w);
                fn(static_cast<int>(i * 64 + b));
                w &= w - 1;
            }
        }
    }

    bool operator==(const ExtSet& o) const = default;

private:
    int nbits_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace addperc
