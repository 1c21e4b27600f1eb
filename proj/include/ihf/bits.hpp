#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace ihf {

// Dense F_2 vector.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int size() const { return n_; }
    bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void flip(int i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    BitVec& operator^=(const BitVec& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }
    // First set bit at index >= from, or -1.
    int next(int from = 0) const {
        if (from >= n_) return -1;
        std::size_t k = static_cast<std::size_t>(from) >> 6;
        std::uint64_t word = w_[k] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (word) return static_cast<int>(k * 64 + std::countr_zero(word));
            if (++k >= w_.size()) return -1;
            word = w_[k];
        }
    }
    template <class F>
    void for_each(F&& f) const {
        for (int i = next(0); i >= 0; i = next(i + 1)) f(i);
    }
    int count() const {
        int c = 0;
        for (auto x : w_) c += std::popcount(x);
        return c;
    }
    bool operator==(const BitVec&) const = default;

  private:
    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace ihf
