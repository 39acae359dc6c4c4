// fenwick.hpp -- binary indexed tree with prefix-weighted selection.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cpnet {

// Supports point update, total sum and "find the first index whose prefix
// sum exceeds x" in O(log n). Used both for weighted vertex selection in the
// simulation engine and for k-th order selection in the sequential matcher.
template <typename T>
class Fenwick {
public:
    explicit Fenwick(std::size_t n) : n_(n), tree_(n + 1, T{}) {}

    void add(std::size_t i, T delta) {
        for (std::size_t k = i + 1; k <= n_; k += k & (~k + 1)) tree_[k] += delta;
    }

    T prefix(std::size_t i) const {  // sum of [0, i)
        T s{};
        for (std::size_t k = i; k > 0; k -= k & (~k + 1)) s += tree_[k];
        return s;
    }

    T total() const { return prefix(n_); }

    // smallest i with prefix(i+1) > x; requires x < total()
    std::size_t select(T x) const {
        std::size_t pos = 0;
        std::size_t mask = highest_bit_;
        if (mask == 0) {
            mask = 1;
            while ((mask << 1) <= n_) mask <<= 1;
            highest_bit_ = mask;
        }
        while (mask > 0) {
            std::size_t next = pos + mask;
            if (next <= n_ && tree_[next] <= x) {
                x -= tree_[next];
                pos = next;
            }
            mask >>= 1;
        }
        return pos;  // 0-based index
    }

    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::vector<T> tree_;
    mutable std::size_t highest_bit_ = 0;
};

}  // namespace cpnet
