#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "hrlab/common.hpp"

namespace hrlab {

// Index sets are bitmasks over {1..n}; bit (i-1) set means index i is present.
using index_mask_t = std::uint32_t;

constexpr int kMaxAmbientDim = 16;

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t v = 1;
    for (int i = 0; i < k; ++i) v = v * static_cast<std::uint64_t>(n - i) / (i + 1);
    return v;
}

// A strictly increasing list of indices in [1, n]; the canonical label of a
// wedge-monomial factor dz_I (or dz-bar_J).
class MultiIndex {
  public:
    MultiIndex() = default;
    MultiIndex(std::vector<int> indices, int n) : indices_(std::move(indices)), n_(n) {
        int prev = 0;
        for (int i : indices_) {
            if (i <= prev || i > n_) throw RangeError("MultiIndex: entries must be strictly increasing in [1, n]");
            prev = i;
        }
    }
    static MultiIndex from_mask(index_mask_t mask, int n) {
        std::vector<int> idx;
        for (int i = 1; i <= n; ++i)
            if (mask & (index_mask_t{1} << (i - 1))) idx.push_back(i);
        MultiIndex m;
        m.indices_ = std::move(idx);
        m.n_ = n;
        return m;
    }
    index_mask_t mask() const {
        index_mask_t m = 0;
        for (int i : indices_) m |= index_mask_t{1} << (i - 1);
        return m;
    }
    const std::vector<int>& indices() const { return indices_; }
    int size() const { return static_cast<int>(indices_.size()); }
    int ambient() const { return n_; }
    bool operator==(const MultiIndex& o) const = default;

  private:
    std::vector<int> indices_;
    int n_ = 0;
};

// Sign of the permutation sorting the concatenation (A..., B...) of two
// disjoint increasing index sets; +1/-1, caller guarantees disjointness.
inline int merge_sign(index_mask_t a, index_mask_t b) {
    int inversions = 0;
    index_mask_t bb = b;
    while (bb) {
        const int pos = std::countr_zero(bb);
        inversions += std::popcount(a >> (pos + 1));
        bb &= bb - 1;
    }
    return (inversions & 1) ? -1 : 1;
}

// Lexicographic enumeration of all k-subsets of {1..n} plus the inverse
// mask -> rank map. Built once per (n, k) and shared by Form storage.
class CombTable {
  public:
    CombTable(int n, int k) : n_(n), k_(k) {
        if (n < 0 || n > kMaxAmbientDim || k < 0) throw RangeError("CombTable: bad n or k");
        if (k > n) return;  // zero slots, empty table
        masks_.reserve(binomial(n, k));
        // Lexicographic order of the increasing index lists; this is the
        // canonical basis ordering every Gram matrix in the project uses.
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i + 1;
        while (true) {
            index_mask_t m = 0;
            for (int i : idx) m |= index_mask_t{1} << (i - 1);
            masks_.push_back(m);
            if (k == 0) break;
            int pos = k - 1;
            while (pos >= 0 && idx[pos] == n - (k - 1 - pos)) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
        }
        rank_.assign(std::size_t{1} << n, -1);
        for (std::size_t i = 0; i < masks_.size(); ++i) rank_[masks_[i]] = static_cast<int>(i);
    }
    int count() const { return static_cast<int>(masks_.size()); }
    index_mask_t mask_of(int rank) const { return masks_[static_cast<std::size_t>(rank)]; }
    int rank_of(index_mask_t mask) const { return rank_[mask]; }

  private:
    int n_, k_;
    std::vector<index_mask_t> masks_;
    std::vector<int> rank_;
};

}  // namespace hrlab
