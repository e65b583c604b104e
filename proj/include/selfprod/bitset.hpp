#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <vector>

namespace selfprod {

/// Flat bit array over [0, size).  Writers may use set() (single-threaded)
/// or set_atomic() (idempotent fetch_or, safe from concurrent workers);
/// both produce the identical final set.  Reads require no synchronization
/// once writing has finished.
class BitArray {
public:
    BitArray() = default;
    explicit BitArray(std::uint64_t size)
        : size_(size), words_((size + 63) / 64, 0) {}

    std::uint64_t size() const { return size_; }

    void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }

    void set_atomic(std::uint64_t i) {
        std::atomic_ref<std::uint64_t> w(words_[i >> 6]);
        w.fetch_or(std::uint64_t(1) << (i & 63), std::memory_order_relaxed);
    }

    bool test(std::uint64_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    std::uint64_t count() const {
        std::uint64_t c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    /// Number of set bits with index <= upto.
    std::uint64_t count_prefix(std::uint64_t upto) const {
        if (upto >= size_) upto = size_ - 1;
        const std::uint64_t full = (upto + 1) >> 6;
        std::uint64_t c = 0;
        for (std::uint64_t w = 0; w < full; ++w) c += std::popcount(words_[w]);
        const unsigned rem = static_cast<unsigned>((upto + 1) & 63);
        if (rem != 0)
            c += std::popcount(words_[full] & ((std::uint64_t(1) << rem) - 1));
        return c;
    }

private:
    std::uint64_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace selfprod
