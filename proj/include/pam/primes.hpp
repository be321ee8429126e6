#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "pam/errors.hpp"

namespace pam {

/// Issues primes in order (2, 3, 5, ...), each exactly once. Backed by a
/// segmented sieve that grows on demand, so primality of everything issued
/// is certified by construction.
class PrimeStream {
public:
    PrimeStream() {
        primes_ = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                   53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
        sieved_to_ = 100;
    }

    // Smallest prime not yet issued.
    std::uint64_t next() {
        ensure_generated(cursor_ + 1);
        return primes_[cursor_++];
    }

    // Discard the next n primes without issuing them.
    void skip(std::size_t n) {
        ensure_generated(cursor_ + n);
        cursor_ += n;
    }

    std::size_t issued() const { return cursor_; }

    // Grow the sieve until at least n primes are known.
    void ensure_generated(std::size_t n) {
        while (primes_.size() < n) grow();
    }

    // The i-th prime overall (0-based), generating as needed.
    std::uint64_t nth(std::size_t i) {
        ensure_generated(i + 1);
        return primes_[i];
    }

    const std::vector<std::uint64_t>& generated() const { return primes_; }

private:
    void grow() {
        if (sieved_to_ > std::numeric_limits<std::uint64_t>::max() / 2)
            throw CapacityError("prime sieve exceeded 64-bit range");
        std::uint64_t lo = sieved_to_ + 1;
        std::uint64_t hi = sieved_to_ * 2;
        // All primes up to sqrt(hi) are already known because hi == 2*sieved_to_.
        std::vector<bool> composite(static_cast<std::size_t>(hi - lo + 1), false);
        for (std::uint64_t p : primes_) {
            if (p > hi / p) break;
            std::uint64_t first = ((lo + p - 1) / p) * p;
            if (first < p * p) first = p * p;
            for (std::uint64_t m = first; m <= hi; m += p)
                composite[static_cast<std::size_t>(m - lo)] = true;
        }
        for (std::uint64_t v = lo; v <= hi; ++v)
            if (!composite[static_cast<std::size_t>(v - lo)]) primes_.push_back(v);
        sieved_to_ = hi;
    }

    std::vector<std::uint64_t> primes_;
    std::size_t cursor_ = 0;
    std::uint64_t sieved_to_ = 1;
};

} // namespace pam
