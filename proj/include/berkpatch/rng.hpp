#pragma once

#include "berkpatch/rational.hpp"

#include <cstdint>
#include <random>

namespace berk {

// Seeded generator with helpers that avoid std distributions, whose output is allowed
// to differ between standard library implementations. mt19937_64 itself is pinned by
// the standard, so everything here is reproducible across platforms.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t next() { return eng(); }

    std::uint64_t below(std::uint64_t n) {
        // Rejection sampling keeps the draw unbiased.
        std::uint64_t limit = n * ((~std::uint64_t{0} / n));
        for (;;) {
            std::uint64_t v = eng();
            if (v < limit || limit == 0) return v % n;
        }
    }

    long range(long lo, long hi) { // inclusive bounds
        return lo + (long)below((std::uint64_t)(hi - lo + 1));
    }

    bool coin() { return (eng() & 1) != 0; }

    // Rational with numerator in [-h, h] and denominator in [1, h].
    Rat rat(long h) {
        long n = range(-h, h);
        long d = range(1, h);
        return Rat(n) / Rat(d);
    }

    Rat nonzero_rat(long h) {
        for (;;) {
            Rat r = rat(h);
            if (r != 0) return r;
        }
    }
};

} // namespace berk
