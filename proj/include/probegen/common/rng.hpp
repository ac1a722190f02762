#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace probegen {

// Seeded generator whose derived draws are identical on every platform.
// std::*_distribution is implementation-defined, so the conversions live here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t draws() const { return draws_; }

    std::uint64_t next() {
        ++draws_;
        return engine_();
    }

    // Uniform in [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n), n > 0, without modulo bias.
    std::uint64_t below(std::uint64_t n);

    // Uniform integer in [lo, hi].
    long long between(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    std::uint64_t draws_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

// Child stream seed from a master seed and a sequence of labels.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t part);
std::uint64_t derive_seed(std::uint64_t master, std::string_view label);

template <typename... Parts>
std::uint64_t derive_seed(std::uint64_t master, Parts&&... parts)
    requires(sizeof...(Parts) > 1)
{
    std::uint64_t s = master;
    ((s = derive_seed(s, std::forward<Parts>(parts))), ...);
    return s;
}

}  // namespace probegen
