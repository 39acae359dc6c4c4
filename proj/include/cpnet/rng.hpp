// rng.hpp -- seed derivation and the random primitives used everywhere.
//
// All experiments derive per-purpose, per-replica streams from one master
// seed, so a rerun with the same configuration is bit-identical regardless
// of the thread count.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace cpnet {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// FNV-1a over a label, mixed with the master seed and a replica index.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose,
                                 std::uint64_t replica = 0) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : purpose) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(master ^ splitmix64(h) ^ splitmix64(replica * 0x9e3779b97f4a7c15ULL + 1));
}

// mt19937_64 wrapper with self-contained distributions (the std distribution
// objects are implementation-defined, ours are not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t u64() { return engine_(); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1]
    double uniform_pos() { return 1.0 - uniform(); }

    // uniform integer in [0, bound), bound >= 1, rejection-free of modulo bias
    std::uint64_t uniform_int(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = u64();
            if (r >= threshold) return r % bound;
        }
    }

    double exponential(double rate = 1.0) { return -std::log(uniform_pos()) / rate; }

    bool bernoulli(double p) { return uniform() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // sorted arrival times of a rate-`rate` Poisson process on [0, horizon]
    std::vector<double> poisson_times(double rate, double horizon) {
        std::vector<double> out;
        double t = exponential(rate);
        while (t <= horizon) {
            out.push_back(t);
            t += exponential(rate);
        }
        return out;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace cpnet
