#pragma once

#include "ghecke/suites.hpp"

#include <map>

namespace ghecke::test {

// contexts are expensive enough to share across test cases
inline WeylContext& ctx(char family, int rank) {
    static std::map<std::string, WeylContext> cache;
    std::string key = std::string(1, family) + std::to_string(rank);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make_context(family, rank)).first;
    return it->second;
}

struct Lcg {
    uint64_t s;
    explicit Lcg(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 33;
    }
    int pick(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
    Rat rat(int lo, int hi) { return Rat(lo + pick(hi - lo + 1)); }
};

}  // namespace ghecke::test
