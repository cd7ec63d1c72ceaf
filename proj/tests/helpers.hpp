#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

// Property tests are reproducible: the seed is fixed unless OBK_SEED is
// set in the environment.
inline std::uint64_t test_seed() {
    if (const char* s = std::getenv("OBK_SEED")) return std::strtoull(s, nullptr, 10);
    return 20260815ull;
}

inline std::mt19937_64 test_rng(std::uint64_t salt = 0) {
    return std::mt19937_64(test_seed() + salt);
}
