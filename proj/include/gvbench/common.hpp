#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gvbench {

// Base error for everything raised by the library. The CLI maps these to
// exit codes; tests assert on them.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration (bad key, bad value, missing file). Exit code 2.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// A pipeline stage failed (missing upstream artifact, I/O failure). Exit code 3.
class StageError : public Error {
public:
    explicit StageError(const std::string& what) : Error(what) {}
};

// Degenerate statistics (all-zero differences, zero denominator). Reported as
// a warning by default, escalated to exit code 4 under --strict.
class DegenerateStatistics : public Error {
public:
    explicit DegenerateStatistics(const std::string& what) : Error(what) {}
};

template <typename... Args>
std::string concat(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

// ---------------------------------------------------------------------------
// Deterministic randomness.
//
// std::mt19937_64 has a fully specified algorithm, but the standard
// *distributions* do not, so every draw below is built directly on the raw
// generator output. Same seed, same sequence, on every platform.
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a) { return splitmix64(a); }

template <typename... Rest>
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, Rest... rest) {
    return mix_seed(splitmix64(a) ^ (b + 0x9e3779b97f4a7c15ull), rest...);
}

// Uniform integer in [0, bound) by rejection; bound must be > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

// Uniform double in [0, 1) with 53 bits.
inline double uniform_real(Rng& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller (one value per call, two uniforms consumed).
inline double normal(Rng& rng) {
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform_real(rng);
    const double u2 = uniform_real(rng);
    const double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = std::size_t(uniform_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

// round half away from zero, as used for edge-count targets
inline long long round_half_away(double x) { return std::llround(x); }

// ---------------------------------------------------------------------------
// Content hashing (FNV-1a 64). Used for resume stamps, not for security.
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t hash_file(const std::string& path);
std::string hash_hex(std::uint64_t h);

// ---------------------------------------------------------------------------
// Small file helpers.
// ---------------------------------------------------------------------------

std::string read_text_file(const std::string& path);
std::vector<unsigned char> read_binary_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
void write_binary_file(const std::string& path, const void* data, std::size_t len);
void ensure_parent_dir(const std::string& path);

}  // namespace gvbench
