#pragma once

// Shared scalar types, error taxonomy, deterministic sampling utilities.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gnum {

using cplx = std::complex<double>;

inline constexpr double kTolAlgebraic = 1e-12;  // exact identities up to round-off
inline constexpr double kTolQuadratic = 1e-10;  // quantities quadratic in sampled fields
inline constexpr double kTolAdjoint   = 1e-9;   // adjoint orthogonality over many samples
inline constexpr double kTolRelative  = 1e-8;   // relative checks (det/trace of exp)

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

// Base error: any contract violation detected by the kernel.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed user input (bad file, bad mask, unknown name): CLI exit code 2.
struct schema_error : error {
    using error::error;
};

// Structurally valid input violating a mathematical invariant: CLI exit code 3.
struct invariant_error : error {
    using error::error;
};

// splitmix64: tiny, portable, bit-for-bit reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform in [-1, 1).
    double symmetric() { return uniform(-1.0, 1.0); }

    cplx complex_symmetric() { return {symmetric(), symmetric()}; }

    // Derive an independent stream; used to give every check its own seed.
    Rng fork(std::uint64_t salt) {
        return Rng(next_u64() ^ (salt * 0x9E3779B97F4A7C15ull));
    }

private:
    std::uint64_t state_;
};

// Halton low-discrepancy point in [-1,1]^4; index should start at 1.
inline void halton4(std::uint64_t index, double out[4]) {
    static constexpr int bases[4] = {2, 3, 5, 7};
    for (int d = 0; d < 4; ++d) {
        double f = 1.0, r = 0.0;
        std::uint64_t i = index;
        while (i > 0) {
            f /= bases[d];
            r += f * double(i % bases[d]);
            i /= bases[d];
        }
        out[d] = 2.0 * r - 1.0;
    }
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace gnum
