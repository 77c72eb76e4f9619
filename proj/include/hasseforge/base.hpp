#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hf {

using Int = mpz_class;
using Rat = mpq_class;

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// explicit base 10: the mpz string constructor auto-detects and would read a
// leading zero as octal
inline Int int_from_string(const std::string& s) { return Int(s, 10); }

inline bool fits_i64(const Int& n) { return n.fits_slong_p(); }
inline i64 to_i64(const Int& n) { return n.get_si(); }
inline u64 to_u64(const Int& n) { return n.get_ui(); }

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    r.canonicalize();
    return r;
}

// splitmix64 finalizer; the basis of the counter-based sample streams
inline u64 mix64(u64 z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// word k of the stream attached to sample `idx` under `seed`; stateless, so
// any partition of samples across threads replays the identical stream
inline u64 rng_word(u64 seed, u64 idx, u64 k) {
    u64 h = mix64(seed ^ 0x8f462907'5f3283f1ull);
    h = mix64(h ^ idx);
    return mix64(h + k * 0x9e3779b97f4a7c15ull);
}

// uniform draw in [0, bound) by rejection; consumes words k, k+1, ... and
// reports the next free word index through k
inline u64 rng_below(u64 seed, u64 idx, u64& k, u64 bound) {
    const u64 limit = bound * (UINT64_MAX / bound);
    for (;;) {
        u64 w = rng_word(seed, idx, k++);
        if (w < limit) return w % bound;
    }
}

}  // namespace hf
