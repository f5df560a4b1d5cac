#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace afftool {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

// Raised when a computation would exceed one of the documented space/size caps.
// The CLI maps this to exit code 3.
struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr u64 kOrderSpaceCap = u64(1) << 40;  // p^d cap for order arithmetic
constexpr u64 kOrbitSpaceCap = u64(1) << 22;  // p^d cap for orbit walks
constexpr u64 kClassCountCap = 10'000'000;    // conjugacy-class stream cap
constexpr u64 kTrialDivisionBound = u64(1) << 20;

inline u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline u64 lcm_u64(u64 a, u64 b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_u64(a, b) * b;
}

// p^e with overflow detection against a cap.
inline u64 ipow_checked(u64 base, u64 exp, u64 cap = kOrderSpaceCap) {
    u64 r = 1;
    for (u64 i = 0; i < exp; ++i) {
        if (r > cap / base) throw cap_exceeded("power exceeds cap");
        r *= base;
    }
    return r;
}

inline u64 ipow(u64 base, u64 exp) {
    u64 r = 1;
    for (u64 i = 0; i < exp; ++i) r *= base;
    return r;
}

// Largest power of p dividing k (the p-part of k).
inline u64 p_part(u64 k, u64 p) {
    u64 r = 1;
    while (k % p == 0) {
        k /= p;
        r *= p;
    }
    return r;
}

// Least e >= 0 with base^e >= x, i.e. ceil(log_base(x)). x >= 1.
inline u32 ceil_log(u64 base, u64 x) {
    u32 e = 0;
    u64 v = 1;
    while (v < x) {
        v *= base;
        ++e;
    }
    return e;
}

// Trial division up to 2^20; any remainder above the bound with no small
// factor is prime since inputs are capped at 2^40.
inline std::vector<std::pair<u64, int>> factor_u64(u64 n) {
    if (n > kOrderSpaceCap * 16) throw cap_exceeded("integer too large to factor");
    std::vector<std::pair<u64, int>> out;
    for (u64 q = 2; q <= kTrialDivisionBound && q * q <= n; q == 2 ? q = 3 : q += 2) {
        if (n % q == 0) {
            int m = 0;
            while (n % q == 0) {
                n /= q;
                ++m;
            }
            out.emplace_back(q, m);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q = 2; q * q <= n; q == 2 ? q = 3 : q += 2)
        if (n % q == 0) return false;
    return true;
}

}  // namespace afftool
