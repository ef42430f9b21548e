#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace nonleaf {

using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

inline Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

inline Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return abs_int(a / gcd_int(a, b) * b);
}

inline Int pow_int(Int base, unsigned exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

// floor of the j-th root of n >= 0
inline Int iroot(const Int& n, unsigned j) {
    if (j == 0) throw std::invalid_argument("iroot: zeroth root");
    if (n < 0) throw std::invalid_argument("iroot: negative argument");
    if (n <= 1 || j == 1) return n;
    Int lo = 1, hi = 2;
    while (pow_int(hi, j) <= n) hi <<= 1;
    while (lo + 1 < hi) {
        Int mid = (lo + hi) >> 1;
        if (pow_int(mid, j) <= n)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

inline Int powmod(Int a, Int e, const Int& m) {
    Int r = 1;
    a %= m;
    if (a < 0) a += m;
    while (e > 0) {
        if ((e & 1) != 0) r = r * a % m;
        a = a * a % m;
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin with a fixed witness set; complete for all
// n < 3.3e24, far above anything a manifest can put in a prime slot.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

namespace detail {

// Pollard rho (Brent cycle finding) with a deterministic offset schedule.
inline Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            d = gcd_int(abs_int(x - y), n);
        }
        if (d != n) return d;
    }
}

inline void factor_into(Int n, std::map<Int, unsigned>& out) {
    if (n <= 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        if (n % p == 0) {
            ++out[p];
            factor_into(n / p, out);
            return;
        }
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

// Prime factorization n = prod p^e as {p -> e}. Requires n >= 1.
inline std::map<Int, unsigned> factorize(const Int& n) {
    if (n < 1) throw std::invalid_argument("factorize: argument must be >= 1");
    std::map<Int, unsigned> out;
    detail::factor_into(n, out);
    return out;
}

// splitmix64. Seeded runs must produce identical streams on every platform,
// which <random> distributions do not guarantee.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = ~0ULL - ~0ULL % n;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    // uniform in [lo, hi], inclusive
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

}  // namespace nonleaf
