#pragma once

/**
 * @file exact.hpp
 * @brief Exact integer helpers and the group Q/Z.
 *
 * All integers are int64 with every arithmetic step checked; leaving the
 * representable range raises OverflowError instead of wrapping. Elements
 * of Q/Z are kept as reduced fractions num/den with 0 <= num < den, so two
 * elements are equal exactly when their stored fields are equal.
 */

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <string>

#include "flagmot/errors.hpp"

namespace flagmot {

using Int = std::int64_t;
using Nat = std::int64_t;

inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowError("integer overflow in addition");
    }
    return r;
}

inline Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) {
        throw OverflowError("integer overflow in subtraction");
    }
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError("integer overflow in multiplication");
    }
    return r;
}

/// base^e for e >= 0, checked.
inline Int ipow(Int base, Nat e) {
    if (e < 0) throw DomainError("negative exponent in ipow");
    Int r = 1;
    for (Nat i = 0; i < e; ++i) r = checked_mul(r, base);
    return r;
}

/// Non-negative gcd; gcd(0, 0) = 0.
inline Int gcd(Int a, Int b) {
    if (a == INT64_MIN || b == INT64_MIN) throw OverflowError("gcd of INT64_MIN");
    return std::gcd(a, b);
}

inline Int lcm(Int a, Int b) {
    if (a == 0 || b == 0) return 0;
    Int g = gcd(a, b);
    Int aa = a < 0 ? -a : a;
    Int bb = b < 0 ? -b : b;
    return checked_mul(aa / g, bb);
}

/// Floor modulus into [0, m).
inline Int mod(Int a, Int m) {
    if (m <= 0) throw DomainError("modulus must be positive");
    Int r = a % m;
    return r < 0 ? r + m : r;
}

inline bool is_prime(Nat p) {
    if (p < 2) return false;
    for (Nat d = 2; d <= p / d; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

inline void require_prime(Nat p) {
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not a prime");
}

/// Largest e with p^e | m.
inline Nat v_p(Nat m, Nat p) {
    require_prime(p);
    if (m == 0) throw DomainError("p-adic valuation of 0 is undefined");
    if (m < 0) m = -m;
    Nat e = 0;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    return e;
}

/// The p-part p^{v_p(m)} of m >= 1.
inline Nat p_part(Nat m, Nat p) { return ipow(p, v_p(m, p)); }

inline Nat gcd_list(std::span<const Nat> ds) {
    if (ds.empty()) throw DomainError("gcd of an empty list");
    Nat g = 0;
    for (Nat d : ds) {
        if (d <= 0) throw DomainError("gcd_list entries must be >= 1");
        g = gcd(g, d);
    }
    return g;
}

/// Inverse of a modulo m (gcd(a, m) = 1, m >= 1).
inline Int mod_inverse(Int a, Int m) {
    if (m == 1) return 0;
    Int old_r = mod(a, m), r = m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw DomainError("element is not invertible modulo " + std::to_string(m));
    return mod(old_s, m);
}

/**
 * An element of Q/Z in canonical form num/den, gcd(num, den) = 1,
 * 0 <= num < den. The zero element is 0/1.
 */
class Fraction {
public:
    constexpr Fraction() = default;

    /// Reduces any num/den (den != 0) to its canonical representative mod 1.
    Fraction(Int num, Int den) {
        if (den == 0) throw DomainError("fraction with zero denominator");
        if (den < 0) {
            num = checked_sub(0, num);
            den = checked_sub(0, den);
        }
        Int n = mod(num, den);
        Int g = gcd(n, den);
        num_ = n / g;
        den_ = den / g;
    }

    Int num() const { return num_; }
    Nat den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    friend bool operator==(const Fraction&, const Fraction&) = default;

    /// Orders by denominator, then numerator; used only for canonical sorting.
    friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
        if (auto c = a.den_ <=> b.den_; c != 0) return c;
        return a.num_ <=> b.num_;
    }

private:
    Int num_ = 0;
    Nat den_ = 1;
};

inline Fraction frac_add(const Fraction& a, const Fraction& b) {
    Int l = lcm(a.den(), b.den());
    Int n = checked_add(checked_mul(a.num(), l / a.den()), checked_mul(b.num(), l / b.den()));
    return Fraction(n, l);
}

inline Fraction frac_scale(const Fraction& a, Int t) {
    // Reduce t first so the product stays small.
    Int tr = mod(t, a.den());
    return Fraction(checked_mul(a.num(), tr), a.den());
}

inline Nat frac_order(const Fraction& a) { return a.den(); }

inline Fraction operator+(const Fraction& a, const Fraction& b) { return frac_add(a, b); }
inline Fraction operator-(const Fraction& a) { return frac_scale(a, -1); }
inline Fraction operator-(const Fraction& a, const Fraction& b) { return frac_add(a, -b); }

inline std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.str(); }

/// Parses "num/den" or a bare integer "num" (meaning num/1).
inline Fraction parse_fraction(const std::string& s) {
    auto slash = s.find('/');
    auto to_int = [&](const std::string& part) -> Int {
        if (part.empty()) throw DomainError("malformed fraction '" + s + "'");
        std::size_t pos = 0;
        Int v = 0;
        try {
            v = std::stoll(part, &pos);
        } catch (const std::exception&) {
            throw DomainError("malformed fraction '" + s + "'");
        }
        if (pos != part.size()) throw DomainError("malformed fraction '" + s + "'");
        return v;
    };
    if (slash == std::string::npos) return Fraction(to_int(s), 1);
    return Fraction(to_int(s.substr(0, slash)), to_int(s.substr(slash + 1)));
}

}  // namespace flagmot
