#pragma once

/// Exact arithmetic in the prime field F_p for odd p. Residues are stored
/// normalized to {0, ..., p-1}; negative integers normalize on construction,
/// so values such as SW = -1 reduce without sign ambiguity.

#include <span>
#include <string>
#include <vector>

#include "esw/errors.hpp"

namespace esw {

// Odd prime modulus, validated by trial division at construction. All the
// moduli in play are desk-scale (3, 5, 7, ...).
class PrimeModulus {
public:
    explicit PrimeModulus(int p) : p_(p) {
        if (p < 3 || p % 2 == 0 || !odd_prime(p))
            throw schema_error("modulus must be an odd prime >= 3, got " +
                               std::to_string(p));
    }

    int value() const { return p_; }

    friend bool operator==(PrimeModulus a, PrimeModulus b) { return a.p_ == b.p_; }
    friend bool operator!=(PrimeModulus a, PrimeModulus b) { return a.p_ != b.p_; }

private:
    static bool odd_prime(int n) {
        for (int d = 3; d * d <= n; d += 2)
            if (n % d == 0) return false;
        return true;
    }

    int p_;
};

// Element of F_p.
class Residue {
public:
    Residue(long long v, PrimeModulus m) : mod_(m) {
        const long long p = m.value();
        const long long r = v % p;
        value_ = static_cast<int>(r < 0 ? r + p : r);
    }

    int value() const { return value_; }
    PrimeModulus modulus() const { return mod_; }
    bool is_zero() const { return value_ == 0; }

    friend bool operator==(const Residue& a, const Residue& b) {
        return a.mod_ == b.mod_ && a.value_ == b.value_;
    }
    friend bool operator!=(const Residue& a, const Residue& b) { return !(a == b); }

    friend Residue operator+(const Residue& a, const Residue& b) {
        require_same_modulus(a, b);
        return Residue(static_cast<long long>(a.value_) + b.value_, a.mod_);
    }
    friend Residue operator-(const Residue& a, const Residue& b) {
        require_same_modulus(a, b);
        return Residue(static_cast<long long>(a.value_) - b.value_, a.mod_);
    }
    friend Residue operator*(const Residue& a, const Residue& b) {
        require_same_modulus(a, b);
        return Residue(static_cast<long long>(a.value_) * b.value_, a.mod_);
    }
    Residue operator-() const { return Residue(-static_cast<long long>(value_), mod_); }

private:
    static void require_same_modulus(const Residue& a, const Residue& b) {
        if (a.mod_ != b.mod_)
            throw std::logic_error("mixed moduli in residue arithmetic");
    }

    int value_;
    PrimeModulus mod_;
};

// Multiplicative inverse by extended Euclid.
inline Residue inv(const Residue& a) {
    if (a.is_zero())
        throw zero_input_error("inverse of 0 mod " + std::to_string(a.modulus().value()));
    int r0 = a.modulus().value(), r1 = a.value();
    int s0 = 0, s1 = 1; // s tracks the coefficient of a.value()
    while (r1 != 0) {
        const int q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    // r0 = gcd = 1 since p is prime and a != 0
    return Residue(s0, a.modulus());
}

// (prod numerators) / (prod denominators) in F_p; empty products are 1.
inline Residue ratio(PrimeModulus p, std::span<const Residue> numerators,
                     std::span<const Residue> denominators) {
    Residue num(1, p), den(1, p);
    for (const Residue& x : numerators)
        num = num * x;
    for (const Residue& x : denominators) {
        if (x.is_zero())
            throw zero_input_error("zero denominator in F_p ratio");
        den = den * x;
    }
    return num * inv(den);
}

inline Residue ratio(PrimeModulus p, std::span<const int> numerators,
                     std::span<const int> denominators) {
    std::vector<Residue> num, den;
    num.reserve(numerators.size());
    den.reserve(denominators.size());
    for (int x : numerators)
        num.emplace_back(x, p);
    for (int x : denominators)
        den.emplace_back(x, p);
    return ratio(p, std::span<const Residue>(num), std::span<const Residue>(den));
}

// The unique integer in {1, ..., p-1} representing a nonzero residue. Used
// as a monomial exponent, so 0 is rejected: an exponent 0 would collapse a
// coordinate.
inline int as_exponent(const Residue& a) {
    if (a.is_zero())
        throw zero_input_error("0 mod " + std::to_string(a.modulus().value()) +
                               " has no exponent representative");
    return a.value();
}

} // namespace esw
