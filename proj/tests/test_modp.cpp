#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "esw/modp.hpp"

using namespace esw;

namespace {

// independent oracle: exhaustive search over F_p
int brute_inverse(int a, int p) {
    for (int b = 1; b < p; ++b)
        if ((a * b) % p == 1) return b;
    return -1;
}

Residue ratio_of(PrimeModulus p, const std::vector<int>& num, const std::vector<int>& den) {
    return ratio(p, std::span<const int>(num), std::span<const int>(den));
}

} // namespace

TEST_CASE("prime modulus accepts odd primes only") {
    CHECK(PrimeModulus(3).value() == 3);
    CHECK(PrimeModulus(5).value() == 5);
    CHECK(PrimeModulus(13).value() == 13);
    CHECK_THROWS_AS(PrimeModulus(1), schema_error);
    CHECK_THROWS_AS(PrimeModulus(2), schema_error);
    CHECK_THROWS_AS(PrimeModulus(4), schema_error);
    CHECK_THROWS_AS(PrimeModulus(9), schema_error);
    CHECK_THROWS_AS(PrimeModulus(15), schema_error);
    CHECK_THROWS_AS(PrimeModulus(-7), schema_error);
}

TEST_CASE("residues normalize to {0..p-1}") {
    PrimeModulus p(5);
    CHECK(Residue(7, p).value() == 2);
    CHECK(Residue(-1, p).value() == 4);
    CHECK(Residue(-10, p).value() == 0);
    CHECK(Residue(0, p).is_zero());
    CHECK((Residue(4, p) + Residue(3, p)).value() == 2);
    CHECK((Residue(1, p) - Residue(3, p)).value() == 3);
    CHECK((-Residue(2, p)).value() == 3);
    CHECK_THROWS_AS(Residue(1, p) * Residue(1, PrimeModulus(3)), std::logic_error);
}

TEST_CASE("inverse matches exhaustive search") {
    CHECK(inv(Residue(1, PrimeModulus(7))).value() == 1);
    CHECK(inv(Residue(4, PrimeModulus(5))).value() == 4); // 4*4 = 16 = 1 mod 5
    CHECK(inv(Residue(2, PrimeModulus(3))).value() == 2); // 2*2 = 4 = 1 mod 3
    for (int pv : {3, 5, 7, 11, 13}) {
        PrimeModulus p(pv);
        for (int a = 1; a < pv; ++a)
            CHECK(inv(Residue(a, p)).value() == brute_inverse(a, pv));
    }
    CHECK_THROWS_AS(inv(Residue(0, PrimeModulus(5))), zero_input_error);
}

TEST_CASE("inverse is an involution and a right inverse") {
    for (int pv : {3, 5, 7, 11, 13}) {
        PrimeModulus p(pv);
        for (int a = 1; a < pv; ++a) {
            const Residue r(a, p);
            CHECK(inv(inv(r)) == r);
            CHECK((r * inv(r)).value() == 1);
        }
    }
}

TEST_CASE("ratio evaluates products of units") {
    PrimeModulus p5(5);
    CHECK(ratio_of(p5, {2, 3}, {1, 4}).value() == 4); // the worked F_5 value
    CHECK(ratio_of(p5, {}, {}).value() == 1);          // empty products
    CHECK(ratio_of(PrimeModulus(3), {1}, {2}).value() == 2);
    CHECK_THROWS_AS(ratio_of(p5, {1}, {0}), zero_input_error);
    CHECK_THROWS_AS(ratio_of(p5, {1}, {5}), zero_input_error); // 5 = 0 mod 5
}

TEST_CASE("ratio is permutation invariant and cancels common factors") {
    std::mt19937 rng(20260808);
    const std::array<int, 5> primes{3, 5, 7, 11, 13};
    for (int iter = 0; iter < 300; ++iter) {
        const int pv = primes[rng() % primes.size()];
        PrimeModulus p(pv);
        auto draw = [&](size_t len) {
            std::vector<int> v(len);
            for (auto& x : v)
                x = 1 + static_cast<int>(rng() % static_cast<unsigned>(pv - 1));
            return v;
        };
        std::vector<int> num = draw(rng() % 5), den = draw(rng() % 5);
        const Residue base = ratio_of(p, num, den);

        std::shuffle(num.begin(), num.end(), rng);
        std::shuffle(den.begin(), den.end(), rng);
        CHECK(ratio_of(p, num, den) == base);

        const int common = 1 + static_cast<int>(rng() % static_cast<unsigned>(pv - 1));
        num.push_back(common);
        den.push_back(common);
        CHECK(ratio_of(p, num, den) == base);
    }
}

TEST_CASE("as_exponent lifts units to {1..p-1}") {
    PrimeModulus p5(5);
    CHECK(as_exponent(Residue(2, p5)) == 2);
    CHECK(as_exponent(Residue(3, p5) * inv(Residue(4, p5))) == 2); // 3/4 = 2 mod 5
    CHECK(as_exponent(Residue(2, p5) * inv(Residue(4, p5))) == 3); // 2/4 = 3 mod 5
    CHECK_THROWS_AS(as_exponent(Residue(0, p5)), zero_input_error);
    for (int pv : {3, 5, 7, 11}) {
        PrimeModulus p(pv);
        for (int a = 1; a < 3 * pv; ++a) {
            if (a % pv == 0) continue;
            const int e = as_exponent(Residue(a, p));
            CHECK(e >= 1);
            CHECK(e <= pv - 1);
            CHECK((e - a) % pv == 0);
        }
    }
}
