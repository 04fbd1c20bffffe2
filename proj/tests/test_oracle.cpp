#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "esw/fixtures.hpp"
#include "esw/oracle.hpp"

using namespace esw;
using cplx = std::complex<double>;

namespace {

// f(z) = z^2 - conj(z) over p = 3: zeros at 0 and the three cube roots of
// unity, real Jacobian determinant 4|z|^2 - 1.
EquivariantSystem z2_zbar() {
    EquivariantSystem sys;
    sys.p = 3;
    sys.in_weights = {1};
    sys.out_weights = {2};
    Monomial sq{cplx(1, 0), {{2, 0}}};
    Monomial bar{cplx(-1, 0), {{0, 1}}};
    sys.equations = {{sq, bar}};
    sys.target = {cplx(0, 0)};
    return sys;
}

std::vector<cplx> targets(std::initializer_list<cplx> ts) { return ts; }

} // namespace

TEST_CASE("system validation catches non-equivariant monomials") {
    EquivariantSystem sys = z2_zbar();
    CHECK_NOTHROW(validate_system(sys)); // z^2 and conj(z) both have weight 2 mod 3
    sys.equations[0][1].powers = {{1, 0}}; // z has weight 1 != 2
    CHECK_THROWS_AS(validate_system(sys), oracle_error);

    EquivariantSystem bad = z2_zbar();
    bad.equations[0].push_back(Monomial{cplx(1, 0), {{0, 0}}}); // constant term
    CHECK_THROWS_AS(validate_system(bad), oracle_error);
}

TEST_CASE("split systems and exact enumeration") {
    PrimeModulus p5(5);

    const std::vector<int> e22{2, 2};
    const auto t11 = targets({cplx(1, 0), cplx(1, 0)});
    const EquivariantSystem s22 = split_system(p5, e22, t11);
    const auto zeros22 = enumerate_split_zeros(s22);
    CHECK(zeros22.size() == 4); // 2 x 2
    for (const SignedZero& z : zeros22)
        CHECK(z.sign == 1);
    CHECK(signed_total(zeros22) == 4);

    const std::vector<int> e33{3, 3};
    const auto s33 = split_system(p5, e33, t11);
    CHECK(enumerate_split_zeros(s33).size() == 9); // 3 x 3, and 9 = 4 mod 5
    CHECK(9 % 5 == 4);

    const std::vector<int> e1{1};
    const auto lin = split_system(p5, e1, targets({cplx(0.5, 0.25)}));
    const auto linz = enumerate_split_zeros(lin);
    REQUIRE(linz.size() == 1);
    CHECK(std::abs(linz[0].z[0] - cplx(0.5, 0.25)) < 1e-12);

    const std::vector<int> ebad{0};
    CHECK_THROWS_AS(split_system(p5, ebad, targets({cplx(1, 0)})), oracle_error);
    CHECK_THROWS_AS(split_system(p5, e1, targets({cplx(0, 0)})), zero_target_error);
}

TEST_CASE("split system from a matching carries the weight labels") {
    PrimeModulus p5(5);
    const auto t11 = targets({cplx(1, 0), cplx(0, 1)});

    const EquivariantSystem a = split_system(p5, Matching{{1, 2}, {4, 3}}, t11);
    CHECK(a.in_weights == std::vector<int>{1, 4});
    CHECK(a.out_weights == std::vector<int>{2, 3});
    CHECK(a.equations[0][0].powers[0].first == 2); // z^2
    CHECK(a.equations[1][0].powers[1].first == 2); // w^2

    const EquivariantSystem b = split_system(p5, Matching{{4, 2}, {1, 3}}, t11);
    CHECK(b.equations[0][0].powers[0].first == 3); // 2/4 = 3 mod 5
    CHECK(b.equations[1][0].powers[1].first == 3); // 3/1 = 3
    CHECK(enumerate_split_zeros(b).size() == 9);

    // generic split targets break the G-invariance of the zero set
    CHECK_THROWS_AS(require_invariant_zero_set(a), oracle_error);
}

TEST_CASE("newton agrees with exact enumeration on split systems") {
    PrimeModulus p5(5);
    const std::vector<int> e22{2, 2};
    const auto sys = split_system(p5, e22, targets({cplx(1, 0), cplx(1, 0)}));
    const auto exact = enumerate_split_zeros(sys);
    NewtonOptions opts;
    opts.max_seeds = 6000;
    const NewtonReport numeric = newton_zero_count(sys, opts);
    REQUIRE(numeric.zeros.size() == exact.size());
    for (size_t i = 0; i < exact.size(); ++i) {
        CHECK(numeric.zeros[i].sign == exact[i].sign);
        double d = 0;
        for (size_t k = 0; k < exact[i].z.size(); ++k)
            d = std::max(d, std::abs(numeric.zeros[i].z[k] - exact[i].z[k]));
        CHECK(d < 1e-6);
        CHECK(numeric.zeros[i].residual < 1e-10);
    }
}

TEST_CASE("newton finds the three free zeros of z^2 - conj(z)") {
    const EquivariantSystem sys = z2_zbar();
    const NewtonReport rep = newton_zero_count(sys); // origin excluded by default
    REQUIRE(rep.zeros.size() == 3);
    for (const SignedZero& z : rep.zeros) {
        CHECK(std::abs(std::abs(z.z[0]) - 1.0) < 1e-9); // on the unit circle
        CHECK(std::abs(detail::ipow(z.z[0], 3) - cplx(1, 0)) < 1e-9); // cube root of 1
        CHECK(z.sign == 1);
        CHECK(z.jacobian_det == doctest::Approx(3.0)); // 4|z|^2 - 1
    }

    const OrbitReport orbits = orbit_partition(rep.zeros, sys.in_weights, sys.p, 1e-6);
    REQUIRE(orbits.orbits.size() == 1);
    CHECK(orbits.orbits[0].size == 3);
    CHECK(orbits.free_count == 3);
    CHECK(orbits.fixed_count == 0);
    CHECK(orbits.free_count % 3 == 0);
}

TEST_CASE("the origin is a fixed zero with negative orientation for z^2 - conj(z)") {
    NewtonOptions opts;
    opts.exclude_origin = 0.0;
    const NewtonReport rep = newton_zero_count(z2_zbar(), opts);
    REQUIRE(rep.zeros.size() == 4);
    const std::vector<int> w1{1};
    const OrbitReport orbits = orbit_partition(rep.zeros, w1, 3, 1e-6);
    CHECK(orbits.orbits.size() == 2);
    CHECK(orbits.fixed_count == -1); // det = -1 at the origin
    CHECK(orbits.free_count == 3);
    CHECK(orbits.total == 2);
}

TEST_CASE("no zeros in the box gives an empty list") {
    PrimeModulus p5(5);
    const std::vector<int> e1{1};
    const auto far = split_system(p5, e1, targets({cplx(10, 0)}));
    CHECK(newton_zero_count(far).zeros.empty());
}

TEST_CASE("orbit partition under the trivial action fixes everything") {
    PrimeModulus p5(5);
    const std::vector<int> e22{2, 2};
    const auto sys = split_system(p5, e22, targets({cplx(1, 0), cplx(1, 0)}));
    const auto zeros = enumerate_split_zeros(sys);
    const std::vector<int> trivial{0, 0};
    const OrbitReport rep = orbit_partition(zeros, trivial, 5, 1e-6);
    CHECK(rep.orbits.size() == 4);
    CHECK(rep.fixed_count == 4);
    CHECK(rep.free_count == 0);
}

TEST_CASE("missing orbit members are detected") {
    const NewtonReport rep = newton_zero_count(z2_zbar());
    REQUIRE(rep.zeros.size() == 3);
    std::vector<SignedZero> truncated(rep.zeros.begin(), rep.zeros.end() - 1);
    const std::vector<int> w1{1};
    CHECK_THROWS_AS(orbit_partition(truncated, w1, 3, 1e-6), orbit_inconsistency_error);
}

TEST_CASE("local degree reproduces the worked multiplicities") {
    PrimeModulus p5(5);
    const LocalDegreeResult a = local_degree(p5, Matching{{1, 2}, {4, 3}});
    CHECK(a.exponents == std::vector<int>{2, 2});
    CHECK(a.degree == 4);
    CHECK(a.residue.value() == 4);

    const LocalDegreeResult b = local_degree(p5, Matching{{4, 2}, {1, 3}});
    CHECK(b.exponents == std::vector<int>{3, 3});
    CHECK(b.degree == 9);
    CHECK(b.residue.value() == 4);

    const LocalDegreeResult empty = local_degree(p5, Matching{});
    CHECK(empty.degree == 1);
    CHECK(empty.residue.value() == 1);

    NewtonOptions opts;
    opts.max_seeds = 6000;
    const LocalDegreeResult checked = local_degree(p5, Matching{{1, 2}, {4, 3}}, true, opts);
    CHECK(checked.newton_checked);
    CHECK(checked.newton_agrees);
    CHECK(checked.newton_count == 4);
    CHECK(checked.max_location_error < 1e-6);
}

TEST_CASE("random systems are deterministic and drawn from the legal pool") {
    PrimeModulus p3(3);
    const std::vector<int> win{1}, wout{2};
    const EquivariantSystem a = random_equivariant_system(42, p3, win, wout, 2);
    const EquivariantSystem b = random_equivariant_system(42, p3, win, wout, 2);
    REQUIRE(a.equations[0].size() == b.equations[0].size());
    for (size_t t = 0; t < a.equations[0].size(); ++t) {
        CHECK(a.equations[0][t].coeff == b.equations[0][t].coeff);
        CHECK(a.equations[0][t].powers == b.equations[0][t].powers);
    }

    // degree <= 2 with weight 1 -> 2 admits only z^2 and conj(z)
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        const EquivariantSystem sys = random_equivariant_system(seed, p3, win, wout, 2);
        for (const Monomial& m : sys.equations[0]) {
            const bool is_z2 = m.powers[0] == std::pair<int, int>{2, 0};
            const bool is_zbar = m.powers[0] == std::pair<int, int>{0, 1};
            CHECK((is_z2 || is_zbar));
        }
        CHECK_NOTHROW(validate_system(sys));
    }

    // weight 1 -> 0 needs alpha - beta = 0 mod 3, impossible at degree <= 1
    const std::vector<int> wzero{0};
    CHECK_THROWS_AS(random_equivariant_system(1, p3, win, wzero, 1),
                    infeasible_weights_error);
}

TEST_CASE("analytic Jacobian matches finite differences") {
    std::mt19937 rng(2024);
    PrimeModulus p5(5);
    for (int iter = 0; iter < 25; ++iter) {
        const int n = 1 + static_cast<int>(rng() % 2);
        std::vector<int> win(static_cast<size_t>(n)), wout(static_cast<size_t>(n));
        for (auto& w : win)
            w = 1 + static_cast<int>(rng() % 4);
        for (auto& w : wout)
            w = 1 + static_cast<int>(rng() % 4);
        const EquivariantSystem sys =
            random_equivariant_system(1000 + static_cast<uint64_t>(iter), p5, win, wout, 4);
        std::vector<cplx> z(static_cast<size_t>(n));
        for (auto& c : z)
            c = {2.0 * (rng() % 1000) / 1000.0 - 1.0, 2.0 * (rng() % 1000) / 1000.0 - 1.0};
        CHECK(jacobian_fd_max_rel_error(sys, z, 1e-6) < 1e-4);
    }
}

TEST_CASE("holomorphic zeros are positively oriented") {
    std::mt19937 rng(99);
    PrimeModulus p7(7);
    for (int iter = 0; iter < 10; ++iter) {
        const std::vector<int> exps{1 + static_cast<int>(rng() % 4),
                                    1 + static_cast<int>(rng() % 4)};
        const auto sys = split_system(
            p7, exps,
            targets({std::polar(0.5 + (rng() % 100) / 100.0, (rng() % 628) / 100.0),
                     std::polar(0.5 + (rng() % 100) / 100.0, (rng() % 628) / 100.0)}));
        NewtonOptions opts;
        opts.max_seeds = 4000;
        for (const SignedZero& z : newton_zero_count(sys, opts).zeros) {
            CHECK(z.sign == 1);
            CHECK(z.jacobian_det > 0.0);
        }
    }
}

TEST_CASE("free divisibility on a small batch") {
    NewtonOptions opts;
    opts.grid = 9;
    opts.max_seeds = 3000;
    const FreeCheckReport rep = free_divisibility_check(PrimeModulus(3), 10, 4, opts, 7);
    CHECK(rep.trials == 10);
    CHECK(rep.all_pass());
    for (const FreeTrial& t : rep.results) {
        CHECK(t.pass);
        CHECK(t.free_count % 3 == 0);
    }
}

TEST_CASE("zero-dimensional systems count one empty zero") {
    PrimeModulus p3(3);
    const auto sys = split_system(p3, std::vector<int>{}, std::vector<cplx>{});
    const auto exact = enumerate_split_zeros(sys);
    REQUIRE(exact.size() == 1);
    CHECK(exact[0].sign == 1);
    const NewtonReport numeric = newton_zero_count(sys);
    REQUIRE(numeric.zeros.size() == 1);
    CHECK(numeric.zeros[0].sign == 1);
}
