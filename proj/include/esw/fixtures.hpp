#pragma once

/// Built-in fixtures with frozen expected values.
///
/// The two K3 fixtures come from holomorphic Z_3-actions whose models carry
/// symbolic ranks x, y, z that cancel out of every multiplicity; the
/// factories take the ranks as parameters (default 1) so tests can verify
/// that independence. The Z_5 fixture realizes the two-residual local model
/// whose perturbation exponents are (2,2) under one matching and (3,3) under
/// the other.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esw/congruence.hpp"
#include "esw/local_model.hpp"
#include "esw/reps.hpp"

namespace esw {

// Fermat quartic K3 with Z_3 permutation action: ind_{G_0} D = 2 C_0 and H
// is three copies of the trivial representation.
inline ModelSpec k3_fermat_z3(int x = 1, int y = 1, int z = 1) {
    PrimeModulus p(3);
    std::vector<SwValues> sw(1);
    sw[0].total = 1;
    sw[0].lifts = {1, std::nullopt, std::nullopt};
    return ModelSpec(p, WeightVector(p, {x + 2, y, z}), WeightVector(p, {x, y, z}),
                     /*h0=*/3, WeightVector(p, {0, 0, 0}),
                     /*r0=*/0, WeightVector(p, {0, 0, 0}), "k3-fermat-z3", std::move(sw));
}

// K3 with a holomorphic Z_3-action fixing only one direction of H^+, so
// b_+^G = 1 and the invariants are chamber-dependent. Two chamber value
// sets are carried; the congruence holds in both.
inline ModelSpec zhang_z3(int x = 1, int y = 1, int z = 1) {
    PrimeModulus p(3);
    std::vector<SwValues> sw(2);
    sw[0].chamber = "plus";
    sw[0].total = 1;
    sw[0].lifts = {std::nullopt, 1, 0};
    sw[1].chamber = "minus";
    sw[1].total = 1;
    sw[1].lifts = {std::nullopt, 0, -1};
    return ModelSpec(p, WeightVector(p, {x, y + 1, z + 1}), WeightVector(p, {x, y, z}),
                     /*h0=*/1, WeightVector(p, {0, 1, 0}),
                     /*r0=*/0, WeightVector(p, {0, 0, 0}), "zhang-z3", std::move(sw));
}

// Z_5 model whose j = 0 stratum cancels down to V_r = C_1 + C_4 against
// W_r = C_2 + C_3, the two-matching worked example. No SW values: the
// congruence stays underdetermined, only the multiplicity is pinned.
inline ModelSpec z5_local() {
    PrimeModulus p(5);
    return ModelSpec(p, WeightVector(p, {2, 1, 0, 0, 1}), WeightVector(p, {0, 0, 1, 1, 0}),
                     /*h0=*/3, WeightVector(p, {0, 0, 0, 0, 0}),
                     /*r0=*/0, WeightVector(p, {0, 0, 0, 0, 0}), "z5-local");
}

// Deliberately inconsistent variant: one extra weight-2 summand in W makes
// d(c) = -2 while d(c,G_0) stays 0, so cancellation at j = 0 must fail with
// a dimension mismatch. Test-only; not registered.
inline ModelSpec z5_local_corrupted() {
    PrimeModulus p(5);
    return ModelSpec(p, WeightVector(p, {2, 1, 0, 0, 1}), WeightVector(p, {0, 0, 2, 1, 0}),
                     /*h0=*/3, WeightVector(p, {0, 0, 0, 0, 0}),
                     /*r0=*/0, WeightVector(p, {0, 0, 0, 0, 0}), "z5-local-corrupted");
}

struct FixtureDef {
    std::string name;
    std::string title;
    ModelSpec model;
    int expected_d;
    std::vector<int> expected_d_lifts;
    std::vector<int> expected_multiplicities; // residues mod p
    // (chamber label or "" for an unlabeled set, expected verdict)
    std::vector<std::pair<std::string, Verdict>> expected_verdicts;
};

inline const std::vector<FixtureDef>& fixtures() {
    static const std::vector<FixtureDef> defs = {
        {"k3-fermat-z3",
         "Fermat quartic K3, Z_3 permutation action, b_+^G = 3",
         k3_fermat_z3(),
         0,
         {0, -4, -4},
         {1, 0, 0},
         {{"", Verdict::holds}}},
        {"zhang-z3",
         "K3 with holomorphic Z_3 action, b_+^G = 1, two chambers",
         zhang_z3(),
         0,
         {-2, 0, 0},
         {0, 1, 2},
         {{"plus", Verdict::holds}, {"minus", Verdict::holds}}},
        {"z5-local",
         "Z_5 model with residuals C_1+C_4 -> C_2+C_3 at the j = 0 stratum",
         z5_local(),
         0,
         {0, -2, -6, -6, -2},
         {4, 0, 0, 0, 0},
         {{"", Verdict::underdetermined}}},
    };
    return defs;
}

inline const FixtureDef* find_fixture(std::string_view name) {
    for (const FixtureDef& f : fixtures())
        if (f.name == name) return &f;
    return nullptr;
}

struct FixtureCheck {
    std::string name;
    bool ok;
    std::string detail;
};

// Recomputes every frozen expectation from the live code paths.
inline std::vector<FixtureCheck> check_fixtures() {
    std::vector<FixtureCheck> out;
    for (const FixtureDef& f : fixtures()) {
        FixtureCheck check{f.name, true, "all expected values reproduced"};
        auto fail = [&](const std::string& msg) {
            check.ok = false;
            check.detail = msg;
        };

        const int d = dim_d(f.model);
        if (d != f.expected_d)
            fail("d(c) = " + std::to_string(d) + ", expected " + std::to_string(f.expected_d));
        for (int j = 0; check.ok && j < f.model.p().value(); ++j) {
            const int dj = dim_d_lift(f.model, j);
            if (dj != f.expected_d_lifts[static_cast<size_t>(j)])
                fail("d(c,G_" + std::to_string(j) + ") = " + std::to_string(dj) +
                     ", expected " + std::to_string(f.expected_d_lifts[static_cast<size_t>(j)]));
        }
        for (int j = 0; check.ok && j < f.model.p().value(); ++j) {
            const MultiplicityResult m = multiplicity(f.model, j);
            if (m.value.value() != f.expected_multiplicities[static_cast<size_t>(j)])
                fail("m_" + std::to_string(j) + " = " + std::to_string(m.value.value()) +
                     ", expected " +
                     std::to_string(f.expected_multiplicities[static_cast<size_t>(j)]));
        }
        if (check.ok) {
            const auto reports = congruence_reports(f.model);
            for (const auto& [chamber, verdict] : f.expected_verdicts) {
                bool found = false;
                for (const CongruenceReport& rep : reports) {
                    const std::string label = rep.chamber.value_or("");
                    if (label != chamber)
                        continue;
                    found = true;
                    if (rep.verdict != verdict)
                        fail("chamber \"" + label + "\": verdict " +
                             std::string(to_string(rep.verdict)) + ", expected " +
                             std::string(to_string(verdict)));
                }
                if (!found)
                    fail("no congruence report for chamber \"" + chamber + "\"");
            }
        }
        out.push_back(std::move(check));
    }
    return out;
}

} // namespace esw
