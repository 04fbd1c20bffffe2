#pragma once

/// Assembles the mod-p congruence
///     SW(X,c) == sum_j m_j * SW(X,c,G_j)   (mod p)
/// from the computed multiplicities and the supplied SW values, and renders
/// a verdict. SW values are inputs; lifts with m_j = 0 need none.

#include <optional>
#include <string>
#include <vector>

#include "esw/errors.hpp"
#include "esw/local_model.hpp"
#include "esw/modp.hpp"
#include "esw/reps.hpp"

namespace esw {

enum class Verdict { holds, fails, underdetermined };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        default: return "underdetermined";
    }
}

struct CongruenceReport {
    PrimeModulus p;
    std::vector<MultiplicityResult> multiplicities; // one per lift
    std::optional<Residue> lhs;  // SW(X,c) mod p
    std::optional<Residue> rhs;  // sum over lifts with m_j != 0
    Verdict verdict;
    std::optional<std::string> chamber;
    std::vector<int> missing;    // lifts with m_j != 0 but no SW value
    bool chamber_dependent;      // b_+^G = 1: values hold per chamber only
};

inline CongruenceReport congruence_report(const ModelSpec& m, const SwValues& values) {
    const int p = m.p().value();
    CongruenceReport rep{m.p(), {}, {}, {}, Verdict::underdetermined,
                         values.chamber, {}, m.h0() == 1};

    for (int j = 0; j < p; ++j)
        rep.multiplicities.push_back(multiplicity(m, j));

    if (values.total)
        rep.lhs = Residue(*values.total, m.p());

    Residue sum(0, m.p());
    bool complete = true;
    for (int j = 0; j < p; ++j) {
        const MultiplicityResult& mult = rep.multiplicities[static_cast<size_t>(j)];
        if (mult.value.is_zero())
            continue;
        const std::optional<int>& sw = values.lifts.empty()
                                           ? std::optional<int>{}
                                           : values.lifts[static_cast<size_t>(j)];
        if (!sw) {
            complete = false;
            rep.missing.push_back(j);
            continue;
        }
        sum = sum + mult.value * Residue(*sw, m.p());
    }
    if (complete)
        rep.rhs = sum;

    if (rep.lhs && rep.rhs)
        rep.verdict = (*rep.lhs == *rep.rhs) ? Verdict::holds : Verdict::fails;
    else
        rep.verdict = Verdict::underdetermined;
    return rep;
}

// One report per supplied value set; a model without SW values yields a
// single fully-underdetermined report.
inline std::vector<CongruenceReport> congruence_reports(const ModelSpec& m) {
    std::vector<CongruenceReport> reports;
    if (m.sw_sets().empty()) {
        SwValues none;
        none.lifts.assign(static_cast<size_t>(m.p().value()), std::nullopt);
        reports.push_back(congruence_report(m, none));
    } else {
        for (const SwValues& set : m.sw_sets())
            reports.push_back(congruence_report(m, set));
    }
    return reports;
}

inline const SwValues* find_chamber(const ModelSpec& m, const std::string& name) {
    for (const SwValues& set : m.sw_sets())
        if (set.chamber && *set.chamber == name) return &set;
    return nullptr;
}

// The congruence rearranged for a single unknown. The result is a residue:
// it pins the missing value mod p only.
struct SolvedValue {
    enum class Kind { total, lift };
    Kind kind;
    int lift = -1; // meaningful when kind == lift
    Residue value;
    std::string provenance = "determined mod p only";
};

inline SolvedValue solve_missing(const ModelSpec& m, const SwValues& values) {
    const int p = m.p().value();
    std::vector<MultiplicityResult> mults;
    for (int j = 0; j < p; ++j)
        mults.push_back(multiplicity(m, j));

    std::vector<int> missing_lifts;
    for (int j = 0; j < p; ++j) {
        if (mults[static_cast<size_t>(j)].value.is_zero())
            continue;
        const bool have = !values.lifts.empty() && values.lifts[static_cast<size_t>(j)].has_value();
        if (!have)
            missing_lifts.push_back(j);
    }
    const int unknowns = static_cast<int>(missing_lifts.size()) + (values.total ? 0 : 1);
    if (unknowns == 0)
        throw overdetermined_error("every SW value is present; nothing to solve for");
    if (unknowns > 1)
        throw underdetermined_error("more than one SW value is missing; cannot solve");

    if (!values.total) {
        // rhs is fully known.
        Residue sum(0, m.p());
        for (int j = 0; j < p; ++j) {
            const Residue& mj = mults[static_cast<size_t>(j)].value;
            if (!mj.is_zero())
                sum = sum + mj * Residue(*values.lifts[static_cast<size_t>(j)], m.p());
        }
        return SolvedValue{SolvedValue::Kind::total, -1, sum};
    }

    const int target = missing_lifts.front();
    Residue rest(0, m.p());
    for (int j = 0; j < p; ++j) {
        if (j == target)
            continue;
        const Residue& mj = mults[static_cast<size_t>(j)].value;
        if (!mj.is_zero())
            rest = rest + mj * Residue(*values.lifts[static_cast<size_t>(j)], m.p());
    }
    const Residue lhs(*values.total, m.p());
    const Residue coeff = mults[static_cast<size_t>(target)].value; // nonzero, hence a unit
    return SolvedValue{SolvedValue::Kind::lift, target, (lhs - rest) * inv(coeff)};
}

} // namespace esw
