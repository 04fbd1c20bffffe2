#pragma once

/// Command-line front end:
///   equivariant-sw <dims|mult|congruence|oracle|fixtures|check-fixtures>
///
/// Model arguments accept a file path or a built-in fixture name (with or
/// without a "fixtures/" prefix). Every command takes --json for a
/// machine-readable document carrying the same content as the human table.
///
/// Exit codes: 0 ok, 2 schema violation, 3 out-of-scope dimension,
/// 4 congruence failure, 5 oracle failure. No color is ever emitted, so
/// NO_COLOR needs no special handling.

#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "esw/congruence.hpp"
#include "esw/errors.hpp"
#include "esw/fixtures.hpp"
#include "esw/local_model.hpp"
#include "esw/model_io.hpp"
#include "esw/oracle.hpp"
#include "esw/reps.hpp"

namespace esw {

constexpr int exit_ok = 0;
constexpr int exit_schema = 2;
constexpr int exit_dimension = 3;
constexpr int exit_congruence = 4;
constexpr int exit_oracle = 5;

namespace cli_detail {

inline ModelSpec resolve_model(const std::string& ref) {
    if (std::filesystem::exists(ref))
        return load_model_file(ref);
    std::string name = ref;
    if (name.rfind("fixtures/", 0) == 0)
        name = name.substr(9);
    if (name.size() > 5 && name.substr(name.size() - 5) == ".json")
        name = name.substr(0, name.size() - 5);
    if (const FixtureDef* f = find_fixture(name))
        return f->model;
    throw schema_error("no such model file or built-in fixture: " + ref);
}

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::warn: return "warn";
        default: return "fail";
    }
}

inline const char* to_string(MultiplicityReason r) {
    return r == MultiplicityReason::computed ? "computed" : "negative-dimension-zero";
}

inline nlohmann::json hypotheses_json(const ValidationReport& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const HypothesisCheck& c : v.checks)
        arr.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    return arr;
}

inline nlohmann::json strata_json(const LiftIndexReport& rep) {
    nlohmann::json arr = nlohmann::json::array();
    for (const StratumInfo& s : rep.strata) {
        nlohmann::json e = {{"j", s.j}, {"index", s.index}, {"d_lift", s.d_lift},
                            {"empty", s.empty}};
        e["dim"] = s.dim ? nlohmann::json(*s.dim) : nlohmann::json(nullptr);
        arr.push_back(std::move(e));
    }
    return arr;
}

inline nlohmann::json multiplicity_json(const MultiplicityResult& m) {
    return {{"j", m.j},
            {"value", m.value.value()},
            {"reason", to_string(m.reason)},
            {"exponents", m.exponents},
            {"empty_stratum", m.empty_stratum}};
}

inline nlohmann::json congruence_json(const CongruenceReport& rep,
                                      const std::optional<SolvedValue>& solved) {
    nlohmann::json j;
    j["p"] = rep.p.value();
    j["chamber"] = rep.chamber ? nlohmann::json(*rep.chamber) : nlohmann::json(nullptr);
    j["chamber_dependent"] = rep.chamber_dependent;
    j["lhs"] = rep.lhs ? nlohmann::json(rep.lhs->value()) : nlohmann::json(nullptr);
    j["rhs"] = rep.rhs ? nlohmann::json(rep.rhs->value()) : nlohmann::json(nullptr);
    j["verdict"] = to_string(rep.verdict);
    j["missing"] = rep.missing;
    nlohmann::json mults = nlohmann::json::array();
    for (const MultiplicityResult& m : rep.multiplicities)
        mults.push_back(multiplicity_json(m));
    j["multiplicities"] = mults;
    if (solved) {
        nlohmann::json s;
        s["kind"] = solved->kind == SolvedValue::Kind::total ? "total" : "lift";
        if (solved->kind == SolvedValue::Kind::lift)
            s["lift"] = solved->lift;
        s["value"] = solved->value.value();
        s["note"] = solved->provenance;
        j["solved"] = s;
    }
    return j;
}

inline nlohmann::json zero_json(const SignedZero& z) {
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& c : z.z)
        coords.push_back({c.real(), c.imag()});
    return {{"z", coords},
            {"sign", z.sign},
            {"residual", z.residual},
            {"jacobian_det", z.jacobian_det}};
}

inline nlohmann::json orbit_json(const OrbitReport& rep) {
    nlohmann::json orbits = nlohmann::json::array();
    for (const Orbit& o : rep.orbits)
        orbits.push_back({{"representative", o.representative},
                          {"size", o.size},
                          {"total_sign", o.total_sign}});
    return {{"orbits", orbits},
            {"fixed_count", rep.fixed_count},
            {"free_count", rep.free_count},
            {"total", rep.total}};
}

inline std::string exponent_list(const std::vector<int>& e) {
    std::string s = "(";
    for (size_t i = 0; i < e.size(); ++i)
        s += (i ? ", " : "") + std::to_string(e[i]);
    return s + ")";
}

struct NewtonFlags {
    double box = 2.0;
    int grid = 21;
    long max_seeds = 20000;
    double tol_newton = 1e-10;
    double tol_cluster = 1e-6;
    double exclude_origin = -1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--box", box, "search polydisc radius (default 2)");
        cmd->add_option("--grid", grid, "seed points per real axis (default 21)");
        cmd->add_option("--max-seeds", max_seeds, "cap on total seed count");
        cmd->add_option("--tol-newton", tol_newton, "Newton residual tolerance");
        cmd->add_option("--tol-cluster", tol_cluster, "dedup / orbit matching radius");
        cmd->add_option("--exclude-origin", exclude_origin,
                        "origin exclusion radius (default 1e-3 * box)");
    }

    NewtonOptions options() const {
        NewtonOptions o;
        o.box = box;
        o.grid = grid;
        o.max_seeds = max_seeds;
        o.tol_newton = tol_newton;
        o.tol_cluster = tol_cluster;
        o.exclude_origin = exclude_origin;
        return o;
    }
};

inline int cmd_dims(const ModelSpec& model, bool as_json, std::ostream& out) {
    const ValidationReport val = validate(model);
    const LiftIndexReport rep = fixed_strata(model);
    if (as_json) {
        nlohmann::json j;
        j["label"] = model.label();
        j["p"] = model.p().value();
        j["d"] = rep.d;
        j["b_plus"] = model.b_plus();
        j["b_plus_G"] = model.h0();
        j["chamber_mode"] = val.chamber_mode;
        j["hypotheses"] = hypotheses_json(val);
        j["strata"] = strata_json(rep);
        out << j.dump(2) << "\n";
        return exit_ok;
    }
    out << "model: " << model.label() << "  (p = " << model.p().value() << ")\n";
    out << "d(c) = " << rep.d << ", b_+ = " << model.b_plus()
        << ", b_+^G = " << model.h0() << "\n";
    out << "hypotheses:\n";
    for (const HypothesisCheck& c : val.checks)
        out << "  [" << to_string(c.status) << "] " << std::left << std::setw(26) << c.name
            << " " << c.detail << "\n";
    out << "strata:\n";
    out << "  j  index  d(c,G_j)  stratum\n";
    for (const StratumInfo& s : rep.strata) {
        out << "  " << s.j << "  " << std::setw(5) << s.index << "  " << std::setw(8)
            << s.d_lift << "  ";
        if (s.empty)
            out << "empty\n";
        else
            out << "dim " << *s.dim << "\n";
    }
    return exit_ok;
}

inline int cmd_mult(const ModelSpec& model, int lift, bool enumerate_matchings, bool as_json,
                    std::ostream& out) {
    std::vector<MultiplicityResult> mults;
    if (lift >= 0) {
        mults.push_back(multiplicity(model, lift));
    } else {
        for (int j = 0; j < model.p().value(); ++j)
            mults.push_back(multiplicity(model, j));
    }

    // matching enumeration per requested stratum with d(c,G_j) = 0
    struct MatchingRow {
        int j;
        std::vector<std::pair<Matching, int>> values; // matching -> residue
        bool agree;
        bool skipped;
    };
    std::vector<MatchingRow> matchings;
    if (enumerate_matchings) {
        for (const MultiplicityResult& m : mults) {
            if (m.reason != MultiplicityReason::computed)
                continue;
            const CancellationData data =
                cancel(detail::local_model_unchecked(model, m.j));
            MatchingRow row{m.j, {}, true, false};
            if (data.residual_in.size() > 6) {
                row.skipped = true;
            } else {
                for (const Matching& match : all_matchings(data)) {
                    Residue v(1, model.p());
                    for (int e : psi_exponents(data, match))
                        v = v * Residue(e, model.p());
                    row.values.emplace_back(match, v.value());
                    if (v.value() != m.value.value())
                        row.agree = false;
                }
            }
            matchings.push_back(std::move(row));
        }
    }

    if (as_json) {
        nlohmann::json j;
        j["label"] = model.label();
        j["p"] = model.p().value();
        nlohmann::json arr = nlohmann::json::array();
        for (const MultiplicityResult& m : mults)
            arr.push_back(multiplicity_json(m));
        j["multiplicities"] = arr;
        if (enumerate_matchings) {
            nlohmann::json rows = nlohmann::json::array();
            for (const MatchingRow& row : matchings) {
                nlohmann::json r;
                r["j"] = row.j;
                r["agree"] = row.agree;
                r["skipped"] = row.skipped;
                nlohmann::json vals = nlohmann::json::array();
                for (const auto& [match, value] : row.values) {
                    nlohmann::json pairs = nlohmann::json::array();
                    for (const auto& [a, b] : match)
                        pairs.push_back({a, b});
                    vals.push_back({{"pairs", pairs}, {"value", value}});
                }
                r["matchings"] = vals;
                rows.push_back(std::move(r));
            }
            j["all_matchings"] = rows;
        }
        out << j.dump(2) << "\n";
        return exit_ok;
    }

    out << "model: " << model.label() << "  (p = " << model.p().value() << ")\n";
    out << "  j  m_j  reason\n";
    for (const MultiplicityResult& m : mults) {
        out << "  " << m.j << "  " << std::setw(3) << m.value.value() << "  "
            << to_string(m.reason);
        if (m.reason == MultiplicityReason::computed)
            out << "  exponents " << exponent_list(m.exponents);
        if (m.empty_stratum)
            out << "  (empty stratum)";
        out << "\n";
    }
    for (const MatchingRow& row : matchings) {
        if (row.skipped) {
            out << "matchings j = " << row.j << ": skipped (residual size > 6)\n";
            continue;
        }
        out << "matchings j = " << row.j << " (" << row.values.size() << " total, "
            << (row.agree ? "all agree" : "DISAGREE") << "):\n";
        for (const auto& [match, value] : row.values) {
            out << "  ";
            for (size_t k = 0; k < match.size(); ++k)
                out << (k ? ", " : "") << match[k].first << "->" << match[k].second;
            if (match.empty())
                out << "(empty)";
            out << "  =>  " << value << "\n";
        }
    }
    return exit_ok;
}

inline int cmd_congruence(const ModelSpec& model, const std::string& chamber, bool as_json,
                          std::ostream& out) {
    std::vector<const SwValues*> sets;
    SwValues empty;
    empty.lifts.assign(static_cast<size_t>(model.p().value()), std::nullopt);
    if (!chamber.empty()) {
        const SwValues* set = find_chamber(model, chamber);
        if (!set)
            throw schema_error("model carries no value set labeled \"" + chamber + "\"");
        sets.push_back(set);
    } else if (model.sw_sets().empty()) {
        sets.push_back(&empty);
    } else {
        for (const SwValues& s : model.sw_sets())
            sets.push_back(&s);
    }

    bool any_fail = false;
    nlohmann::json reports = nlohmann::json::array();
    std::ostringstream text;
    for (const SwValues* set : sets) {
        const CongruenceReport rep = congruence_report(model, *set);
        any_fail = any_fail || rep.verdict == Verdict::fails;
        std::optional<SolvedValue> solved;
        if (rep.verdict == Verdict::underdetermined) {
            try {
                solved = solve_missing(model, *set);
            } catch (const error&) {
                // zero or several unknowns: nothing to solve
            }
        }
        reports.push_back(congruence_json(rep, solved));

        if (rep.chamber)
            text << "[chamber " << *rep.chamber << "]\n";
        text << "  lhs: SW(X,c) mod " << rep.p.value() << " = "
             << (rep.lhs ? std::to_string(rep.lhs->value()) : "missing") << "\n";
        text << "  rhs: sum m_j SW(X,c,G_j) mod " << rep.p.value() << " = "
             << (rep.rhs ? std::to_string(rep.rhs->value()) : "missing");
        text << "   [m = (";
        for (size_t j = 0; j < rep.multiplicities.size(); ++j)
            text << (j ? ", " : "") << rep.multiplicities[j].value.value();
        text << ")]\n";
        if (!rep.missing.empty()) {
            text << "  missing SW values for lifts:";
            for (int j : rep.missing)
                text << " G_" << j;
            text << "\n";
        }
        if (solved) {
            text << "  solvable: ";
            if (solved->kind == SolvedValue::Kind::total)
                text << "SW(X,c)";
            else
                text << "SW(X,c,G_" << solved->lift << ")";
            text << " = " << solved->value.value() << " (" << solved->provenance << ")\n";
        }
        text << "  verdict: " << to_string(rep.verdict) << "\n";
    }

    if (as_json) {
        nlohmann::json j;
        j["label"] = model.label();
        j["p"] = model.p().value();
        j["chamber_dependent"] = model.h0() == 1;
        j["reports"] = reports;
        out << j.dump(2) << "\n";
    } else {
        out << "model: " << model.label() << "  (p = " << model.p().value() << ")\n";
        if (model.h0() == 1)
            out << "note: b_+^G = 1, invariant values depend on chambers\n";
        out << text.str();
    }
    return any_fail ? exit_congruence : exit_ok;
}

inline int cmd_local_degree(const ModelSpec& model, int lift, bool with_newton,
                            const NewtonOptions& opts, bool as_json, std::ostream& out) {
    const MultiplicityResult m = multiplicity(model, lift);
    if (m.reason == MultiplicityReason::negative_dimension_zero) {
        if (as_json)
            out << nlohmann::json({{"label", model.label()},
                                   {"lift", lift},
                                   {"multiplicity", 0},
                                   {"note", "d(c,G_j) < 0: stratum perturbed away, no local degree"}})
                       .dump(2)
                << "\n";
        else
            out << "lift " << lift << ": d(c,G_" << lift
                << ") < 0, multiplicity 0 by fiat, no local degree to compare\n";
        return exit_ok;
    }

    const CancellationData data = cancel(detail::local_model_unchecked(model, lift));
    const Matching matching = canonical_matching(data);
    const LocalDegreeResult deg = local_degree(model.p(), matching, with_newton, opts);
    const bool match = deg.residue == m.value;
    const bool ok = match && (!with_newton || (deg.newton_agrees &&
                                               deg.newton_count == deg.degree));

    if (as_json) {
        nlohmann::json j;
        j["label"] = model.label();
        j["p"] = model.p().value();
        j["lift"] = lift;
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& [a, b] : matching)
            pairs.push_back({a, b});
        j["matching"] = pairs;
        j["exponents"] = deg.exponents;
        j["degree"] = deg.degree;
        j["residue"] = deg.residue.value();
        j["multiplicity"] = m.value.value();
        j["match"] = match;
        if (with_newton)
            j["newton"] = {{"count", deg.newton_count},
                           {"agrees", deg.newton_agrees},
                           {"max_location_error", deg.max_location_error}};
        out << j.dump(2) << "\n";
    } else {
        out << "model: " << model.label() << ", lift " << lift << "  (p = "
            << model.p().value() << ")\n";
        out << "matching: ";
        for (size_t k = 0; k < matching.size(); ++k)
            out << (k ? ", " : "") << matching[k].first << "->" << matching[k].second;
        if (matching.empty())
            out << "(empty)";
        out << "\nexponents: " << exponent_list(deg.exponents) << "\n";
        out << "degree: " << deg.degree << ", residue mod " << model.p().value() << ": "
            << deg.residue.value() << "\n";
        out << "multiplicity m_" << lift << " = " << m.value.value() << "  -> "
            << (match ? "agreement" : "MISMATCH") << "\n";
        if (with_newton)
            out << "newton: signed count " << deg.newton_count << ", "
                << (deg.newton_agrees ? "agrees" : "DISAGREES")
                << " (max location error " << std::scientific << std::setprecision(2)
                << deg.max_location_error << ")\n";
    }
    return ok ? exit_ok : exit_oracle;
}

inline int cmd_free_check(int p_raw, int trials, int degree, uint64_t seed,
                          const NewtonOptions& opts, bool as_json, std::ostream& out) {
    PrimeModulus p(p_raw);
    const FreeCheckReport rep = free_divisibility_check(p, trials, degree, opts, seed);
    if (as_json) {
        nlohmann::json j;
        j["p"] = rep.p;
        j["trials"] = rep.trials;
        j["passes"] = rep.passes;
        j["all_pass"] = rep.all_pass();
        nlohmann::json arr = nlohmann::json::array();
        for (const FreeTrial& t : rep.results)
            arr.push_back({{"seed", t.seed},
                           {"dim", t.dim},
                           {"in_weights", t.in_weights},
                           {"out_weights", t.out_weights},
                           {"attempts", t.attempts},
                           {"zeros", t.zeros},
                           {"orbits", t.orbits},
                           {"free_count", t.free_count},
                           {"pass", t.pass},
                           {"note", t.note}});
        j["results"] = arr;
        out << j.dump(2) << "\n";
    } else {
        out << "free divisibility: p = " << rep.p << ", trials = " << rep.trials
            << ", degree <= " << degree << ", base seed " << seed << "\n";
        out << "passes: " << rep.passes << "/" << rep.trials << "\n";
        for (const FreeTrial& t : rep.results)
            if (!t.pass)
                out << "  FAIL seed " << t.seed << " dim " << t.dim << ": " << t.note << "\n";
    }
    return rep.all_pass() ? exit_ok : exit_oracle;
}

inline int cmd_newton(const EquivariantSystem& sys, const NewtonOptions& opts, bool as_json,
                      std::ostream& out) {
    NewtonReport rep = newton_zero_count(sys, opts);
    std::optional<OrbitReport> orbits;
    std::string orbit_note;
    try {
        require_invariant_zero_set(sys);
        complete_orbits(sys, rep, opts);
        orbits = orbit_partition(rep.zeros, sys.in_weights, sys.p, opts.tol_cluster);
    } catch (const oracle_error& e) {
        orbit_note = e.what();
    }

    if (as_json) {
        nlohmann::json j;
        j["p"] = sys.p;
        j["dim"] = sys.dim();
        j["seeds"] = rep.seeds;
        j["converged"] = rep.converged;
        j["near_singular"] = rep.near_singular;
        j["count"] = rep.zeros.size();
        j["signed_total"] = signed_total(rep.zeros);
        nlohmann::json zeros = nlohmann::json::array();
        for (const SignedZero& z : rep.zeros)
            zeros.push_back(zero_json(z));
        j["zeros"] = zeros;
        if (orbits)
            j["orbit_report"] = orbit_json(*orbits);
        else
            j["orbit_report_skipped"] = orbit_note;
        out << j.dump(2) << "\n";
    } else {
        out << "system: p = " << sys.p << ", dim " << sys.dim() << ", seeds " << rep.seeds
            << ", converged " << rep.converged << "\n";
        out << "zeros: " << rep.zeros.size() << "  (signed total " << signed_total(rep.zeros)
            << ")\n";
        out << std::fixed << std::setprecision(6);
        for (size_t i = 0; i < rep.zeros.size(); ++i) {
            out << "  " << i << ": z = (";
            for (size_t k = 0; k < rep.zeros[i].z.size(); ++k) {
                const auto& c = rep.zeros[i].z[k];
                out << (k ? ", " : "") << c.real() << (c.imag() < 0 ? " - " : " + ")
                    << std::abs(c.imag()) << "i";
            }
            out << ")  sign " << (rep.zeros[i].sign > 0 ? "+1" : "-1") << "\n";
        }
        if (rep.near_singular > 0)
            out << "warning: " << rep.near_singular << " near-singular zero(s)\n";
        if (orbits) {
            int free_orbits = 0, fixed_orbits = 0;
            for (const Orbit& o : orbits->orbits)
                (o.size == 1 ? fixed_orbits : free_orbits)++;
            out << "orbits: " << fixed_orbits << " fixed, " << free_orbits
                << " free; fixed signed count " << orbits->fixed_count
                << ", free signed count " << orbits->free_count << ", total "
                << orbits->total << "\n";
        } else {
            out << "orbit analysis skipped: " << orbit_note << "\n";
        }
    }
    return exit_ok;
}

inline int cmd_fixtures_list(bool as_json, std::ostream& out) {
    if (as_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const FixtureDef& f : fixtures())
            arr.push_back({{"name", f.name}, {"title", f.title}});
        out << nlohmann::json({{"fixtures", arr}}).dump(2) << "\n";
    } else {
        for (const FixtureDef& f : fixtures())
            out << f.name << "  -  " << f.title << "\n";
    }
    return exit_ok;
}

inline int cmd_fixtures_show(const std::string& name, std::ostream& out) {
    const FixtureDef* f = find_fixture(name);
    if (!f)
        throw schema_error("unknown fixture: " + name);
    out << model_to_json(f->model).dump(2) << "\n";
    return exit_ok;
}

inline int cmd_check_fixtures(bool as_json, std::ostream& out) {
    const std::vector<FixtureCheck> checks = esw::check_fixtures();
    bool ok = true;
    for (const FixtureCheck& c : checks)
        ok = ok && c.ok;
    if (as_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const FixtureCheck& c : checks)
            arr.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        out << nlohmann::json({{"ok", ok}, {"checks", arr}}).dump(2) << "\n";
    } else {
        for (const FixtureCheck& c : checks)
            out << c.name << ": " << (c.ok ? "ok" : "MISMATCH") << " (" << c.detail << ")\n";
    }
    return ok ? exit_ok : exit_oracle;
}

} // namespace cli_detail

// Entry point shared by the binary and the tests; args excludes argv[0].
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"equivariant Seiberg-Witten mod-p congruence calculator"};
    app.name("equivariant-sw");
    app.require_subcommand(1);

    std::string model_ref, chamber, system_path, fixture_name;
    int lift = -1, p_raw = 3, trials = 100, degree = 4;
    uint64_t seed = 1;
    bool as_json = false, all_matchings = false, with_newton = false;
    cli_detail::NewtonFlags newton_flags;

    CLI::App* dims = app.add_subcommand("dims", "virtual dimensions and hypothesis checklist");
    dims->add_option("model", model_ref, "model file or fixture name")->required();
    dims->add_flag("--json", as_json, "machine-readable output");

    CLI::App* mult = app.add_subcommand("mult", "stratum multiplicities mod p");
    mult->add_option("model", model_ref, "model file or fixture name")->required();
    mult->add_option("--lift", lift, "restrict to one lift j");
    mult->add_flag("--all-matchings", all_matchings,
                   "enumerate every matching (residual size <= 6) and check agreement");
    mult->add_flag("--json", as_json, "machine-readable output");

    CLI::App* cong = app.add_subcommand("congruence", "evaluate the mod-p congruence");
    cong->add_option("model", model_ref, "model file or fixture name")->required();
    cong->add_option("--chamber", chamber, "select one chamber value set");
    cong->add_flag("--json", as_json, "machine-readable output");

    CLI::App* oracle = app.add_subcommand("oracle", "zero-counting oracle");
    oracle->require_subcommand(1);

    CLI::App* ld = oracle->add_subcommand("local-degree",
                                          "exact split-system degree vs the multiplicity");
    ld->add_option("--model", model_ref, "model file or fixture name")->required();
    ld->add_option("--lift", lift, "stratum weight j")->required();
    ld->add_flag("--newton", with_newton, "numerical cross-check of the enumeration");
    ld->add_flag("--json", as_json, "machine-readable output");
    newton_flags.attach(ld);

    CLI::App* fc = oracle->add_subcommand("free-check",
                                          "free-part divisibility over random systems");
    fc->add_option("--p", p_raw, "odd prime modulus")->required();
    fc->add_option("--trials", trials, "number of random systems (default 100)");
    fc->add_option("--seed", seed, "base seed (default 1)");
    fc->add_option("--degree", degree, "monomial degree bound (default 4)");
    fc->add_flag("--json", as_json, "machine-readable output");
    newton_flags.attach(fc);

    CLI::App* nw = oracle->add_subcommand("newton", "count signed zeros of a system file");
    nw->add_option("--system", system_path, "system file (JSON)")->required();
    nw->add_flag("--json", as_json, "machine-readable output");
    newton_flags.attach(nw);

    CLI::App* fx = app.add_subcommand("fixtures", "built-in models");
    fx->require_subcommand(1);
    CLI::App* fxl = fx->add_subcommand("list", "list built-in fixtures");
    fxl->add_flag("--json", as_json, "machine-readable output");
    CLI::App* fxs = fx->add_subcommand("show", "dump one fixture as a model file");
    fxs->add_option("name", fixture_name, "fixture name")->required();

    CLI::App* cf = app.add_subcommand("check-fixtures",
                                      "recompute fixture expectations from live code");
    cf->add_flag("--json", as_json, "machine-readable output");

    std::vector<const char*> argv;
    argv.push_back("equivariant-sw");
    for (const std::string& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (dims->parsed())
            return cli_detail::cmd_dims(cli_detail::resolve_model(model_ref), as_json, out);
        if (mult->parsed())
            return cli_detail::cmd_mult(cli_detail::resolve_model(model_ref), lift,
                                        all_matchings, as_json, out);
        if (cong->parsed())
            return cli_detail::cmd_congruence(cli_detail::resolve_model(model_ref), chamber,
                                              as_json, out);
        if (ld->parsed())
            return cli_detail::cmd_local_degree(cli_detail::resolve_model(model_ref), lift,
                                                with_newton, newton_flags.options(), as_json,
                                                out);
        if (fc->parsed())
            return cli_detail::cmd_free_check(p_raw, trials, degree, seed,
                                              newton_flags.options(), as_json, out);
        if (nw->parsed())
            return cli_detail::cmd_newton(load_system_file(system_path),
                                          newton_flags.options(), as_json, out);
        if (fxl->parsed())
            return cli_detail::cmd_fixtures_list(as_json, out);
        if (fxs->parsed())
            return cli_detail::cmd_fixtures_show(fixture_name, out);
        if (cf->parsed())
            return cli_detail::cmd_check_fixtures(as_json, out);
    } catch (const schema_error& e) {
        err << "schema error: " << e.what() << "\n";
        return exit_schema;
    } catch (const positive_dimension_error& e) {
        err << "positive-dimension: " << e.what() << "\n";
        return exit_dimension;
    } catch (const oracle_error& e) {
        err << "oracle failure: " << e.what() << "\n";
        return exit_oracle;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_ok;
}

} // namespace esw
