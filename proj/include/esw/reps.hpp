#pragma once

/// Weight-vector bookkeeping for Z_p x S^1 representations: model data,
/// hypothesis validation, the G_0-index of the Dirac operator, lift
/// twisting, and the virtual dimensions d(c) and d(c,G_j).
///
/// A model describes one finite-dimensional equivariant map
///     f : V + R -> W + R + H,
/// where V and W are complex Z_p-representations with weight multiplicities
/// a[j] and b[j], H = H^+(X;R) splits as a fixed part of dimension h0 plus a
/// complexified part with weight multiplicities h[k], and R splits likewise
/// into r0 and r[k]. b_1 = 0 throughout.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "esw/errors.hpp"
#include "esw/modp.hpp"

namespace esw {

// Multiplicity vector indexed by weight 0..p-1. Entries are multiplicities
// of the complex weight-j representation C_j, so they must be >= 0.
class WeightVector {
public:
    explicit WeightVector(PrimeModulus p)
        : p_(p), mult_(static_cast<size_t>(p.value()), 0) {}

    WeightVector(PrimeModulus p, std::vector<int> mult) : p_(p), mult_(std::move(mult)) {
        if (mult_.size() != static_cast<size_t>(p.value()))
            throw schema_error("weight vector must have exactly p = " +
                               std::to_string(p.value()) + " entries, got " +
                               std::to_string(mult_.size()));
        for (size_t j = 0; j < mult_.size(); ++j)
            if (mult_[j] < 0)
                throw schema_error("negative multiplicity at weight " + std::to_string(j));
    }

    PrimeModulus modulus() const { return p_; }
    int size() const { return p_.value(); }

    int operator[](int j) const { return mult_.at(static_cast<size_t>(j)); }

    // Entry at weight k mod p; accepts any integer index.
    int cyclic(int k) const {
        const int p = p_.value();
        return mult_[static_cast<size_t>(((k % p) + p) % p)];
    }

    int sum() const {
        int s = 0;
        for (int m : mult_)
            s += m;
        return s;
    }

    const std::vector<int>& entries() const { return mult_; }

    friend bool operator==(const WeightVector& a, const WeightVector& b) {
        return a.p_ == b.p_ && a.mult_ == b.mult_;
    }
    friend bool operator!=(const WeightVector& a, const WeightVector& b) { return !(a == b); }

private:
    PrimeModulus p_;
    std::vector<int> mult_;
};

// One set of Seiberg-Witten values supplied with a model. Values are plain
// integers; they are inputs, never derived here. When b_+^G = 1 they depend
// on the chamber, hence the optional label.
struct SwValues {
    std::optional<std::string> chamber;
    std::optional<int> total;                // SW(X,c)
    std::vector<std::optional<int>> lifts;   // SW(X,c,G_j), length p
};

// The weight data of one finite-dimensional equivariant model. Structural
// invariants (array lengths, non-negativity, h[0] = r[0] = 0) are enforced
// at construction, so every live ModelSpec is structurally valid.
class ModelSpec {
public:
    ModelSpec(PrimeModulus p, WeightVector a, WeightVector b, int h0, WeightVector h,
              int r0, WeightVector r, std::string label = "",
              std::vector<SwValues> sw = {})
        : p_(p),
          a_(std::move(a)),
          b_(std::move(b)),
          h_(std::move(h)),
          r_(std::move(r)),
          h0_(h0),
          r0_(r0),
          label_(std::move(label)),
          sw_(std::move(sw)) {
        check_vector("a", a_);
        check_vector("b", b_);
        check_vector("h", h_);
        check_vector("r", r_);
        if (h0_ < 0)
            throw schema_error("h0 must be >= 0");
        if (r0_ < 0)
            throw schema_error("r0 must be >= 0");
        if (h_[0] != 0)
            throw schema_error("h[0] must be 0: H' is the complement of the fixed part of H");
        if (r_[0] != 0)
            throw schema_error("r[0] must be 0: R' is the complement of the fixed part of R");
        for (auto& set : sw_) {
            if (set.lifts.empty())
                set.lifts.assign(static_cast<size_t>(p_.value()), std::nullopt);
            if (set.lifts.size() != static_cast<size_t>(p_.value()))
                throw schema_error("sw.lifts must have exactly p entries");
        }
    }

    PrimeModulus p() const { return p_; }
    const WeightVector& a() const { return a_; }
    const WeightVector& b() const { return b_; }
    const WeightVector& h() const { return h_; }
    const WeightVector& r() const { return r_; }
    int h0() const { return h0_; }
    int r0() const { return r0_; }
    const std::string& label() const { return label_; }
    const std::vector<SwValues>& sw_sets() const { return sw_; }

    // b_+ of X: fixed part plus two real dimensions per complex weight.
    int b_plus() const { return h0_ + 2 * h_.sum(); }

private:
    void check_vector(const char* name, const WeightVector& v) const {
        if (v.modulus() != p_)
            throw schema_error(std::string(name) + " has modulus " +
                               std::to_string(v.modulus().value()) + ", model has p = " +
                               std::to_string(p_.value()));
    }

    PrimeModulus p_;
    WeightVector a_, b_, h_, r_;
    int h0_, r0_;
    std::string label_;
    std::vector<SwValues> sw_;
};

enum class CheckStatus { pass, warn, fail };

struct HypothesisCheck {
    std::string name;
    CheckStatus status;
    std::string detail;
};

struct ValidationReport {
    std::vector<HypothesisCheck> checks;
    bool chamber_mode = false; // b_+^G = 1: invariant values depend on chambers

    bool ok() const {
        for (const auto& c : checks)
            if (c.status == CheckStatus::fail) return false;
        return true;
    }
    // Every hypothesis strictly satisfied, warnings included.
    bool theorem_ok() const {
        for (const auto& c : checks)
            if (c.status != CheckStatus::pass) return false;
        return true;
    }
};

struct StratumInfo {
    int j;
    int index;              // a[j] - b[j]
    int d_lift;             // d(c,G_j)
    std::optional<int> dim; // 2 a[j] - 1 + r0 when the stratum is nonempty
    bool empty;             // a[j] == 0
};

struct LiftIndexReport {
    int d; // d(c)
    std::vector<StratumInfo> strata; // one entry per j in 0..p-1
};

// d(c) = 2 ind_C D - (1 + b_+), with b_1 = 0.
inline int dim_d(const ModelSpec& m) {
    int ind = 0;
    for (int j = 0; j < m.p().value(); ++j)
        ind += m.a()[j] - m.b()[j];
    return 2 * ind - (1 + m.b_plus());
}

// d(c,G_j) = 2 (a[j] - b[j]) - (1 + b_+^G).
inline int dim_d_lift(const ModelSpec& m, int j) {
    return 2 * (m.a()[j] - m.b()[j]) - (1 + m.h0());
}

// ind_{G_0} D as a weight-indexed vector (a[j] - b[j]); entries may be
// negative, so this is a plain integer vector rather than a WeightVector.
inline std::vector<int> index_g0(const ModelSpec& m) {
    std::vector<int> ind(static_cast<size_t>(m.p().value()));
    for (int j = 0; j < m.p().value(); ++j)
        ind[static_cast<size_t>(j)] = m.a()[j] - m.b()[j];
    return ind;
}

// The model for the lift G_j: twisting by C_{-j} sends the weight-k part of
// V and W to weight k - j, so the weight-k multiplicity of the twisted model
// is read off at index k + j. Forms are untouched by the S^1 action, so h
// and r stay fixed; supplied SW lift values are re-indexed by the same shift.
inline ModelSpec twist(const ModelSpec& m, int j) {
    const int p = m.p().value();
    if (j < 0 || j >= p)
        throw schema_error("twist weight must lie in 0..p-1");
    std::vector<int> a(static_cast<size_t>(p)), b(static_cast<size_t>(p));
    for (int k = 0; k < p; ++k) {
        a[static_cast<size_t>(k)] = m.a().cyclic(k + j);
        b[static_cast<size_t>(k)] = m.b().cyclic(k + j);
    }
    std::vector<SwValues> sw = m.sw_sets();
    for (auto& set : sw) {
        std::vector<std::optional<int>> lifts(static_cast<size_t>(p));
        for (int k = 0; k < p; ++k)
            lifts[static_cast<size_t>(k)] = set.lifts[static_cast<size_t>((k + j) % p)];
        set.lifts = std::move(lifts);
    }
    std::string label = m.label();
    if (j != 0 && !label.empty())
        label += " (twist " + std::to_string(j) + ")";
    return ModelSpec(m.p(), WeightVector(m.p(), std::move(a)), WeightVector(m.p(), std::move(b)),
                     m.h0(), m.h(), m.r0(), m.r(), std::move(label), std::move(sw));
}

// Hypothesis checklist. Structural violations never reach this point; they
// throw at ModelSpec construction.
inline ValidationReport validate(const ModelSpec& m) {
    ValidationReport rep;
    const int p = m.p().value();

    rep.checks.push_back({"p odd prime", CheckStatus::pass, "p = " + std::to_string(p)});

    const int bp = m.b_plus();
    rep.checks.push_back({"b_+ >= 2",
                          bp >= 2 ? CheckStatus::pass : CheckStatus::fail,
                          "b_+ = " + std::to_string(bp)});

    if (m.h0() >= 2) {
        rep.checks.push_back({"b_+^G >= 2", CheckStatus::pass, "b_+^G = " + std::to_string(m.h0())});
    } else if (m.h0() == 1) {
        rep.chamber_mode = true;
        rep.checks.push_back({"b_+^G >= 2", CheckStatus::warn,
                              "b_+^G = 1: invariant values depend on chambers"});
    } else {
        rep.checks.push_back({"b_+^G >= 2", CheckStatus::fail, "b_+^G = 0"});
    }

    const int d = dim_d(m);
    rep.checks.push_back({"d(c) = 0",
                          d == 0 ? CheckStatus::pass : CheckStatus::fail,
                          "d(c) = " + std::to_string(d)});

    bool lifts_ok = true;
    std::string bad;
    for (int j = 0; j < p; ++j) {
        if (dim_d_lift(m, j) > 0) {
            lifts_ok = false;
            bad += (bad.empty() ? "j = " : ", ") + std::to_string(j);
        }
    }
    rep.checks.push_back({"d(c,G_j) <= 0 for all j",
                          lifts_ok ? CheckStatus::pass : CheckStatus::fail,
                          lifts_ok ? "all lifts nonpositive" : "positive at " + bad});
    return rep;
}

// Per-lift table over the fixed strata B_j = R_+ x P(C_j^{a_j}) x R_0.
// The stratum for weight j is nonempty exactly when a[j] > 0, in which case
// its dimension is 2 a[j] - 1 + r0.
inline LiftIndexReport fixed_strata(const ModelSpec& m) {
    LiftIndexReport rep;
    rep.d = dim_d(m);
    for (int j = 0; j < m.p().value(); ++j) {
        StratumInfo s;
        s.j = j;
        s.index = m.a()[j] - m.b()[j];
        s.d_lift = dim_d_lift(m, j);
        s.empty = m.a()[j] == 0;
        if (!s.empty)
            s.dim = 2 * m.a()[j] - 1 + m.r0();
        rep.strata.push_back(std::move(s));
    }
    return rep;
}

} // namespace esw
