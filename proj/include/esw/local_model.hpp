#pragma once

/// Local model at a fixed stratum B_j: the normal weight data (V', W'),
/// cancellation of common weight summands, the perturbation exponents of
/// psi, and the multiplicity of the stratum in F_p.
///
/// Conventions. Twisting by C_{-j} moves the weight-k summand of both V and
/// W to index k + j, so
///     a'_k = a[(k+j) mod p]            (k != 0),
///     b'_k = b[(k+j) mod p] + h[k]     (k != 0),
/// and entry 0 is forced to 0 on both sides: the invariant directions are
/// handled by transversality along B_j, not by psi. The index-shift is
/// deliberately the same on both sides; it reproduces the multiplicity pair
/// (1, 2) of the b_+^G = 1 worked example, so do not switch the b'
/// convention to k - j. R' appears identically in V' and W' and is absorbed
/// into the cancelled part, so it is carried only as an inert dimension.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "esw/errors.hpp"
#include "esw/modp.hpp"
#include "esw/reps.hpp"

namespace esw {

struct LocalModel {
    int j;
    WeightVector a_prime; // multiplicities of V' by weight, entry 0 = 0
    WeightVector b_prime; // multiplicities of W' by weight, entry 0 = 0
    int r_prime_dim;      // complex dimension of R', inert
};

// Result of cancelling e_k = min(a'_k, b'_k) from both sides. The residual
// multisets are kept as ascending weight lists with repetition, so
// residual_in = I with weight k repeated m_k = a'_k - e_k times.
struct CancellationData {
    PrimeModulus p;
    std::vector<int> e;            // indexed by weight 0..p-1
    std::vector<int> residual_in;  // multiset I, ascending
    std::vector<int> residual_out; // multiset I', ascending
};

// Pairs (i_k, i'_k): source residual weight -> target residual weight.
using Matching = std::vector<std::pair<int, int>>;

enum class MultiplicityReason { negative_dimension_zero, computed };

struct MultiplicityResult {
    int j;
    Residue value;
    MultiplicityReason reason;
    std::vector<int> exponents; // psi exponents of the canonical matching
    bool empty_stratum = false; // a[j] = 0: coefficient defined, no zeros on it
};

namespace detail {

// The a[j] > 0 precondition is relaxed here: the multiplicity coefficient is
// defined by the same formulas even when the stratum carries no points.
inline LocalModel local_model_unchecked(const ModelSpec& m, int j) {
    const int p = m.p().value();
    std::vector<int> ap(static_cast<size_t>(p), 0), bp(static_cast<size_t>(p), 0);
    for (int k = 1; k < p; ++k) {
        ap[static_cast<size_t>(k)] = m.a().cyclic(k + j);
        bp[static_cast<size_t>(k)] = m.b().cyclic(k + j) + m.h()[k];
    }
    return LocalModel{j, WeightVector(m.p(), std::move(ap)),
                      WeightVector(m.p(), std::move(bp)), m.r().sum()};
}

} // namespace detail

inline LocalModel build_local_model(const ModelSpec& m, int j) {
    if (j < 0 || j >= m.p().value())
        throw schema_error("lift weight must lie in 0..p-1");
    if (m.a()[j] == 0)
        throw empty_stratum_error("stratum j = " + std::to_string(j) +
                                  " is empty (a[j] = 0)");
    return detail::local_model_unchecked(m, j);
}

// e_k = min(a'_k, b'_k); residual multisets I, I'. The two residuals must
// have equal total size, which is forced when d(c) = 0 and d(c,G_j) = 0.
inline CancellationData cancel(const LocalModel& local) {
    const PrimeModulus p = local.a_prime.modulus();
    CancellationData data{p, std::vector<int>(static_cast<size_t>(p.value()), 0), {}, {}};
    for (int k = 1; k < p.value(); ++k) {
        const int e = std::min(local.a_prime[k], local.b_prime[k]);
        data.e[static_cast<size_t>(k)] = e;
        for (int c = 0; c < local.a_prime[k] - e; ++c)
            data.residual_in.push_back(k);
        for (int c = 0; c < local.b_prime[k] - e; ++c)
            data.residual_out.push_back(k);
    }
    if (data.residual_in.size() != data.residual_out.size())
        throw dimension_mismatch_error(
            "residual dimensions disagree at stratum j = " + std::to_string(local.j) +
            ": dim V_r = " + std::to_string(data.residual_in.size()) +
            ", dim W_r = " + std::to_string(data.residual_out.size()) +
            " (model violates d(c) = 0 or d(c,G_j) = 0)");
    return data;
}

// Pair residuals in ascending weight order on both sides. Any matching gives
// the same multiplicity; this one makes the output deterministic.
inline Matching canonical_matching(const CancellationData& data) {
    Matching m;
    m.reserve(data.residual_in.size());
    for (size_t k = 0; k < data.residual_in.size(); ++k)
        m.emplace_back(data.residual_in[k], data.residual_out[k]);
    return m;
}

// All distinct pairings of the residual multisets.
inline std::vector<Matching> all_matchings(const CancellationData& data) {
    std::vector<Matching> out;
    std::vector<int> perm = data.residual_out; // ascending already
    do {
        Matching m;
        m.reserve(data.residual_in.size());
        for (size_t k = 0; k < data.residual_in.size(); ++k)
            m.emplace_back(data.residual_in[k], perm[k]);
        out.push_back(std::move(m));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Exponents of psi(z_1, ..., z_r) = (z_1^{e_1}, ..., z_r^{e_r}): per pair,
// e_k = i'_k / i_k computed in F_p and lifted to {1, ..., p-1}.
inline std::vector<int> psi_exponents(const CancellationData& data, const Matching& matching) {
    std::vector<int> in, out;
    in.reserve(matching.size());
    out.reserve(matching.size());
    for (const auto& [src, dst] : matching) {
        in.push_back(src);
        out.push_back(dst);
    }
    std::vector<int> in_sorted = in, out_sorted = out;
    std::sort(in_sorted.begin(), in_sorted.end());
    std::sort(out_sorted.begin(), out_sorted.end());
    if (in_sorted != data.residual_in || out_sorted != data.residual_out)
        throw invalid_matching_error("matching does not cover the residual multisets");

    const PrimeModulus p = data.p;
    std::vector<int> exponents;
    exponents.reserve(matching.size());
    for (const auto& [src, dst] : matching) {
        if (src % p.value() == 0 || dst % p.value() == 0)
            throw invalid_matching_error("residual weights must be nonzero mod p");
        exponents.push_back(as_exponent(Residue(dst, p) * inv(Residue(src, p))));
    }
    return exponents;
}

// The multiplicity m_j of the stratum B_j:
//   - 0 when d(c,G_j) < 0 (the stratum is perturbed away),
//   - prod(I') / prod(I) in F_p when d(c,G_j) = 0,
//   - undefined when d(c,G_j) > 0.
inline MultiplicityResult multiplicity(const ModelSpec& m, int j) {
    if (j < 0 || j >= m.p().value())
        throw schema_error("lift weight must lie in 0..p-1");
    const int d = dim_d_lift(m, j);
    if (d > 0)
        throw positive_dimension_error("d(c,G_" + std::to_string(j) + ") = " +
                                       std::to_string(d) + " > 0: multiplicity undefined");
    if (d < 0)
        return MultiplicityResult{j, Residue(0, m.p()),
                                  MultiplicityReason::negative_dimension_zero, {},
                                  m.a()[j] == 0};

    const CancellationData data = cancel(detail::local_model_unchecked(m, j));
    const std::vector<int> exponents = psi_exponents(data, canonical_matching(data));
    const Residue value =
        ratio(m.p(), std::span<const int>(data.residual_out), std::span<const int>(data.residual_in));
    return MultiplicityResult{j, value, MultiplicityReason::computed, exponents,
                              m.a()[j] == 0};
}

} // namespace esw
