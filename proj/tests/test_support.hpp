#pragma once

#include <random>
#include <vector>

#include "esw/reps.hpp"

namespace esw_test {

// Small random model with d(c) = 0 and d(c,G_j0) = 0 for one chosen stratum
// j0, all other lifts nonpositive. h0 is odd (those are the only models with
// d(c,G_j) = 0 strata) and sum h <= 1 keeps every lift within d <= 0.
inline esw::ModelSpec balanced_model(std::mt19937& rng, int& j0_out) {
    const int primes[] = {3, 5, 7};
    const int pv = primes[rng() % 3];
    esw::PrimeModulus p(pv);

    const int h0 = (rng() % 2 == 0) ? 1 : 3;
    std::vector<int> h(static_cast<size_t>(pv), 0);
    if (rng() % 2 == 0)
        h[1 + rng() % (static_cast<size_t>(pv) - 1)] = 1;
    int hsum = 0;
    for (int v : h)
        hsum += v;

    std::vector<int> a(static_cast<size_t>(pv), 0), b(static_cast<size_t>(pv), 0);
    for (int k = 0; k < pv; ++k)
        b[static_cast<size_t>(k)] = static_cast<int>(rng() % 3);

    const int j0 = static_cast<int>(rng() % pv);
    int k1 = static_cast<int>(rng() % pv);
    while (k1 == j0)
        k1 = static_cast<int>(rng() % pv);

    // d(c,G_j0) = 0 and d(c) = 0 by construction
    for (int k = 0; k < pv; ++k)
        a[static_cast<size_t>(k)] = b[static_cast<size_t>(k)];
    a[static_cast<size_t>(j0)] += (1 + h0) / 2;
    a[static_cast<size_t>(k1)] += hsum;

    std::vector<int> r(static_cast<size_t>(pv), 0);
    j0_out = j0;
    return esw::ModelSpec(p, esw::WeightVector(p, a), esw::WeightVector(p, b), h0,
                          esw::WeightVector(p, h), static_cast<int>(rng() % 2),
                          esw::WeightVector(p, r), "random");
}

// Same weight data with different SW value sets attached.
inline esw::ModelSpec with_sw(const esw::ModelSpec& m, std::vector<esw::SwValues> sw) {
    return esw::ModelSpec(m.p(), m.a(), m.b(), m.h0(), m.h(), m.r0(), m.r(), m.label(),
                          std::move(sw));
}

} // namespace esw_test
