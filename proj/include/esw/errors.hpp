#pragma once

#include <stdexcept>

namespace esw {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input data: bad modulus, negative multiplicity, wrong array
// length, h[0] != 0, unparseable model file. CLI exit code 2.
struct schema_error : error {
    using error::error;
};

// A lift with d(c,G_j) > 0 was requested; the multiplicity formula is only
// defined for d(c,G_j) <= 0. CLI exit code 3.
struct positive_dimension_error : error {
    using error::error;
};

// Residual weight counts disagree (sum m_k != sum n_k). Signals a model
// that cannot have d(c) = 0 and d(c,G_j) = 0 at the same time.
struct dimension_mismatch_error : error {
    using error::error;
};

// Zero fed to an operation that needs a unit of F_p: inverse, exponent
// lift, ratio denominator.
struct zero_input_error : error {
    using error::error;
};

// build_local_model called on a stratum with a[j] = 0.
struct empty_stratum_error : error {
    using error::error;
};

// A matching that does not cover the residual multisets exactly.
struct invalid_matching_error : error {
    using error::error;
};

// solve_missing: every value present / more than one missing.
struct overdetermined_error : error {
    using error::error;
};
struct underdetermined_error : error {
    using error::error;
};

// Oracle-side failures. CLI exit code 5.
struct oracle_error : error {
    using error::error;
};
struct zero_target_error : oracle_error {
    using oracle_error::oracle_error;
};
struct non_split_error : oracle_error {
    using oracle_error::oracle_error;
};
struct infeasible_weights_error : oracle_error {
    using oracle_error::oracle_error;
};
struct orbit_inconsistency_error : oracle_error {
    using oracle_error::oracle_error;
};

} // namespace esw
