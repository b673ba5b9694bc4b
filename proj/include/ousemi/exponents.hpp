#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ousemi/halfint.hpp"
#include "ousemi/multiindex.hpp"

namespace ousemi {

/// Anisotropic derivative weight: each derivative in block k contributes
/// (2k+1)/2. Exact.
HalfInt decay_exponent(const BlockMultiIndex& beta);

/// Weight after discounting h derivatives of the datum, dropped from the
/// trailing blocks first (where they would cost the most). Zero when the
/// total order does not exceed h. Exact.
HalfInt decay_exponent_reduced(const BlockMultiIndex& beta, int h);

/// Outcome of one structural property check over an exhaustive range.
struct PropertyResult {
    std::string name;
    bool passed = true;
    long long checked = 0;
    std::string witness;  // first counterexample, empty when passed
};

struct ExponentSuiteResult {
    std::vector<PropertyResult> properties;
    bool all_passed() const;
};

/// Hooks for the CLI self-test: deliberately corrupts one evaluation so the
/// suite must produce a counterexample.
struct ExponentSuiteMutation {
    bool perturb_reduced_weight = false;
    bool perturb_companion = false;
};

/// Exhaustively verifies the structural properties of the reduced weight over
/// all block multi-indices with order <= k_max, blocks r <= r_max, h <= h_max:
///   zero-iff-small, half-gap lower bound, first-block increment,
///   single-shift bound, leading-shift decrement, double-shift bound,
///   sub-index double-increment bound, monotonicity in h,
///   and the companion pairing identity used by the weighted estimates.
/// All arithmetic exact; no floating point.
ExponentSuiteResult exponent_property_suite(int r_max, int k_max, int h_max,
                                            const ExponentSuiteMutation& mutation = {});

/// CSV table of (r, beta, h, reduced weight) for documentation and the CLI.
std::string exponent_table_csv(int r, int k_max, int h_max);

}  // namespace ousemi
