#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ousemi/linalg.hpp"

namespace ousemi {

/// Exact dyadic rational m * 2^e with positive mantissa. The parameter
/// recipe is a chain of strict inequalities, so comparisons must be exact.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(std::int64_t mantissa, int exponent);
    static Dyadic one() { return Dyadic(1, 0); }
    static Dyadic pow2(int e) { return Dyadic(1, e); }

    std::int64_t mantissa() const { return m_; }
    int exponent() const { return e_; }
    double to_double() const;
    std::string str() const;

    Dyadic operator*(const Dyadic& o) const;
    bool operator<(const Dyadic& o) const;
    bool operator==(const Dyadic& o) const;
    bool operator<=(const Dyadic& o) const { return *this < o || *this == o; }

private:
    std::int64_t m_ = 0;  // normalized: odd, or zero
    int e_ = 0;
};

/// Weight ladder for the squared-derivative Lyapunov sums: one strictly
/// halving sequence a^(l) per derivative order, products of which form the
/// exponent table eta. Level l = 0 is the trivial singleton {1}.
struct BernsteinParams {
    int k = 0;  // highest derivative order covered
    int r = 0;  // number of anisotropy stages
    std::vector<std::vector<Dyadic>> a;  // a[l] has block_count(l, r) entries, l = 1..k+1

    Dyadic eta(int l, int n, int m) const;  // a[l][n-1] * a[l][m-1]
    Dyadic eta_level(int l) const;          // min diagonal eta of level l-1
    /// Smallest admissible magnification base given the gauge norms
    /// (keyed by (l, m)); the base must overpower 2*norm at exponent
    /// eta(companion,companion) + eta(m,m) - 2 eta(m,companion).
    double magnification_lower_bound(
        const std::map<std::pair<int, int>, double>& gauge_norms) const;
};

/// Constructs the ladder: each level starts below half the square root of
/// the previous level's floor, decreases by strict halving, and drops below
/// the square of the last "leading-stage" entry when crossing it. Always
/// succeeds; the result passes check_bernstein_conditions by construction.
BernsteinParams choose_bernstein_parameters(int k, int r);

struct BernsteinCheckResult {
    bool passed = true;
    std::vector<std::string> failures;  // one line per violated inequality
    long long checked = 0;
};

/// Independent verification of every required inequality: the coupling
/// convexity condition and the five ladder conditions relating diagonal and
/// companion exponents within and across levels. Reads only the a-values.
BernsteinCheckResult check_bernstein_conditions(const BernsteinParams& params);

}  // namespace ousemi
