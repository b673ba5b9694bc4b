#include "ousemi/bernstein.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ousemi/multiindex.hpp"

namespace ousemi {

Dyadic::Dyadic(std::int64_t mantissa, int exponent) : m_(mantissa), e_(exponent) {
    if (m_ < 0) throw std::invalid_argument("Dyadic: mantissa must be non-negative");
    if (m_ == 0) { e_ = 0; return; }
    while ((m_ & 1) == 0) { m_ >>= 1; ++e_; }
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(m_), e_); }

std::string Dyadic::str() const {
    std::ostringstream os;
    os << m_ << "*2^" << e_;
    return os.str();
}

Dyadic Dyadic::operator*(const Dyadic& o) const {
    if (m_ == 0 || o.m_ == 0) return Dyadic();
    const __int128 prod = static_cast<__int128>(m_) * o.m_;
    if (prod > static_cast<__int128>(INT64_MAX))
        throw std::overflow_error("Dyadic: mantissa overflow");
    return Dyadic(static_cast<std::int64_t>(prod), e_ + o.e_);
}

bool Dyadic::operator==(const Dyadic& o) const { return m_ == o.m_ && e_ == o.e_; }

bool Dyadic::operator<(const Dyadic& o) const {
    if (m_ == 0) return o.m_ != 0;
    if (o.m_ == 0) return false;
    const int l1 = std::bit_width(static_cast<std::uint64_t>(m_)) - 1 + e_;
    const int lo = std::bit_width(static_cast<std::uint64_t>(o.m_)) - 1 + o.e_;
    if (l1 != lo) return l1 < lo;
    // Same binade: the exponent gap is bounded by the mantissa widths.
    const int d = e_ - o.e_;
    if (d >= 0) return (m_ << d) < o.m_;
    return m_ < (o.m_ << -d);
}

Dyadic BernsteinParams::eta(int l, int n, int m) const {
    return a[static_cast<std::size_t>(l)][static_cast<std::size_t>(n - 1)] *
           a[static_cast<std::size_t>(l)][static_cast<std::size_t>(m - 1)];
}

Dyadic BernsteinParams::eta_level(int l) const {
    const auto& prev = a[static_cast<std::size_t>(l - 1)];
    Dyadic best = prev.front() * prev.front();
    for (const Dyadic& v : prev) {
        const Dyadic d = v * v;
        if (d < best) best = d;
    }
    return best;
}

BernsteinParams choose_bernstein_parameters(int k, int r) {
    if (k < 1 || r < 0) throw std::invalid_argument("choose_bernstein_parameters: bad range");
    BernsteinParams params;
    params.k = k;
    params.r = r;
    params.a.resize(static_cast<std::size_t>(k + 2));
    params.a[0] = {Dyadic::one()};

    for (int l = 1; l <= k + 1; ++l) {
        const auto count = block_count(l, r);
        const auto boundary = block_count(l - 1, r);  // crossing position (1-based)
        std::vector<Dyadic> level;
        level.reserve(static_cast<std::size_t>(count));

        // Floor from the previous level; its square root is exact because
        // every constructed value is a power of two.
        const Dyadic floor = params.eta_level(l);
        if (floor.mantissa() != 1 || floor.exponent() % 2 != 0)
            throw std::logic_error("choose_bernstein_parameters: floor not an even power of two");
        const int sqrt_e = floor.exponent() / 2;

        int e = sqrt_e - 2;  // strictly below half the square root
        for (std::int64_t n = 1; n <= count; ++n) {
            if (n > 1) {
                int next = e - 2;  // strict halving with margin
                if (n == boundary + 1) {
                    // Crossing into companion territory: drop below the
                    // square of the last pre-crossing value.
                    next = std::min(next, 2 * e - 1);
                }
                e = next;
            }
            level.push_back(Dyadic::pow2(e));
        }
        params.a[static_cast<std::size_t>(l)] = std::move(level);
    }
    return params;
}

namespace {

void fail(BernsteinCheckResult& res, const std::string& msg) {
    res.passed = false;
    if (res.failures.size() < 32) res.failures.push_back(msg);
}

std::string tag(int l, int m, int p = -1) {
    std::ostringstream os;
    os << "l=" << l << " m=" << m;
    if (p >= 0) os << " p=" << p;
    return os.str();
}

}  // namespace

BernsteinCheckResult check_bernstein_conditions(const BernsteinParams& params) {
    BernsteinCheckResult res;
    const int r = params.r;
    const Dyadic two(1, 1);

    for (int l = 1; l < static_cast<int>(params.a.size()); ++l) {
        const int cl = static_cast<int>(block_count(l, r));
        const int clm1 = static_cast<int>(block_count(l - 1, r));
        if (static_cast<int>(params.a[static_cast<std::size_t>(l)].size()) != cl) {
            fail(res, "level " + std::to_string(l) + " has the wrong length");
            continue;
        }
        // Ladder sanity: strictly decreasing, below one, strict halving.
        const auto& level = params.a[static_cast<std::size_t>(l)];
        for (int n = 0; n < cl; ++n) {
            ++res.checked;
            if (!(level[static_cast<std::size_t>(n)] < Dyadic::one()))
                fail(res, "level " + std::to_string(l) + " entry not below one");
            if (n > 0 && !(two * level[static_cast<std::size_t>(n)] <
                           level[static_cast<std::size_t>(n - 1)]))
                fail(res, "level " + std::to_string(l) + " halving violated at " +
                              std::to_string(n + 1));
        }

        const Dyadic eta_l = params.eta_level(l);
        for (int m = clm1 + 1; m <= cl; ++m) {
            const int lm = companion_index(m, l, r);
            const Dyadic e_mm = params.eta(l, m, m);
            const Dyadic e_ml = params.eta(l, m, lm);

            ++res.checked;
            // Coupling convexity: eta_ll + eta_mm > 2 eta_ml. With products of
            // a strictly decreasing ladder this is AM-GM; verify exactly via
            // (a_l - a_m)^2 > 0, i.e. the two factors differ.
            if (params.a[static_cast<std::size_t>(l)][static_cast<std::size_t>(lm - 1)] ==
                params.a[static_cast<std::size_t>(l)][static_cast<std::size_t>(m - 1)])
                fail(res, "coupling convexity fails at " + tag(l, m));

            ++res.checked;
            if (!(two * e_mm < e_ml)) fail(res, "diagonal dominance fails at " + tag(l, m));

            for (int p = clm1 + 1; p < m; ++p) {
                ++res.checked;
                const int lp = companion_index(p, l, r);
                if (!(e_ml < params.eta(l, p, lp)))
                    fail(res, "companion monotonicity fails at " + tag(l, m, p));
            }
            for (int p = 1; p <= clm1; ++p) {
                ++res.checked;
                if (!(e_ml < params.eta(l, p, p)))
                    fail(res, "cross-boundary bound fails at " + tag(l, m, p));
            }
            if (lm > clm1) {
                ++res.checked;
                const int llm = companion_index(lm, l, r);
                if (!(two * e_ml < params.eta(l, lm, llm)))
                    fail(res, "companion chain bound fails at " + tag(l, m));
            }
        }

        // Level separation: twice the largest diagonal of this level stays
        // below the previous level's floor.
        Dyadic max_diag = params.eta(l, 1, 1);
        for (int m = 2; m <= cl; ++m) {
            const Dyadic d = params.eta(l, m, m);
            if (max_diag < d) max_diag = d;
        }
        ++res.checked;
        if (!(two * max_diag < eta_l))
            fail(res, "level separation fails at level " + std::to_string(l));
    }
    return res;
}

double BernsteinParams::magnification_lower_bound(
    const std::map<std::pair<int, int>, double>& gauge_norms) const {
    // Requirement per gauge: base^gap > 2*norm with
    // gap = eta(companion,companion) + eta(m,m) - 2 eta(m,companion)
    //     = (a_companion - a_m)^2.
    // Returns log2(log2(base)): the gaps shrink doubly exponentially across
    // levels, so the base itself is far outside double range.
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& [key, norm] : gauge_norms) {
        const auto [l, m] = key;
        const double rhs = std::log2(2.0 * norm);
        if (rhs <= 0) continue;  // any base above one works
        const int lm = companion_index(m, l, r);
        const Dyadic al = a[static_cast<std::size_t>(l)][static_cast<std::size_t>(lm - 1)];
        const Dyadic am = a[static_cast<std::size_t>(l)][static_cast<std::size_t>(m - 1)];
        // log2 of (al - am)^2 for powers of two al > am.
        const double ratio = std::ldexp(static_cast<double>(am.mantissa()),
                                        am.exponent() - al.exponent()) /
                             static_cast<double>(al.mantissa());
        const double log2_gap =
            2.0 * (std::log2(static_cast<double>(al.mantissa())) + al.exponent() +
                   std::log2(1.0 - ratio));
        worst = std::max(worst, std::log2(rhs) - log2_gap);
    }
    return worst;
}

}  // namespace ousemi
