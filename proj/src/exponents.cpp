#include "ousemi/exponents.hpp"

#include <sstream>

namespace ousemi {

HalfInt decay_exponent(const BlockMultiIndex& beta) {
    std::int64_t twice = 0;
    for (int k = 0; k < beta.size(); ++k)
        twice += static_cast<std::int64_t>(2 * k + 1) * beta[k];
    return HalfInt::from_twice(twice);
}

HalfInt decay_exponent_reduced(const BlockMultiIndex& beta, int h) {
    const int r = beta.size() - 1;
    const int total = beta.order();
    if (total <= h) return HalfInt{};

    // Smallest j such that the tail sum from j is at most h.
    int j = r + 1;
    int tail = 0;
    for (int i = r; i >= 0; --i) {
        if (tail + beta[i] > h) break;
        tail += beta[i];
        j = i;
    }

    std::int64_t twice = total - h;  // (total - h) / 2, doubled
    for (int k = 0; k < j; ++k)
        twice += static_cast<std::int64_t>(2 * k) * beta[k];
    int tail_from_j = 0;
    for (int k = j; k <= r; ++k) tail_from_j += beta[k];
    twice += static_cast<std::int64_t>(2) * (j - 1) * (tail_from_j - h);
    return HalfInt::from_twice(twice);
}

bool ExponentSuiteResult::all_passed() const {
    for (const auto& p : properties)
        if (!p.passed) return false;
    return true;
}

namespace {

std::string describe(const BlockMultiIndex& b, int h) {
    std::ostringstream os;
    os << "beta=(";
    for (int i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    os << ") h=" << h;
    return os.str();
}

struct Recorder {
    PropertyResult result;
    explicit Recorder(std::string name) { result.name = std::move(name); }
    void check(bool ok, const BlockMultiIndex& b, int h) {
        ++result.checked;
        if (!ok && result.passed) {
            result.passed = false;
            result.witness = describe(b, h);
        }
    }
};

BlockMultiIndex shift(const BlockMultiIndex& b, int from, int to) {
    BlockMultiIndex out = b;
    out.entries[static_cast<std::size_t>(from)] -= 1;
    out.entries[static_cast<std::size_t>(to)] += 1;
    return out;
}

}  // namespace

ExponentSuiteResult exponent_property_suite(int r_max, int k_max, int h_max,
                                            const ExponentSuiteMutation& mutation) {
    auto qh = [&mutation](const BlockMultiIndex& b, int h) {
        HalfInt v = decay_exponent_reduced(b, h);
        if (mutation.perturb_reduced_weight && h == 0 && b.order() == 2 && b[0] == 2)
            v += HalfInt::half();
        return v;
    };

    Recorder zero_iff_small("zero_iff_order_le_h");
    Recorder lower_bound("half_gap_lower_bound");
    Recorder first_block("first_block_increment_adds_half");
    Recorder single_shift("single_shift_costs_at_most_one");
    Recorder leading_shift("leading_shift_decrements_exactly");
    Recorder double_shift("double_shift_pair_bound");
    Recorder sub_double("sub_index_double_increment_bound");
    Recorder monotone_h("non_increasing_in_h");
    Recorder matches_plain("reduces_to_plain_weight_at_h0");
    Recorder pairing("companion_pairing_identity");

    for (int r = 0; r <= r_max; ++r) {
        for (int k = 0; k <= k_max; ++k) {
            for (const auto& alpha : enumerate_ordered(k, r)) {
                for (int h = 0; h <= h_max; ++h) {
                    const HalfInt qa = qh(alpha, h);

                    zero_iff_small.check((k <= h) == (qa == HalfInt{}), alpha, h);
                    lower_bound.check(
                        qa.twice_value() >= std::max<std::int64_t>(0, k - h), alpha, h);

                    {
                        BlockMultiIndex beta = alpha;
                        beta.entries[0] += 1;
                        if (k >= h)
                            first_block.check(qh(beta, h) == qa + HalfInt::half(), alpha, h);
                    }

                    if (h == 0) matches_plain.check(qa == decay_exponent(alpha), alpha, h);
                    if (h > 0)
                        monotone_h.check(qa <= qh(alpha, h - 1), alpha, h);

                    for (int j = 0; j <= r; ++j) {
                        if (alpha[j] <= 0) continue;
                        for (int jp = 0; jp <= std::min(j + 1, r); ++jp) {
                            const BlockMultiIndex beta = shift(alpha, j, jp);
                            single_shift.check(qa >= qh(beta, h) - HalfInt::whole(1),
                                               alpha, h);
                        }
                    }

                    // Leading nonzero block strictly past the first slot.
                    int j0 = -1;
                    for (int i = 0; i <= r; ++i) {
                        if (alpha[i] > 0) { j0 = i; break; }
                    }
                    if (j0 > 0) {
                        const BlockMultiIndex hat = shift(alpha, j0, j0 - 1);
                        if (h < k) {
                            leading_shift.check(qa > HalfInt::whole(1) &&
                                                    qh(hat, h) == qa - HalfInt::whole(1),
                                                alpha, h);
                        }
                        for (int j = 0; j <= r; ++j) {
                            if (alpha[j] <= 0) continue;
                            for (int jp = 0; jp <= std::min(j + 1, r); ++jp) {
                                if (hat[j] <= 0) continue;
                                const BlockMultiIndex beta = shift(hat, j, jp);
                                double_shift.check(
                                    qa + qh(hat, h) >= 2 * qh(beta, h) - HalfInt::whole(1),
                                    alpha, h);
                            }
                        }
                    }

                    // Strict componentwise sub-indices, first entry raised twice.
                    {
                        std::vector<int> sub(static_cast<std::size_t>(r + 1), 0);
                        bool done = false;
                        while (!done) {
                            bool strict = false;
                            for (int i = 0; i <= r; ++i)
                                if (sub[static_cast<std::size_t>(i)] < alpha[i]) strict = true;
                            if (strict) {
                                BlockMultiIndex beta{sub};
                                beta.entries[0] += 2;
                                sub_double.check(qa >= qh(beta, h) - HalfInt::whole(1),
                                                 alpha, h);
                            }
                            int i = r;
                            for (; i >= 0; --i) {
                                if (sub[static_cast<std::size_t>(i)] < alpha[i]) {
                                    ++sub[static_cast<std::size_t>(i)];
                                    for (int t = i + 1; t <= r; ++t)
                                        sub[static_cast<std::size_t>(t)] = 0;
                                    break;
                                }
                                if (i == 0) done = true;
                            }
                            if (i < 0) done = true;
                        }
                    }
                }
            }

            // Companion pairing: for indices with vanishing first entry,
            // q_h(companion) + q_h(self) equals (2 q_h(self) - 1)^+ whenever
            // q_h(self) >= 1.
            if (k >= 1) {
                const auto& list = enumerate_ordered(k, r);
                for (int m = static_cast<int>(block_count(k - 1, r)) + 1;
                     m <= static_cast<int>(list.size()); ++m) {
                    int lm = companion_index(m, k, r);
                    if (mutation.perturb_companion) lm = std::max(1, m - 1);
                    const auto& self = list[static_cast<std::size_t>(m - 1)];
                    const auto& comp = list[static_cast<std::size_t>(lm - 1)];
                    for (int h = 0; h <= h_max; ++h) {
                        const HalfInt qm = qh(self, h);
                        if (qm < HalfInt::whole(1)) continue;
                        const HalfInt sum = qh(comp, h) + qm;
                        const HalfInt expect = (2 * qm - HalfInt::whole(1)).positive_part();
                        pairing.check(sum == expect, self, h);
                    }
                }
            }
        }
    }

    ExponentSuiteResult out;
    out.properties = {zero_iff_small.result, lower_bound.result,  first_block.result,
                      single_shift.result,   leading_shift.result, double_shift.result,
                      sub_double.result,     monotone_h.result,    matches_plain.result,
                      pairing.result};
    return out;
}

std::string exponent_table_csv(int r, int k_max, int h_max) {
    std::ostringstream os;
    os << "r,order,position";
    for (int i = 0; i <= r; ++i) os << ",b" << i;
    os << ",h,twice_weight\n";
    for (int k = 0; k <= k_max; ++k) {
        const auto& list = enumerate_ordered(k, r);
        for (std::size_t m = 0; m < list.size(); ++m) {
            for (int h = 0; h <= h_max; ++h) {
                os << r << "," << k << "," << (m + 1);
                for (int i = 0; i <= r; ++i) os << "," << list[m][i];
                os << "," << h << ","
                   << decay_exponent_reduced(list[m], h).twice_value() << "\n";
            }
        }
    }
    return os.str();
}

}  // namespace ousemi
