#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace ousemi {

/// Multi-index over the anisotropy blocks: entry k counts derivatives taken
/// in the k-th block of variables. Always has r+1 entries.
struct BlockMultiIndex {
    std::vector<int> entries;

    int order() const;
    int size() const { return static_cast<int>(entries.size()); }
    int operator[](int i) const { return entries[static_cast<std::size_t>(i)]; }
    bool operator==(const BlockMultiIndex&) const = default;
};

/// Multi-index over the ambient coordinates (N entries).
struct FullMultiIndex {
    std::vector<int> entries;

    int order() const;
    int size() const { return static_cast<int>(entries.size()); }
    int operator[](int i) const { return entries[static_cast<std::size_t>(i)]; }
    bool operator==(const FullMultiIndex&) const = default;
};

/// Total order on multi-indices of equal length: a precedes b when, at the
/// first position where they differ, a has the larger entry.
bool ordered_before(const std::vector<int>& a, const std::vector<int>& b);

/// binom(q + k, q): the number of multi-indices in N_0^{q+1} of order k.
std::int64_t block_count(int k, int q);

/// All multi-indices in N_0^{q+1} of order k, listed in the canonical total
/// order (ordered_before). Cached; safe for concurrent readers.
const std::vector<BlockMultiIndex>& enumerate_ordered(int k, int q);

/// 1-based position of beta within enumerate_ordered(order(beta), q).
int position_of(const BlockMultiIndex& beta, int q);

/// For the m-th index (1-based) of the order-k enumeration over r+1 blocks,
/// with vanishing first entry (m > block_count(k-1, r)): the position of the
/// companion index obtained by moving one derivative from the leading nonzero
/// block one block down. Strictly smaller than m, and its exponent weight is
/// exactly one less.
int companion_index(int m, int k, int r);

/// Index families coupling a block to the targets of the drift commutator.
/// set_a: targets reachable from the companion block's commutator.
/// set_b: targets reachable from the block's own commutator (single shifts).
std::set<int> set_a(int l, int m, int r);
std::set<int> set_b(int l, int m, int r);

/// Target (order, position) pairs reachable from block m of order l under a
/// commutator with a variable second-order coefficient: first entry raised by
/// up to two and at least one derivative spent on the coefficient. This set
/// is reconstructed from the commutator shape, not taken from a closed-form
/// definition; treat it as derived data.
std::vector<std::pair<int, int>> set_c(int l, int m, int r);

/// Splitting of the ambient derivative vector of order k into blocks.
/// Block j (1-based) holds every full multi-index whose block compression is
/// the j-th entry of enumerate_ordered(k, r); inside a block the indices are
/// stored in descending canonical order (rule shared by every consumer).
struct DerivativeSplit {
    int order = 0;
    std::vector<std::vector<FullMultiIndex>> blocks;

    int block_of(const FullMultiIndex& alpha,
                 const std::vector<int>& block_sizes) const;
};

/// block_sizes are the p_0 >= ... >= p_r of the coordinate splitting.
DerivativeSplit split_derivatives(int k, const std::vector<int>& block_sizes);

/// Compression |alpha| = (order in block 0, ..., order in block r).
BlockMultiIndex compress(const FullMultiIndex& alpha,
                         const std::vector<int>& block_sizes);

/// Number of full multi-indices compressing to beta.
std::int64_t block_slot_count(const BlockMultiIndex& beta,
                              const std::vector<int>& block_sizes);

/// All full multi-indices over N variables of the given order, canonical order.
std::vector<FullMultiIndex> enumerate_full(int order, int nvars);

/// CSV dump of enumerate_ordered(k, q) for k <= k_max: columns k, position,
/// entries. Used by the CLI table export.
std::string enumeration_table_csv(int k_max, int q);

}  // namespace ousemi
