#include "ousemi/multiindex.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace ousemi {

namespace {

int sum(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

void enumerate_rec(int k, int slots, std::vector<int>& prefix,
                   std::vector<BlockMultiIndex>& out) {
    if (slots == 1) {
        prefix.push_back(k);
        out.push_back(BlockMultiIndex{prefix});
        prefix.pop_back();
        return;
    }
    for (int v = k; v >= 0; --v) {
        prefix.push_back(v);
        enumerate_rec(k - v, slots - 1, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

int BlockMultiIndex::order() const { return sum(entries); }
int FullMultiIndex::order() const { return sum(entries); }

bool ordered_before(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("ordered_before: length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

std::int64_t block_count(int k, int q) {
    if (k < 0) return 0;
    // binom(q + k, q)
    std::int64_t num = 1;
    for (int i = 1; i <= q; ++i) num = num * (k + i) / i;
    return num;
}

const std::vector<BlockMultiIndex>& enumerate_ordered(int k, int q) {
    if (k < 0 || q < 0) throw std::invalid_argument("enumerate_ordered: negative argument");
    static std::map<std::pair<int, int>, std::vector<BlockMultiIndex>> cache;
    static std::shared_mutex mutex;
    const auto key = std::make_pair(k, q);
    {
        std::shared_lock lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::unique_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<BlockMultiIndex> list;
    std::vector<int> prefix;
    enumerate_rec(k, q + 1, prefix, list);
    return cache.emplace(key, std::move(list)).first->second;
}

int position_of(const BlockMultiIndex& beta, int q) {
    if (beta.size() != q + 1)
        throw std::invalid_argument("position_of: wrong number of blocks");
    const auto& list = enumerate_ordered(beta.order(), q);
    auto it = std::lower_bound(list.begin(), list.end(), beta,
                               [](const BlockMultiIndex& a, const BlockMultiIndex& b) {
                                   return ordered_before(a.entries, b.entries);
                               });
    if (it == list.end() || !(*it == beta))
        throw std::logic_error("position_of: index not found");
    return static_cast<int>(it - list.begin()) + 1;
}

int companion_index(int m, int k, int r) {
    const auto& list = enumerate_ordered(k, r);
    if (m < 1 || m > static_cast<int>(list.size()))
        throw std::invalid_argument("companion_index: position out of range");
    if (m <= block_count(k - 1, r))
        throw std::invalid_argument("companion_index: first entry must vanish");
    const auto& beta = list[static_cast<std::size_t>(m - 1)];
    int j = -1;
    for (int i = 1; i <= r; ++i) {
        if (beta[i] > 0) { j = i; break; }
    }
    if (j < 0) throw std::logic_error("companion_index: zero multi-index");
    BlockMultiIndex target = beta;
    target.entries[static_cast<std::size_t>(j)] -= 1;
    target.entries[static_cast<std::size_t>(j - 1)] += 1;
    return position_of(target, r);
}

namespace {

// Applies a shift e_from -> e_to if the source entry is positive; returns the
// 1-based position of the result, or nothing if the shift is not admissible.
std::optional<int> shifted_position(const BlockMultiIndex& beta, int from, int to, int r) {
    if (from < 0 || from > r || to < 0 || to > r) return std::nullopt;
    if (beta[from] <= 0) return std::nullopt;
    BlockMultiIndex out = beta;
    out.entries[static_cast<std::size_t>(from)] -= 1;
    out.entries[static_cast<std::size_t>(to)] += 1;
    return position_of(out, r);
}

}  // namespace

std::set<int> set_a(int l, int m, int r) {
    const auto& list = enumerate_ordered(l, r);
    if (m < 1 || m > static_cast<int>(list.size()))
        throw std::invalid_argument("set_a: position out of range");
    if (m <= block_count(l - 1, r))
        throw std::invalid_argument("set_a: first entry must vanish");
    const auto& beta = list[static_cast<std::size_t>(m - 1)];

    std::vector<int> nz;
    for (int i = 1; i <= r; ++i)
        if (beta[i] > 0) nz.push_back(i);
    const int j1 = nz.front();

    std::set<int> out;
    // Companion-shift followed by a single shift from each later nonzero block.
    BlockMultiIndex shifted = beta;
    shifted.entries[static_cast<std::size_t>(j1)] -= 1;
    shifted.entries[static_cast<std::size_t>(j1 - 1)] += 1;
    for (std::size_t i = 1; i < nz.size(); ++i) {
        const int ji = nz[i];
        for (int h = 0; h <= std::min(ji + 1, r); ++h) {
            if (auto s = shifted_position(shifted, ji, h, r)) out.insert(*s);
        }
    }
    // Single shift out of the leading nonzero block, landing no higher than it.
    for (int h = 0; h <= j1; ++h) {
        if (auto s = shifted_position(beta, j1, h, r)) out.insert(*s);
    }
    // Double shift out of the leading block, available only when it holds at
    // least two derivatives.
    if (beta[j1] > 1) {
        for (int h = 0; h <= std::min(j1 + 1, r); ++h) {
            if (auto s = shifted_position(shifted, j1, h, r)) out.insert(*s);
        }
    }
    return out;
}

std::set<int> set_b(int l, int m, int r) {
    const auto& list = enumerate_ordered(l, r);
    if (m < 1 || m > static_cast<int>(list.size()))
        throw std::invalid_argument("set_b: position out of range");
    const auto& beta = list[static_cast<std::size_t>(m - 1)];
    std::set<int> out;
    for (int j = 0; j <= r; ++j) {
        if (beta[j] <= 0) continue;
        for (int h = 0; h <= std::min(j + 1, r); ++h) {
            if (auto s = shifted_position(beta, j, h, r)) out.insert(*s);
        }
    }
    return out;
}

std::vector<std::pair<int, int>> set_c(int l, int m, int r) {
    const auto& list = enumerate_ordered(l, r);
    if (m < 1 || m > static_cast<int>(list.size()))
        throw std::invalid_argument("set_c: position out of range");
    const auto& beta = list[static_cast<std::size_t>(m - 1)];

    // Targets b with b0 in [2, beta0 + 2], b_j <= beta_j for j >= 1, total
    // order in [2, l + 1], at least one derivative spent on the coefficient.
    std::vector<std::pair<int, int>> out;
    for (int z = 2; z <= l + 1; ++z) {
        for (std::size_t s = 0; s < enumerate_ordered(z, r).size(); ++s) {
            const auto& b = enumerate_ordered(z, r)[s];
            if (b[0] < 2 || b[0] > beta[0] + 2) continue;
            bool ok = true;
            for (int j = 1; j <= r; ++j)
                if (b[j] > beta[j]) { ok = false; break; }
            if (!ok) continue;
            const int spent = l + 2 - z;
            if (spent < 1) continue;
            out.emplace_back(z, static_cast<int>(s) + 1);
        }
    }
    return out;
}

BlockMultiIndex compress(const FullMultiIndex& alpha,
                         const std::vector<int>& block_sizes) {
    if (alpha.size() != sum(block_sizes))
        throw std::invalid_argument("compress: dimension mismatch");
    BlockMultiIndex out;
    out.entries.reserve(block_sizes.size());
    int pos = 0;
    for (int p : block_sizes) {
        int total = 0;
        for (int i = 0; i < p; ++i) total += alpha[pos + i];
        out.entries.push_back(total);
        pos += p;
    }
    return out;
}

std::int64_t block_slot_count(const BlockMultiIndex& beta,
                              const std::vector<int>& block_sizes) {
    if (beta.size() != static_cast<int>(block_sizes.size()))
        throw std::invalid_argument("block_slot_count: block mismatch");
    std::int64_t total = 1;
    for (int j = 0; j < beta.size(); ++j)
        total *= block_count(beta[j], block_sizes[static_cast<std::size_t>(j)] - 1);
    return total;
}

std::vector<FullMultiIndex> enumerate_full(int order, int nvars) {
    std::vector<BlockMultiIndex> raw = enumerate_ordered(order, nvars - 1);
    std::vector<FullMultiIndex> out;
    out.reserve(raw.size());
    for (auto& b : raw) out.push_back(FullMultiIndex{std::move(b.entries)});
    return out;
}

DerivativeSplit split_derivatives(int k, const std::vector<int>& block_sizes) {
    const int r = static_cast<int>(block_sizes.size()) - 1;
    const int n = sum(block_sizes);
    const auto& block_list = enumerate_ordered(k, r);

    DerivativeSplit split;
    split.order = k;
    split.blocks.resize(block_list.size());

    for (const auto& alpha : enumerate_full(k, n)) {
        const BlockMultiIndex c = compress(alpha, block_sizes);
        const int j = position_of(c, r);
        split.blocks[static_cast<std::size_t>(j - 1)].push_back(alpha);
    }
    // Descending canonical order inside each block.
    for (auto& block : split.blocks) {
        std::sort(block.begin(), block.end(),
                  [](const FullMultiIndex& a, const FullMultiIndex& b) {
                      return ordered_before(b.entries, a.entries);
                  });
    }
    return split;
}

int DerivativeSplit::block_of(const FullMultiIndex& alpha,
                              const std::vector<int>& block_sizes) const {
    const int r = static_cast<int>(block_sizes.size()) - 1;
    return position_of(compress(alpha, block_sizes), r);
}

std::string enumeration_table_csv(int k_max, int q) {
    std::ostringstream os;
    os << "order,position";
    for (int i = 0; i <= q; ++i) os << ",b" << i;
    os << "\n";
    for (int k = 0; k <= k_max; ++k) {
        const auto& list = enumerate_ordered(k, q);
        for (std::size_t m = 0; m < list.size(); ++m) {
            os << k << "," << (m + 1);
            for (int i = 0; i <= q; ++i) os << "," << list[m][i];
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace ousemi
