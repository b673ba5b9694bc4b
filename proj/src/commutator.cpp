#include "ousemi/commutator.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ousemi {

std::vector<DerivativeTerm> drift_commutator(const FullMultiIndex& alpha,
                                             const Matrix& b_mat) {
    const int n = alpha.size();
    if (b_mat.rows() != n || b_mat.cols() != n)
        throw std::invalid_argument("drift_commutator: dimension mismatch");

    std::map<std::vector<int>, double> acc;
    for (int tau = 0; tau < n; ++tau) {
        if (alpha[tau] == 0) continue;
        for (int i = 0; i < n; ++i) {
            const double coef = alpha[tau] * b_mat(i, tau);
            if (coef == 0.0) continue;
            std::vector<int> target = alpha.entries;
            target[static_cast<std::size_t>(tau)] -= 1;
            target[static_cast<std::size_t>(i)] += 1;
            acc[target] += coef;
        }
    }
    std::vector<DerivativeTerm> out;
    out.reserve(acc.size());
    for (auto& [target, coef] : acc) {
        if (coef == 0.0) continue;
        out.push_back({coef, FullMultiIndex{target}});
    }
    return out;
}

std::map<int, Matrix> block_commutator_matrices(int l, int src,
                                                const BlockStructure& structure,
                                                const Matrix& b_mat) {
    structure.validate();
    const DerivativeSplit split = split_derivatives(l, structure.sizes);
    if (src < 1 || src > static_cast<int>(split.blocks.size()))
        throw std::invalid_argument("block_commutator_matrices: source block out of range");

    // Position lookup inside each target block.
    const auto& src_block = split.blocks[static_cast<std::size_t>(src - 1)];
    std::map<int, Matrix> out;
    const int r = structure.r;

    for (std::size_t row = 0; row < src_block.size(); ++row) {
        for (const DerivativeTerm& term : drift_commutator(src_block[row], b_mat)) {
            const int tb = position_of(compress(term.target, structure.sizes), r);
            const auto& target_block = split.blocks[static_cast<std::size_t>(tb - 1)];
            auto it = std::find(target_block.begin(), target_block.end(), term.target);
            if (it == target_block.end())
                throw std::logic_error("block_commutator_matrices: target not in its block");
            const int col = static_cast<int>(it - target_block.begin());
            auto [entry, inserted] = out.try_emplace(
                tb, Matrix::Zero(static_cast<Eigen::Index>(src_block.size()),
                                 static_cast<Eigen::Index>(target_block.size())));
            entry->second(static_cast<Eigen::Index>(row), col) += term.coefficient;
        }
    }
    return out;
}

BlockCoupling assemble_block_coupling(int l, int m, const BlockStructure& structure,
                                      const Matrix& b_mat, double rank_tol) {
    const int r = structure.r;
    if (m <= block_count(l - 1, r))
        throw std::invalid_argument(
            "assemble_block_coupling: block must have no leading-stage derivatives");

    BlockCoupling out;
    out.l = l;
    out.m = m;
    out.companion = companion_index(m, l, r);

    out.companion_terms = block_commutator_matrices(l, out.companion, structure, b_mat);
    out.self_terms = block_commutator_matrices(l, m, structure, b_mat);

    auto it = out.companion_terms.find(m);
    if (it == out.companion_terms.end()) {
        std::ostringstream os;
        os << "assemble_block_coupling: companion commutator never reaches block " << m
           << " (order " << l << ")";
        throw std::runtime_error(os.str());
    }
    out.coupling = it->second;
    out.companion_terms.erase(it);

    out.min_singular_value = smallest_singular_value(out.coupling);
    const int cols = static_cast<int>(out.coupling.cols());
    const int rows = static_cast<int>(out.coupling.rows());
    if (rows < cols || out.min_singular_value <= rank_tol) {
        std::ostringstream os;
        os << "assemble_block_coupling: coupling for (order " << l << ", block " << m
           << ") is " << rows << "x" << cols << " with smallest singular value "
           << out.min_singular_value;
        throw std::runtime_error(os.str());
    }
    return out;
}

CouplingGauge choose_gauge(const Matrix& j_mat, double rank_tol) {
    const double sv = smallest_singular_value(j_mat);
    if (j_mat.rows() < j_mat.cols() || sv <= rank_tol)
        throw std::invalid_argument("choose_gauge: matrix must have full column rank");
    CouplingGauge out;
    const Matrix gram = j_mat.transpose() * j_mat;
    out.h_mat = -gram.ldlt().solve(j_mat.transpose());
    const Matrix hj = out.h_mat * j_mat;
    out.iota = min_eigenvalue(-hj - hj.transpose());
    return out;
}

}  // namespace ousemi
