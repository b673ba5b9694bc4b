#pragma once

#include <map>
#include <vector>

#include "ousemi/basis.hpp"
#include "ousemi/linalg.hpp"
#include "ousemi/multiindex.hpp"

namespace ousemi {

/// One term of a derivative combination: coefficient times D^target.
struct DerivativeTerm {
    double coefficient = 0.0;
    FullMultiIndex target;
};

/// Commutator of D^alpha with the drift <B x, D>: the exact finite sum
///   sum_tau alpha_tau b_{i,tau} D^{alpha - e_tau + e_i}.
/// Coefficients are products of entries of alpha with entries of B; duplicate
/// targets are merged.
std::vector<DerivativeTerm> drift_commutator(const FullMultiIndex& alpha,
                                             const Matrix& b_mat);

/// Commutator of one derivative block with the drift, resolved into matrices
/// acting on the blocks of the same order: for source block index src (into
/// the order-l block enumeration), target t carries a matrix of shape
/// (#source slots) x (#target slots) whose entries are linear in B.
std::map<int, Matrix> block_commutator_matrices(int l, int src,
                                                const BlockStructure& structure,
                                                const Matrix& b_mat);

/// The coupling data used by the weighted derivative estimates for one block
/// index m > block_count(l-1, r): the commutator of the companion block,
/// split into the square coupling matrix onto block m itself (full column
/// rank whenever every sub-diagonal drift block has full rank) and the
/// remaining companion terms; plus the self-commutator terms of block m.
struct BlockCoupling {
    int l = 0;
    int m = 0;
    int companion = 0;
    Matrix coupling;                      // companion block -> block m
    std::map<int, Matrix> companion_terms;  // other targets of the companion block
    std::map<int, Matrix> self_terms;       // targets of block m's own commutator
    double min_singular_value = 0.0;
};

/// Assembles the coupling for (l, m) and verifies full column rank of the
/// coupling matrix (smallest singular value above rank_tol). Throws with the
/// offending block and singular value otherwise.
BlockCoupling assemble_block_coupling(int l, int m, const BlockStructure& structure,
                                      const Matrix& b_mat, double rank_tol = 1e-8);

/// Left inverse choice for a full-column-rank coupling matrix J: H = -(J^T
/// J)^{-1} J^T, so that -HJ - (HJ)^T = 2I. Returns H together with the
/// smallest eigenvalue of that symmetrized product (2 up to roundoff).
struct CouplingGauge {
    Matrix h_mat;
    double iota = 0.0;
};
CouplingGauge choose_gauge(const Matrix& j_mat, double rank_tol = 1e-8);

}  // namespace ousemi
