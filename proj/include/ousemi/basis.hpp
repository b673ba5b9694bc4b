#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ousemi/linalg.hpp"

namespace ousemi {

/// Coordinate splitting adapted to the degeneracy: an orthogonal change of
/// basis whose column blocks span the saturation stages of the diffusion
/// under the drift, bringing the drift to block lower-Hessenberg form with
/// full-rank sub-diagonal blocks.
struct BlockStructure {
    int r = 0;                    // number of sub-diagonal stages
    std::vector<int> sizes;       // p_0 >= p_1 >= ... >= p_r, summing to N
    Matrix basis_u;               // orthogonal, columns grouped by stage
    std::vector<std::pair<int, int>> ranges;  // [begin, end) per stage

    int dim() const { return basis_u.rows() > 0 ? static_cast<int>(basis_u.rows()) : 0; }
    void validate() const;  // throws when the invariants fail

    /// Trivial structure: a single stage covering all of R^N.
    static BlockStructure trivial(int n);
};

/// The increasing family of subspaces spanned by Q, QB^T, ..., complements of
/// the joint kernels; saturates at R^N exactly when the operator is
/// hypoelliptic. Each entry holds an orthonormal column basis.
std::vector<Matrix> nested_spaces(const Matrix& q0, const Matrix& b_mat);

/// Builds the adapted orthonormal basis: stage k spans the orthogonal
/// complement of stage k-1's saturation inside stage k's.
BlockStructure adapted_basis(const Matrix& q0, const Matrix& b_mat);

struct TransformedOperator {
    Matrix b_new;                                   // U^T B U
    Matrix q_new_constant;                          // leading block, constant case
    std::function<Matrix(const Vector&)> q_new;     // leading block, x-dependent case
    std::vector<Matrix> subdiagonal_blocks;         // B_1, ..., B_r
    double max_below_subdiagonal = 0.0;             // largest forbidden entry
    double min_subdiagonal_singular_value = 0.0;
};

/// Conjugates (Q, B) by the adapted basis and verifies the target pattern:
/// zeros below the first block sub-diagonal (1e-10), every sub-diagonal block
/// of full rank (smallest singular value > 1e-8), and the transformed
/// diffusion supported on the leading p_0 x p_0 block (checked at the given
/// sample points for x-dependent Q). Throws with the offending block
/// otherwise.
TransformedOperator transform_operator(const Matrix& q_full, const Matrix& b_mat,
                                       const BlockStructure& structure);
TransformedOperator transform_operator(
    const std::function<Matrix(const Vector&)>& q_full_eval, const Matrix& b_mat,
    const BlockStructure& structure, const std::vector<Vector>& sample_points);

/// Config-style round trip so downstream runs can use adapted coordinates.
std::string structure_to_config(const BlockStructure& s);
BlockStructure structure_from_config(const std::string& text);

}  // namespace ousemi
