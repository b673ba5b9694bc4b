#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ousemi/linalg.hpp"

namespace ousemi {

struct KalmanRankResult {
    int rank = 0;
    int r_used = 0;
    bool holds = false;
};

/// Rank of [Q, BQ, ..., B^r Q] for the smallest r <= min(r_max, N-1) giving
/// full rank, else for r = r_max.
KalmanRankResult kalman_rank(const Matrix& q_mat, const Matrix& b_mat, int r_max);

/// Controllability Gramian: integral over [0, t] of exp(sB) Q exp(sB)^T,
/// computed from its defining matrix ODE with an adaptive integrator and
/// symmetrized. Relative accuracy ~1e-8.
Matrix gramian(const Matrix& q_mat, const Matrix& b_mat, double t);

/// Gauss-Legendre quadrature of the same integral; test oracle for gramian.
Matrix gramian_quadrature(const Matrix& q_mat, const Matrix& b_mat, double t,
                          int panels = 16, int nodes = 10);

struct NestedKernelsResult {
    std::vector<int> dims;        // dim of the joint kernel after r = 1..N factors
    std::optional<int> k0;        // first r with trivial kernel, if any
};

/// Joint kernels of Q (B^T)^k for k = 0..r-1, r = 1..N.
NestedKernelsResult nested_kernels(const Matrix& q_mat, const Matrix& b_mat);

/// True when ker(Q) contains no nontrivial B^T-invariant subspace, decided by
/// shrinking ker(Q) under preimages of B^T until stable. Deliberately a
/// different algorithm from nested_kernels so the two can cross-check.
bool invariant_subspace_free(const Matrix& q_mat, const Matrix& b_mat);

struct HypoellipticityReport {
    bool rank_condition = false;
    int rank = 0;
    bool gramian_pd = false;
    double min_gramian_eigenvalue = 0.0;
    std::optional<int> nested_kernel_k0;
    bool invariant_subspace_free = false;
    bool w_space_trivial = false;
    bool kernel_independent_of_x = true;  // only meaningful for sampled specs
    bool consistent = false;              // the five routes agree
    bool hypoelliptic = false;

    std::string to_text() const;
    std::vector<std::pair<std::string, std::string>> to_kv() const;
};

/// Runs all five characterizations for a constant pair (Q, B).
HypoellipticityReport hypoellipticity_report(const Matrix& q_mat, const Matrix& b_mat,
                                             const std::vector<double>& probe_times);

/// Variant for x-dependent diffusion sampled at several points: each sample
/// is analyzed and the kernels are compared across samples (they must agree
/// for the block machinery to apply). The sampled comparison is this
/// module's own device; the underlying theory assumes it.
HypoellipticityReport hypoellipticity_report_sampled(
    const std::vector<Matrix>& q_samples, const Matrix& b_mat,
    const std::vector<double>& probe_times);

}  // namespace ousemi
