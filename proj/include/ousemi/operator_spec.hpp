#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ousemi/linalg.hpp"

namespace ousemi {

/// Degenerate second-order operator
///   A u = sum_{i,j < p0} q_ij(x) D_ij u + <B x, D u> + sum_{j < p0} F_j(x) D_j u.
/// The diffusion acts on the first p0 coordinates only; its smallest
/// eigenvalue must stay above nu_floor everywhere it is sampled.
struct OperatorSpec {
    int dim_n = 0;
    int p0 = 0;
    Matrix drift_b;                                   // N x N
    std::function<Matrix(const Vector&)> q0_eval;     // p0 x p0, symmetric
    std::function<Vector(const Vector&)> f_eval;      // optional, p0 entries
    double nu_floor = 0.0;

    bool degenerate() const { return p0 < dim_n; }

    /// Q padded with zeros to the ambient dimension.
    Matrix embedded_q(const Vector& x) const;

    void check_shape() const;  // throws on inconsistent dimensions
};

/// Constant-coefficient special case A u = Tr(Q D^2 u) + <B x, D u>.
struct ConstantOperatorSpec {
    int dim_n = 0;
    Matrix q_const;  // N x N symmetric PSD
    Matrix drift_b;  // N x N

    void check_shape() const;
    OperatorSpec as_operator_spec() const;  // p0 = N, q evaluator constant
};

struct ValidationCheck {
    std::string name;
    bool passed = true;
    double value = 0.0;    // measured quantity (ratio, defect, ...)
    std::string witness;   // where the worst case occurred
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool passed = true;
    // Empirical growth constants per derivative order 0..2, and for F.
    std::vector<double> growth_constants;
    double f_growth_constant = 0.0;

    std::string to_text() const;
};

/// Samples the structural hypotheses: symmetry of Q, the ellipticity floor,
/// and the growth of Q- and F-derivatives against |x| and the local
/// ellipticity. Derivatives are estimated with central differences of step
/// fd_step; growth constants are reported as the largest observed ratio and
/// compared against growth_budget (the underlying theory fixes no constant,
/// so the budget is a caller choice).
ValidationReport validate_hypotheses(const OperatorSpec& spec,
                                     const std::vector<Vector>& sample_points,
                                     double fd_step, double growth_budget = 100.0);

}  // namespace ousemi
