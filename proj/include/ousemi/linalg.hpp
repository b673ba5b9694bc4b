#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace ousemi {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Scaling-and-squaring Pade matrix exponential (Eigen's implementation).
Matrix matrix_exp(const Matrix& a);

/// Numerical rank with threshold rel_tol * largest singular value.
int numerical_rank(const Matrix& a, double rel_tol = 1e-10);

/// Orthonormal basis of the null space (columns), same threshold convention.
Matrix null_space(const Matrix& a, double rel_tol = 1e-10);

/// Orthonormal basis of the range (columns).
Matrix range_space(const Matrix& a, double rel_tol = 1e-10);

/// Smallest singular value (0 for empty matrices).
double smallest_singular_value(const Matrix& a);

/// Symmetric PSD square root; eigenvalues clamped at zero.
Matrix psd_sqrt(const Matrix& a);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& a);

/// Adaptive Dormand-Prince integration of a matrix-valued ODE Y' = F(s, Y)
/// from s = 0 to s = t with relative tolerance rtol.
Matrix integrate_matrix_ode(const std::function<Matrix(double, const Matrix&)>& f,
                            Matrix y0, double t, double rtol = 1e-10);

struct TraceInequalityResult {
    double lhs = 0;  // Tr(Q A)
    double rhs = 0;  // min eigenvalue of the leading block times Tr(A_1)
    bool holds = false;
};

/// Trace comparison for a PSD matrix Q supported on its leading m x m block
/// (entries outside it must vanish) against any PSD A: Tr(QA) is at least the
/// smallest eigenvalue of the leading block of Q times the trace of the
/// leading block of A.
TraceInequalityResult trace_inequality_check(const Matrix& q_mat, const Matrix& a_mat,
                                             int m);

}  // namespace ousemi
