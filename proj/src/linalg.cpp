#include "ousemi/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace ousemi {

Matrix matrix_exp(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exp: not square");
    return a.exp();
}

namespace {

Eigen::JacobiSVD<Matrix> svd_of(const Matrix& a, unsigned options = 0) {
    return Eigen::JacobiSVD<Matrix>(a, options);
}

}  // namespace

int numerical_rank(const Matrix& a, double rel_tol) {
    if (a.size() == 0) return 0;
    auto svd = svd_of(a);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    const double cutoff = rel_tol * s(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) ++rank;
    return rank;
}

Matrix null_space(const Matrix& a, double rel_tol) {
    if (a.size() == 0) return Matrix::Identity(a.cols(), a.cols());
    auto svd = svd_of(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cutoff = (s.size() && s(0) > 0) ? rel_tol * s(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) ++rank;
    return svd.matrixV().rightCols(a.cols() - rank);
}

Matrix range_space(const Matrix& a, double rel_tol) {
    if (a.size() == 0) return Matrix(a.rows(), 0);
    auto svd = svd_of(a, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    const double cutoff = (s.size() && s(0) > 0) ? rel_tol * s(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) ++rank;
    return svd.matrixU().leftCols(rank);
}

double smallest_singular_value(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    auto svd = svd_of(a);
    return svd.singularValues().minCoeff();
}

Matrix psd_sqrt(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.transpose()));
    Vector lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

double min_eigenvalue(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.transpose()),
                                             Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Matrix integrate_matrix_ode(const std::function<Matrix(double, const Matrix&)>& f,
                            Matrix y0, double t, double rtol) {
    if (t < 0) throw std::invalid_argument("integrate_matrix_ode: negative time");
    if (t == 0) return y0;

    // Dormand-Prince 5(4) coefficients.
    static const double c[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static const double a[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static const double b5[7] = {35.0 / 384,      0, 500.0 / 1113, 125.0 / 192,
                                 -2187.0 / 6784, 11.0 / 84, 0};
    static const double b4[7] = {5179.0 / 57600,  0,           7571.0 / 16695, 393.0 / 640,
                                 -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

    double s = 0.0;
    double h = t / 16.0;
    Matrix y = std::move(y0);
    const double scale = std::max(1.0, y.norm());
    int guard = 0;
    while (s < t) {
        if (++guard > 1000000) throw std::runtime_error("integrate_matrix_ode: stalled");
        h = std::min(h, t - s);
        Matrix k[7];
        for (int i = 0; i < 7; ++i) {
            Matrix yi = y;
            for (int j = 0; j < i; ++j)
                if (a[i][j] != 0.0) yi += (h * a[i][j]) * k[j];
            k[i] = f(s + c[i] * h, yi);
        }
        Matrix y5 = y, y4 = y;
        for (int i = 0; i < 7; ++i) {
            if (b5[i] != 0.0) y5 += (h * b5[i]) * k[i];
            if (b4[i] != 0.0) y4 += (h * b4[i]) * k[i];
        }
        const double err = (y5 - y4).norm() / std::max(scale, y5.norm());
        if (err <= rtol || h < 1e-14 * t) {
            y = std::move(y5);
            s += h;
        }
        const double factor =
            (err > 0) ? 0.9 * std::pow(rtol / err, 0.2) : 4.0;
        h *= std::min(4.0, std::max(0.2, factor));
    }
    return y;
}

TraceInequalityResult trace_inequality_check(const Matrix& q_mat, const Matrix& a_mat,
                                             int m) {
    const auto n = q_mat.rows();
    if (q_mat.cols() != n || a_mat.rows() != n || a_mat.cols() != n)
        throw std::invalid_argument("trace_inequality_check: dimension mismatch");
    if (m < 1 || m > n) throw std::invalid_argument("trace_inequality_check: bad block size");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if ((i >= m || j >= m) && std::abs(q_mat(i, j)) > 1e-12)
                throw std::invalid_argument(
                    "trace_inequality_check: q must vanish outside the leading block");
    const Matrix q0 = q_mat.topLeftCorner(m, m);
    const double lam = min_eigenvalue(q0);
    if (lam <= 0)
        throw std::invalid_argument(
            "trace_inequality_check: leading block must be positive definite");

    TraceInequalityResult out;
    out.lhs = (q_mat * a_mat).trace();
    out.rhs = lam * a_mat.topLeftCorner(m, m).trace();
    out.holds = out.lhs >= out.rhs - 1e-10;
    return out;
}

}  // namespace ousemi
