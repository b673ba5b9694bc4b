#include "ousemi/kalman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ousemi {

KalmanRankResult kalman_rank(const Matrix& q_mat, const Matrix& b_mat, int r_max) {
    const auto n = q_mat.rows();
    if (q_mat.cols() != n || b_mat.rows() != n || b_mat.cols() != n)
        throw std::invalid_argument("kalman_rank: dimension mismatch");
    if (r_max < 0) throw std::invalid_argument("kalman_rank: r_max must be >= 0");

    const int r_cap = std::min<int>(r_max, static_cast<int>(n) - 1);
    Matrix stacked(n, 0);
    Matrix power = q_mat;
    KalmanRankResult out;
    for (int r = 0; r <= std::max(r_cap, 0); ++r) {
        Matrix next(n, stacked.cols() + n);
        next << stacked, power;
        stacked = std::move(next);
        power = b_mat * power;
        out.rank = numerical_rank(stacked);
        out.r_used = r;
        if (out.rank == n) break;
    }
    if (out.rank < n && r_max > r_cap) {
        for (int r = r_cap + 1; r <= r_max; ++r) {
            Matrix next(n, stacked.cols() + n);
            next << stacked, power;
            stacked = std::move(next);
            power = b_mat * power;
            out.r_used = r;
        }
        out.rank = numerical_rank(stacked);
    }
    out.holds = (out.rank == n);
    return out;
}

Matrix gramian(const Matrix& q_mat, const Matrix& b_mat, double t) {
    const auto n = q_mat.rows();
    if (q_mat.cols() != n || b_mat.rows() != n || b_mat.cols() != n)
        throw std::invalid_argument("gramian: dimension mismatch");
    if (t <= 0) throw std::invalid_argument("gramian: t must be positive");

    auto rhs = [&](double, const Matrix& y) -> Matrix {
        return b_mat * y + y * b_mat.transpose() + q_mat;
    };
    Matrix g = integrate_matrix_ode(rhs, Matrix::Zero(n, n), t, 1e-10);
    return 0.5 * (g + g.transpose());
}

Matrix gramian_quadrature(const Matrix& q_mat, const Matrix& b_mat, double t,
                          int panels, int nodes) {
    if (nodes != 10)
        throw std::invalid_argument("gramian_quadrature: only 10-node rule provided");
    // 10-point Gauss-Legendre on [-1, 1].
    static const double x[5] = {0.1488743389816312, 0.4333953941292472,
                                0.6794095682990244, 0.8650633666889845,
                                0.9739065285171717};
    static const double w[5] = {0.2955242247147529, 0.2692667193099963,
                                0.2190863625159820, 0.1494513491505806,
                                0.0666713443086881};
    const auto n = q_mat.rows();
    Matrix acc = Matrix::Zero(n, n);
    const double hp = t / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * hp;
        for (int i = 0; i < 5; ++i) {
            for (double sgn : {-1.0, 1.0}) {
                const double s = mid + sgn * 0.5 * hp * x[i];
                const Matrix e = matrix_exp(s * b_mat);
                acc += (0.5 * hp * w[i]) * (e * q_mat * e.transpose());
            }
        }
    }
    return 0.5 * (acc + acc.transpose());
}

NestedKernelsResult nested_kernels(const Matrix& q_mat, const Matrix& b_mat) {
    const auto n = q_mat.rows();
    if (q_mat.cols() != n || b_mat.rows() != n || b_mat.cols() != n)
        throw std::invalid_argument("nested_kernels: dimension mismatch");

    NestedKernelsResult out;
    Matrix stacked(0, n);
    Matrix power = Matrix::Identity(n, n);
    for (int r = 1; r <= n; ++r) {
        Matrix next(stacked.rows() + n, n);
        next << stacked, q_mat * power;
        stacked = std::move(next);
        power = power * b_mat.transpose();
        const int dim = static_cast<int>(n) - numerical_rank(stacked);
        out.dims.push_back(dim);
        if (dim == 0 && !out.k0) out.k0 = r;
    }
    return out;
}

bool invariant_subspace_free(const Matrix& q_mat, const Matrix& b_mat) {
    const auto n = q_mat.rows();
    if (q_mat.cols() != n || b_mat.rows() != n || b_mat.cols() != n)
        throw std::invalid_argument("invariant_subspace_free: dimension mismatch");

    // Largest B^T-invariant subspace of ker(Q): iterate
    // S <- S intersect (B^T)^{-1} S until the dimension stops dropping.
    Matrix s = null_space(q_mat);
    if (s.cols() == 0) return true;
    for (int iter = 0; iter <= n; ++iter) {
        // (B^T)^{-1} S = ker(P_{S^perp} B^T), with P the orthogonal projector.
        const Matrix proj_perp = Matrix::Identity(n, n) - s * s.transpose();
        const Matrix pre = null_space(proj_perp * b_mat.transpose());
        // Intersection of span(s) and span(pre): kernel trick on stacked
        // orthogonal projectors.
        Matrix stacked(2 * n, n);
        stacked << (Matrix::Identity(n, n) - s * s.transpose()),
            (Matrix::Identity(n, n) - pre * pre.transpose());
        Matrix inter = null_space(stacked);
        if (inter.cols() == 0) return true;
        if (inter.cols() == s.cols()) return false;  // stabilized, nontrivial
        s = inter;
    }
    return s.cols() == 0;
}

namespace {

HypoellipticityReport analyze_single(const Matrix& q_mat, const Matrix& b_mat,
                                     const std::vector<double>& probe_times) {
    const auto n = q_mat.rows();
    HypoellipticityReport rep;

    auto kr = kalman_rank(q_mat, b_mat, static_cast<int>(n) - 1);
    rep.rank_condition = kr.holds;
    rep.rank = kr.rank;

    rep.gramian_pd = true;
    rep.min_gramian_eigenvalue = std::numeric_limits<double>::infinity();
    for (double t : probe_times) {
        const double lam = min_eigenvalue(gramian(q_mat, b_mat, t));
        rep.min_gramian_eigenvalue = std::min(rep.min_gramian_eigenvalue, lam);
        if (lam <= 1e-10) rep.gramian_pd = false;
    }

    auto nk = nested_kernels(q_mat, b_mat);
    rep.nested_kernel_k0 = nk.k0;
    rep.w_space_trivial = (nk.dims.back() == 0);
    rep.invariant_subspace_free = invariant_subspace_free(q_mat, b_mat);

    const bool votes[5] = {rep.rank_condition, rep.gramian_pd, rep.nested_kernel_k0.has_value(),
                           rep.invariant_subspace_free, rep.w_space_trivial};
    rep.consistent = true;
    for (bool v : votes) rep.consistent = rep.consistent && (v == votes[0]);
    rep.hypoelliptic = rep.rank_condition;
    return rep;
}

}  // namespace

HypoellipticityReport hypoellipticity_report(const Matrix& q_mat, const Matrix& b_mat,
                                             const std::vector<double>& probe_times) {
    if (probe_times.empty())
        throw std::invalid_argument("hypoellipticity_report: need at least one probe time");
    for (double t : probe_times)
        if (t <= 0) throw std::invalid_argument("hypoellipticity_report: probe times must be positive");
    return analyze_single(q_mat, b_mat, probe_times);
}

HypoellipticityReport hypoellipticity_report_sampled(
    const std::vector<Matrix>& q_samples, const Matrix& b_mat,
    const std::vector<double>& probe_times) {
    if (q_samples.empty())
        throw std::invalid_argument("hypoellipticity_report_sampled: no samples");
    HypoellipticityReport rep = hypoellipticity_report(q_samples.front(), b_mat, probe_times);

    // The structural theory requires the diffusion kernel not to move with x:
    // compare kernel projectors across samples.
    const Matrix k0 = null_space(q_samples.front());
    const auto n = q_samples.front().rows();
    const Matrix p0 = k0 * k0.transpose();
    for (std::size_t i = 1; i < q_samples.size(); ++i) {
        HypoellipticityReport ri = hypoellipticity_report(q_samples[i], b_mat, probe_times);
        rep.rank_condition = rep.rank_condition && ri.rank_condition;
        rep.gramian_pd = rep.gramian_pd && ri.gramian_pd;
        rep.min_gramian_eigenvalue =
            std::min(rep.min_gramian_eigenvalue, ri.min_gramian_eigenvalue);
        if (!ri.nested_kernel_k0) rep.nested_kernel_k0.reset();
        rep.invariant_subspace_free = rep.invariant_subspace_free && ri.invariant_subspace_free;
        rep.w_space_trivial = rep.w_space_trivial && ri.w_space_trivial;
        rep.consistent = rep.consistent && ri.consistent;

        const Matrix ki = null_space(q_samples[i]);
        if ((ki * ki.transpose() - p0).norm() > 1e-8 * std::max(1.0, double(n)))
            rep.kernel_independent_of_x = false;
    }
    rep.hypoelliptic = rep.rank_condition && rep.kernel_independent_of_x;
    return rep;
}

std::string HypoellipticityReport::to_text() const {
    std::ostringstream os;
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    os << "hypoellipticity analysis\n";
    os << "  rank condition:            " << yn(rank_condition) << " (rank " << rank << ")\n";
    os << "  gramian positive definite: " << yn(gramian_pd)
       << " (min eigenvalue " << min_gramian_eigenvalue << ")\n";
    os << "  nested kernels vanish:     " << yn(nested_kernel_k0.has_value());
    if (nested_kernel_k0) os << " (at depth " << *nested_kernel_k0 << ")";
    os << "\n";
    os << "  no invariant subspace:     " << yn(invariant_subspace_free) << "\n";
    os << "  joint kernel trivial:      " << yn(w_space_trivial) << "\n";
    os << "  kernel independent of x:   " << yn(kernel_independent_of_x) << "\n";
    os << "  routes consistent:         " << yn(consistent) << "\n";
    os << "  hypoelliptic:              " << yn(hypoelliptic) << "\n";
    return os.str();
}

std::vector<std::pair<std::string, std::string>> HypoellipticityReport::to_kv() const {
    auto b = [](bool v) { return v ? std::string("1") : std::string("0"); };
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("rank_condition", b(rank_condition));
    kv.emplace_back("rank", std::to_string(rank));
    kv.emplace_back("gramian_pd", b(gramian_pd));
    kv.emplace_back("min_gramian_eigenvalue", std::to_string(min_gramian_eigenvalue));
    kv.emplace_back("nested_kernel_k0",
                    nested_kernel_k0 ? std::to_string(*nested_kernel_k0) : "none");
    kv.emplace_back("invariant_subspace_free", b(invariant_subspace_free));
    kv.emplace_back("w_space_trivial", b(w_space_trivial));
    kv.emplace_back("kernel_independent_of_x", b(kernel_independent_of_x));
    kv.emplace_back("consistent", b(consistent));
    kv.emplace_back("hypoelliptic", b(hypoelliptic));
    return kv;
}

}  // namespace ousemi
