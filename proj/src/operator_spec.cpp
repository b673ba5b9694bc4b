#include "ousemi/operator_spec.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ousemi {

Matrix OperatorSpec::embedded_q(const Vector& x) const {
    Matrix q = Matrix::Zero(dim_n, dim_n);
    q.topLeftCorner(p0, p0) = q0_eval(x);
    return q;
}

void OperatorSpec::check_shape() const {
    if (dim_n < 1) throw std::invalid_argument("OperatorSpec: dimension must be positive");
    if (p0 < 1 || p0 > dim_n)
        throw std::invalid_argument("OperatorSpec: p0 must lie in [1, N]");
    if (drift_b.rows() != dim_n || drift_b.cols() != dim_n)
        throw std::invalid_argument("OperatorSpec: drift matrix must be N x N");
    if (!q0_eval) throw std::invalid_argument("OperatorSpec: missing diffusion evaluator");
    if (nu_floor <= 0) throw std::invalid_argument("OperatorSpec: nu_floor must be positive");
}

void ConstantOperatorSpec::check_shape() const {
    if (dim_n < 1) throw std::invalid_argument("ConstantOperatorSpec: dimension must be positive");
    if (q_const.rows() != dim_n || q_const.cols() != dim_n)
        throw std::invalid_argument("ConstantOperatorSpec: Q must be N x N");
    if (drift_b.rows() != dim_n || drift_b.cols() != dim_n)
        throw std::invalid_argument("ConstantOperatorSpec: B must be N x N");
    if ((q_const - q_const.transpose()).norm() > 1e-12 * std::max(1.0, q_const.norm()))
        throw std::invalid_argument("ConstantOperatorSpec: Q must be symmetric");
    if (min_eigenvalue(q_const) < -1e-12)
        throw std::invalid_argument("ConstantOperatorSpec: Q must be PSD");
}

OperatorSpec ConstantOperatorSpec::as_operator_spec() const {
    check_shape();
    OperatorSpec spec;
    spec.dim_n = dim_n;
    spec.p0 = dim_n;
    spec.drift_b = drift_b;
    Matrix q = q_const;
    spec.q0_eval = [q](const Vector&) { return q; };
    const double lam = min_eigenvalue(q_const);
    spec.nu_floor = lam > 0 ? lam : 1e-12;
    return spec;
}

namespace {

std::string point_str(const Vector& x) {
    std::ostringstream os;
    os << "(";
    for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? "," : "") << x(i);
    os << ")";
    return os.str();
}

// Central finite differences of a matrix-valued map, first and second order.
Matrix fd_first(const std::function<Matrix(const Vector&)>& f, const Vector& x, int i,
                double h) {
    Vector xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    return (f(xp) - f(xm)) / (2 * h);
}

Matrix fd_second(const std::function<Matrix(const Vector&)>& f, const Vector& x, int i,
                 int j, double h) {
    if (i == j) {
        Vector xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        return (f(xp) - 2 * f(x) + f(xm)) / (h * h);
    }
    Vector xpp = x, xpm = x, xmp = x, xmm = x;
    xpp(i) += h; xpp(j) += h;
    xpm(i) += h; xpm(j) -= h;
    xmp(i) -= h; xmp(j) += h;
    xmm(i) -= h; xmm(j) -= h;
    return (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4 * h * h);
}

}  // namespace

ValidationReport validate_hypotheses(const OperatorSpec& spec,
                                     const std::vector<Vector>& sample_points,
                                     double fd_step, double growth_budget) {
    spec.check_shape();
    if (sample_points.empty())
        throw std::invalid_argument("validate_hypotheses: empty sample set");
    if (fd_step <= 0) throw std::invalid_argument("validate_hypotheses: fd_step must be positive");

    ValidationReport rep;
    ValidationCheck symmetry{"q_symmetric"};
    ValidationCheck ellipticity{"ellipticity_floor"};
    std::vector<ValidationCheck> growth(3);
    growth[0].name = "q_growth_order0";
    growth[1].name = "q_growth_order1";
    growth[2].name = "q_growth_order2";
    ValidationCheck fgrowth{"f_growth"};
    rep.growth_constants.assign(3, 0.0);

    const int n = spec.dim_n;
    for (const Vector& x : sample_points) {
        if (x.size() != n)
            throw std::invalid_argument("validate_hypotheses: sample has wrong dimension");
        const Matrix q = spec.q0_eval(x);
        if (q.rows() != spec.p0 || q.cols() != spec.p0)
            throw std::invalid_argument("validate_hypotheses: q evaluator has wrong shape");

        const double asym = (q - q.transpose()).norm();
        if (asym > 1e-12 * std::max(1.0, q.norm()) && symmetry.passed) {
            symmetry.passed = false;
            symmetry.witness = point_str(x);
        }
        symmetry.value = std::max(symmetry.value, asym);

        const double nu = min_eigenvalue(q);
        if (nu < spec.nu_floor - 1e-10 && ellipticity.passed) {
            ellipticity.passed = false;
            ellipticity.witness = point_str(x);
        }
        ellipticity.value = std::max(ellipticity.value, spec.nu_floor - nu);

        // Growth of |D^a q| against |x|^{(1 - |a|)^+} sqrt(nu(x)); the
        // modulus is clamped at 1 so the origin stays admissible.
        const double sq = std::sqrt(std::max(nu, 1e-300));
        const double amp = std::max(1.0, x.norm());
        auto record = [&](int order, double num) {
            const double denom = (order == 0 ? amp : 1.0) * sq;
            const double ratio = num / denom;
            if (ratio > rep.growth_constants[order]) {
                rep.growth_constants[order] = ratio;
                growth[order].value = ratio;
                growth[order].witness = point_str(x);
            }
        };
        record(0, q.cwiseAbs().maxCoeff());
        for (int i = 0; i < n; ++i)
            record(1, fd_first(spec.q0_eval, x, i, fd_step).cwiseAbs().maxCoeff());
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                record(2, fd_second(spec.q0_eval, x, i, j, fd_step).cwiseAbs().maxCoeff());

        if (spec.f_eval) {
            auto fmat = [&](const Vector& y) -> Matrix { return spec.f_eval(y); };
            double num = spec.f_eval(x).cwiseAbs().maxCoeff();
            for (int i = 0; i < n; ++i) {
                num = std::max(num, fd_first(fmat, x, i, fd_step).cwiseAbs().maxCoeff());
                for (int j = i; j < n; ++j)
                    num = std::max(num,
                                   fd_second(fmat, x, i, j, fd_step).cwiseAbs().maxCoeff());
            }
            const double ratio = num / sq;
            if (ratio > rep.f_growth_constant) {
                rep.f_growth_constant = ratio;
                fgrowth.value = ratio;
                fgrowth.witness = point_str(x);
            }
        }
    }

    for (int k = 0; k < 3; ++k)
        if (rep.growth_constants[k] > growth_budget) growth[k].passed = false;
    if (spec.f_eval && rep.f_growth_constant > growth_budget) fgrowth.passed = false;

    rep.checks = {symmetry, ellipticity, growth[0], growth[1], growth[2]};
    if (spec.f_eval) rep.checks.push_back(fgrowth);
    for (const auto& c : rep.checks) rep.passed = rep.passed && c.passed;
    return rep;
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    os << "hypothesis validation: " << (passed ? "pass" : "FAIL") << "\n";
    for (const auto& c : checks) {
        os << "  " << c.name << ": " << (c.passed ? "pass" : "FAIL") << " (value "
           << c.value;
        if (!c.witness.empty()) os << " at " << c.witness;
        os << ")\n";
    }
    return os.str();
}

}  // namespace ousemi
