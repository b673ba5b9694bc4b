#include "ousemi/basis.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ousemi {

void BlockStructure::validate() const {
    const int n = dim();
    int total = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (sizes[k] < 1) throw std::invalid_argument("BlockStructure: empty stage");
        if (k > 0 && sizes[k] > sizes[k - 1])
            throw std::invalid_argument("BlockStructure: stage sizes must be non-increasing");
        total += sizes[k];
    }
    if (total != n) throw std::invalid_argument("BlockStructure: stages must partition R^N");
    if (r + 1 != static_cast<int>(sizes.size()))
        throw std::invalid_argument("BlockStructure: r inconsistent with stage count");
    if ((basis_u.transpose() * basis_u - Matrix::Identity(n, n)).norm() > 1e-10 * n)
        throw std::invalid_argument("BlockStructure: basis not orthogonal");
    int begin = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (ranges[k].first != begin || ranges[k].second != begin + sizes[k])
            throw std::invalid_argument("BlockStructure: ranges must be consecutive");
        begin = ranges[k].second;
    }
}

BlockStructure BlockStructure::trivial(int n) {
    BlockStructure s;
    s.r = 0;
    s.sizes = {n};
    s.basis_u = Matrix::Identity(n, n);
    s.ranges = {{0, n}};
    return s;
}

std::vector<Matrix> nested_spaces(const Matrix& q0, const Matrix& b_mat) {
    const auto n = q0.rows();
    if (q0.cols() != n || b_mat.rows() != n || b_mat.cols() != n)
        throw std::invalid_argument("nested_spaces: dimension mismatch");

    std::vector<Matrix> spaces;
    Matrix stacked(0, n);
    Matrix power = Matrix::Identity(n, n);
    for (int k = 0; k < n; ++k) {
        Matrix next(stacked.rows() + n, n);
        next << stacked, q0 * power;
        stacked = std::move(next);
        power = power * b_mat.transpose();

        // Complement of the joint kernel = row space of the stack.
        Matrix v = range_space(stacked.transpose());
        const int dim = static_cast<int>(v.cols());
        if (!spaces.empty() && dim == spaces.back().cols()) {
            if (dim < n)
                throw std::runtime_error(
                    "nested_spaces: saturation stalled below full dimension "
                    "(operator not hypoelliptic)");
            break;
        }
        spaces.push_back(std::move(v));
        if (dim == n) break;
    }
    if (spaces.empty() || spaces.back().cols() < n)
        throw std::runtime_error(
            "nested_spaces: chain did not reach full dimension (operator not hypoelliptic)");
    return spaces;
}

BlockStructure adapted_basis(const Matrix& q0, const Matrix& b_mat) {
    const auto n = q0.rows();
    const std::vector<Matrix> v = nested_spaces(q0, b_mat);

    BlockStructure s;
    s.r = static_cast<int>(v.size()) - 1;
    s.basis_u = Matrix(n, n);
    int col = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        Matrix w;
        if (k == 0) {
            w = v[0];
        } else {
            // Orthogonal complement of the previous stage inside this one:
            // project out and re-orthonormalize.
            const Matrix& prev = v[k - 1];
            Matrix proj = v[k] - prev * (prev.transpose() * v[k]);
            w = range_space(proj);
        }
        const int pk = static_cast<int>(w.cols());
        if (pk == 0) throw std::runtime_error("adapted_basis: degenerate stage");
        s.sizes.push_back(pk);
        s.ranges.emplace_back(col, col + pk);
        s.basis_u.middleCols(col, pk) = w;
        col += pk;
    }
    if (col != n) throw std::logic_error("adapted_basis: stages do not fill R^N");
    s.validate();
    return s;
}

namespace {

TransformedOperator transform_impl(const std::function<Matrix(const Vector&)>& q_eval,
                                   const Matrix& b_mat, const BlockStructure& structure,
                                   const std::vector<Vector>& samples) {
    structure.validate();
    const int n = structure.dim();
    const Matrix& u = structure.basis_u;
    const int p0 = structure.sizes.front();

    TransformedOperator out;
    out.b_new = u.transpose() * b_mat * u;

    // Everything below the first block sub-diagonal must vanish.
    out.max_below_subdiagonal = 0.0;
    for (std::size_t bi = 0; bi < structure.sizes.size(); ++bi) {
        for (std::size_t bj = 0; bj + 1 < bi; ++bj) {
            const auto [ri, re] = structure.ranges[bi];
            const auto [cj, ce] = structure.ranges[bj];
            const double mag =
                out.b_new.block(ri, cj, re - ri, ce - cj).cwiseAbs().maxCoeff();
            out.max_below_subdiagonal = std::max(out.max_below_subdiagonal, mag);
            if (mag > 1e-10) {
                std::ostringstream os;
                os << "transform_operator: block (" << bi << "," << bj
                   << ") below the sub-diagonal has magnitude " << mag;
                throw std::runtime_error(os.str());
            }
        }
    }

    out.min_subdiagonal_singular_value = std::numeric_limits<double>::infinity();
    for (int h = 1; h <= structure.r; ++h) {
        const auto [ri, re] = structure.ranges[static_cast<std::size_t>(h)];
        const auto [cj, ce] = structure.ranges[static_cast<std::size_t>(h - 1)];
        Matrix bh = out.b_new.block(ri, cj, re - ri, ce - cj);
        const double sv = smallest_singular_value(bh);
        out.min_subdiagonal_singular_value = std::min(out.min_subdiagonal_singular_value, sv);
        if (sv <= 1e-8) {
            std::ostringstream os;
            os << "transform_operator: sub-diagonal block " << h
               << " is rank deficient (smallest singular value " << sv << ")";
            throw std::runtime_error(os.str());
        }
        out.subdiagonal_blocks.push_back(std::move(bh));
    }
    if (structure.r == 0) out.min_subdiagonal_singular_value = 0.0;

    auto transformed_q = [u, q_eval](const Vector& y) -> Matrix {
        return u.transpose() * q_eval(u * y) * u;
    };
    for (const Vector& y : samples) {
        const Matrix tq = transformed_q(y);
        double spill = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i >= p0 || j >= p0) spill = std::max(spill, std::abs(tq(i, j)));
        if (spill > 1e-10) {
            std::ostringstream os;
            os << "transform_operator: transformed diffusion leaks outside the leading "
               << p0 << "-block (magnitude " << spill << ")";
            throw std::runtime_error(os.str());
        }
    }
    out.q_new = [transformed_q, p0](const Vector& y) -> Matrix {
        return transformed_q(y).topLeftCorner(p0, p0);
    };
    if (!samples.empty()) out.q_new_constant = out.q_new(samples.front());
    return out;
}

}  // namespace

TransformedOperator transform_operator(const Matrix& q_full, const Matrix& b_mat,
                                       const BlockStructure& structure) {
    Matrix q = q_full;
    auto eval = [q](const Vector&) { return q; };
    std::vector<Vector> samples = {Vector::Zero(q_full.rows())};
    TransformedOperator out = transform_impl(eval, b_mat, structure, samples);
    out.q_new_constant = out.q_new(samples.front());
    return out;
}

TransformedOperator transform_operator(
    const std::function<Matrix(const Vector&)>& q_full_eval, const Matrix& b_mat,
    const BlockStructure& structure, const std::vector<Vector>& sample_points) {
    if (sample_points.empty())
        throw std::invalid_argument("transform_operator: need sample points");
    return transform_impl(q_full_eval, b_mat, structure, sample_points);
}

std::string structure_to_config(const BlockStructure& s) {
    std::ostringstream os;
    os.precision(17);
    os << "[basis]\n";
    os << "sizes =";
    for (int p : s.sizes) os << " " << p;
    os << "\nu =";
    for (Eigen::Index i = 0; i < s.basis_u.rows(); ++i) {
        for (Eigen::Index j = 0; j < s.basis_u.cols(); ++j) os << " " << s.basis_u(i, j);
        if (i + 1 < s.basis_u.rows()) os << " ;";
    }
    os << "\n";
    return os.str();
}

BlockStructure structure_from_config(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<int> sizes;
    std::vector<double> uvals;
    while (std::getline(is, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        std::istringstream vals(line.substr(eq + 1));
        if (key.find("sizes") != std::string::npos) {
            int v;
            while (vals >> v) sizes.push_back(v);
        } else if (key.find("u") != std::string::npos) {
            std::string tok;
            while (vals >> tok)
                if (tok != ";") uvals.push_back(std::stod(tok));
        }
    }
    int n = 0;
    for (int p : sizes) n += p;
    if (n == 0 || static_cast<int>(uvals.size()) != n * n)
        throw std::invalid_argument("structure_from_config: malformed block structure");
    BlockStructure s;
    s.r = static_cast<int>(sizes.size()) - 1;
    s.sizes = sizes;
    s.basis_u = Matrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s.basis_u(i, j) = uvals[static_cast<std::size_t>(i * n + j)];
    int begin = 0;
    for (int p : sizes) {
        s.ranges.emplace_back(begin, begin + p);
        begin += p;
    }
    s.validate();
    return s;
}

}  // namespace ousemi
