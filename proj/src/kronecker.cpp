#include "tt/kronecker.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tt/decomp.hpp"

namespace tt {

namespace {

Eigen::MatrixXd factor_of(const TensorTrain& t, Index k) {
    Index m = t.shape().row_dim(k);
    Index n = t.shape().col_dim(k);
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                          Eigen::RowMajor>>(t.core(k).data(), m, n);
}

void require_square(const KroneckerMatrix& m, const char* op) {
    for (Index k = 0; k < m.num_factors(); ++k) {
        if (m.tt().shape().row_dim(k) != m.tt().shape().col_dim(k)) {
            throw std::invalid_argument(std::string(op) + ": factor " + std::to_string(k) +
                                        " is not square (" +
                                        std::to_string(m.tt().shape().row_dim(k)) + " x " +
                                        std::to_string(m.tt().shape().col_dim(k)) + ")");
        }
    }
}

/// Exponent of det(F_k) in det(kron product): N / m_k where N = prod m_j.
double det_exponent(const KroneckerMatrix& m, Index k) {
    double e = 1.0;
    for (Index j = 0; j < m.num_factors(); ++j) {
        if (j != k) e *= static_cast<double>(m.tt().shape().row_dim(j));
    }
    return e;
}

KroneckerMatrix from_factors(const TensorTrain& like,
                             const std::vector<Eigen::MatrixXd>& factors) {
    std::vector<std::vector<double>> cores;
    std::vector<Index> rows, cols;
    cores.reserve(factors.size());
    for (const auto& f : factors) {
        rows.push_back(f.rows());
        cols.push_back(f.cols());
        std::vector<double> c(static_cast<size_t>(f.size()));
        Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            c.data(), f.rows(), f.cols()) = f;
        cores.push_back(std::move(c));
    }
    (void)like;
    return KroneckerMatrix(TensorTrain(TTShape::matrix(rows, cols),
                                       TTRanks::unit(static_cast<Index>(factors.size())),
                                       std::move(cores)));
}

}  // namespace

KroneckerMatrix::KroneckerMatrix(TensorTrain t) : tt_(std::move(t)) {
    if (!tt_.is_matrix()) {
        throw std::invalid_argument("KroneckerMatrix: underlying TT must be a TT-matrix");
    }
    for (Index k = 0; k <= tt_.ndims(); ++k) {
        if (tt_.ranks()[k] != 1) {
            throw std::invalid_argument("KroneckerMatrix: rank at position " + std::to_string(k) +
                                        " is " + std::to_string(tt_.ranks()[k]) +
                                        ", Kronecker form requires all ranks 1");
        }
    }
}

Eigen::MatrixXd KroneckerMatrix::factor(Index k) const {
    if (k < 0 || k >= tt_.ndims()) throw std::out_of_range("KroneckerMatrix::factor: bad index");
    return factor_of(tt_, k);
}

double kron_determinant(const KroneckerMatrix& m) {
    require_square(m, "kron_determinant");
    SignLogDet s = kron_slog_determinant(m);
    if (s.sign == 0) return 0.0;
    return s.sign * std::exp(s.log_abs);  // may overflow to +-inf by design
}

SignLogDet kron_slog_determinant(const KroneckerMatrix& m) {
    require_square(m, "kron_slog_determinant");
    SignLogDet out{1, 0.0};
    for (Index k = 0; k < m.num_factors(); ++k) {
        Eigen::MatrixXd f = m.factor(k);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(f);
        int sign = lu.permutationP().determinant();
        double log_abs = 0.0;
        for (Index i = 0; i < f.rows(); ++i) {
            double u = lu.matrixLU()(i, i);
            if (u == 0.0) {
                return {0, -std::numeric_limits<double>::infinity()};
            }
            if (u < 0.0) sign = -sign;
            log_abs += std::log(std::abs(u));
        }
        double e = det_exponent(m, k);
        // sign^e: even exponents wash the sign out
        long long ei = static_cast<long long>(e);
        if (ei % 2 != 0 && sign < 0) out.sign = -out.sign;
        out.log_abs += e * log_abs;
    }
    return out;
}

KroneckerMatrix kron_inverse(const KroneckerMatrix& m, double cond_threshold) {
    require_square(m, "kron_inverse");
    std::vector<Eigen::MatrixXd> inv;
    inv.reserve(static_cast<size_t>(m.num_factors()));
    for (Index k = 0; k < m.num_factors(); ++k) {
        Eigen::MatrixXd f = m.factor(k);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(f);
        double det = lu.determinant();
        if (det == 0.0 || !std::isfinite(det)) {
            throw std::invalid_argument("kron_inverse: factor " + std::to_string(k) +
                                        " is singular");
        }
        Eigen::MatrixXd finv = lu.inverse();
        double cond = f.cwiseAbs().colwise().sum().maxCoeff() *
                      finv.cwiseAbs().colwise().sum().maxCoeff();
        if (!(cond <= cond_threshold)) {
            throw std::invalid_argument("kron_inverse: factor " + std::to_string(k) +
                                        " is ill-conditioned (1-norm condition estimate " +
                                        std::to_string(cond) + " exceeds threshold)");
        }
        inv.push_back(std::move(finv));
    }
    return from_factors(m.tt(), inv);
}

KroneckerMatrix kron_cholesky(const KroneckerMatrix& m) {
    require_square(m, "kron_cholesky");
    std::vector<Eigen::MatrixXd> chols;
    chols.reserve(static_cast<size_t>(m.num_factors()));
    for (Index k = 0; k < m.num_factors(); ++k) {
        Eigen::MatrixXd f = m.factor(k);
        if (!f.isApprox(f.transpose(), 1e-12)) {
            throw std::invalid_argument("kron_cholesky: factor " + std::to_string(k) +
                                        " is not symmetric");
        }
        Eigen::LLT<Eigen::MatrixXd> llt(f);
        if (llt.info() != Eigen::Success) {
            throw std::invalid_argument("kron_cholesky: factor " + std::to_string(k) +
                                        " is not positive definite");
        }
        chols.emplace_back(llt.matrixL());
    }
    return from_factors(m.tt(), chols);
}

KroneckerMatrix nearest_kronecker(const TensorTrain& t) {
    if (!t.is_matrix()) {
        throw std::invalid_argument("nearest_kronecker: input must be a TT-matrix");
    }
    return KroneckerMatrix(round(t, TruncationSpec::by_rank(1)));
}

}  // namespace tt
