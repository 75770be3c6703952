#pragma once

#include <Eigen/Core>

#include "tt/tensor_train.hpp"

namespace tt {

/// View over a TT-matrix whose interior ranks are all 1, i.e. the Kronecker
/// product F_1 (x) F_2 (x) ... (x) F_d of its factor matrices. The wrapped
/// object remains a plain TensorTrain and works with every tt operation.
class KroneckerMatrix {
public:
    explicit KroneckerMatrix(TensorTrain t);

    const TensorTrain& tt() const { return tt_; }
    Index num_factors() const { return tt_.ndims(); }
    /// Factor k as a dense m_k x n_k matrix.
    Eigen::MatrixXd factor(Index k) const;

private:
    TensorTrain tt_;
};

struct SignLogDet {
    int sign = 0;          // -1, 0, +1
    double log_abs = 0.0;  // log|det|, -inf when singular
};

/// det(F_1 (x) ... (x) F_d) = prod_k det(F_k)^(N/m_k). Overflows to +-inf;
/// use kron_slog_determinant when the magnitude may not fit a double.
double kron_determinant(const KroneckerMatrix& m);
SignLogDet kron_slog_determinant(const KroneckerMatrix& m);

/// Factor-wise inverse. Rejects factors whose 1-norm condition estimate
/// exceeds cond_threshold.
KroneckerMatrix kron_inverse(const KroneckerMatrix& m, double cond_threshold = 1e12);

/// Factor-wise lower Cholesky, chol(A (x) B) = chol(A) (x) chol(B).
/// Every factor must be symmetric positive definite.
KroneckerMatrix kron_cholesky(const KroneckerMatrix& m);

/// Nearest Kronecker-product matrix (rank-1 TT rounding). Optimal in
/// Frobenius norm for two modes.
KroneckerMatrix nearest_kronecker(const TensorTrain& t);

}  // namespace tt
