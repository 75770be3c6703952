#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "tt/linalg.hpp"
#include "tt/ops.hpp"

using namespace tt;
using oracle::dense_matrix;
using oracle::dense_tensor;
using oracle::rel_err;

namespace {

TensorTrain rand_matrix(const std::vector<Index>& rows, const std::vector<Index>& cols, Index r,
                        std::uint64_t seed) {
    std::vector<Index> modes(rows.size());
    for (size_t k = 0; k < rows.size(); ++k) modes[k] = rows[k] * cols[k];
    return random(TTShape::matrix(rows, cols), oracle::clipped_ranks(modes, r), seed);
}

TensorTrain rand_tensor(const std::vector<Index>& dims, Index r, std::uint64_t seed) {
    return random(TTShape::tensor(dims), oracle::clipped_ranks(dims, r), seed);
}

}  // namespace

TEST_CASE("matmul matches dense products") {
    for (int trial = 0; trial < 15; ++trial) {
        oracle::InstanceGen gen(10 + trial);
        auto m = gen.dims(3, 3);
        std::vector<Index> k(m.size()), n(m.size());
        for (size_t j = 0; j < m.size(); ++j) {
            k[j] = gen.uniform(1, 3);
            n[j] = gen.uniform(1, 3);
        }
        TensorTrain a = rand_matrix(m, k, 3, 100 + trial);
        TensorTrain b = rand_matrix(k, n, 2, 200 + trial);
        TensorTrain c = matmul(a, b);
        CHECK(rel_err(dense_matrix(c), oracle::Mat(dense_matrix(a) * dense_matrix(b))) < 1e-12);
        for (Index j = 0; j <= c.ndims(); ++j) {
            CHECK(c.ranks()[j] == a.ranks()[j] * b.ranks()[j]);
        }
    }
    // mismatched contraction dims name the mode
    TensorTrain a = rand_matrix({2, 2}, {3, 2}, 2, 1);
    TensorTrain b = rand_matrix({3, 3}, {2, 2}, 2, 2);
    CHECK_THROWS_WITH_AS(matmul(a, b), doctest::Contains("mode 1"), std::invalid_argument);
}

TEST_CASE("matvec matches dense matrix-vector products") {
    for (int trial = 0; trial < 15; ++trial) {
        oracle::InstanceGen gen(30 + trial);
        auto m = gen.dims(3, 3);
        std::vector<Index> n(m.size());
        for (size_t j = 0; j < m.size(); ++j) n[j] = gen.uniform(1, 3);
        TensorTrain a = rand_matrix(m, n, 2, 300 + trial);
        TensorTrain x = rand_tensor(n, 3, 400 + trial);
        TensorTrain y = matvec(a, x);
        CHECK_FALSE(y.is_matrix());
        CHECK(y.shape().row_dims() == m);
        oracle::Vec want = dense_matrix(a) * dense_tensor(x);
        CHECK(rel_err(dense_tensor(y), want) < 1e-12);
    }
    TensorTrain a = rand_matrix({2}, {3}, 1, 1);
    CHECK_THROWS_AS(matvec(a, rand_tensor({2}, 1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(matvec(rand_tensor({2}, 1, 1), rand_tensor({2}, 1, 1)),
                    std::invalid_argument);
}

TEST_CASE("matmul and matvec broadcast over batches") {
    std::vector<Index> n{2, 3, 2};
    TTShape ms = TTShape::matrix(n, n);
    TTRanks mr = oracle::clipped_ranks({4, 9, 4}, 3);
    TTRanks vr = oracle::clipped_ranks(n, 2);
    TensorTrainBatch a = random_batch(3, ms, mr, 50);
    TensorTrainBatch x = random_batch(3, TTShape::tensor(n), vr, 51);
    TensorTrain single = random(TTShape::tensor(n), vr, 52);

    TensorTrainBatch y = matvec(a, x);
    TensorTrainBatch ys = matvec(a, single);
    for (Index i = 0; i < 3; ++i) {
        CHECK(rel_err(dense_tensor(y, i),
                      oracle::Vec(dense_matrix(a.object(i)) * dense_tensor(x, i))) < 1e-12);
        CHECK(rel_err(dense_tensor(ys, i),
                      oracle::Vec(dense_matrix(a.object(i)) * dense_tensor(single))) < 1e-12);
    }
    TensorTrainBatch c = matmul(a, a.object(0));
    for (Index i = 0; i < 3; ++i) {
        CHECK(rel_err(dense_matrix(c, i),
                      oracle::Mat(dense_matrix(a.object(i)) * dense_matrix(a.object(0)))) <
              1e-12);
    }
}

TEST_CASE("flat_inner matches dense dot products") {
    for (int trial = 0; trial < 20; ++trial) {
        oracle::InstanceGen gen(60 + trial);
        auto dims = gen.dims(4, 4);
        TensorTrain x = rand_tensor(dims, 3, 600 + trial);
        TensorTrain y = rand_tensor(dims, 2, 700 + trial);
        CHECK(flat_inner(x, y) ==
              doctest::Approx(dense_tensor(x).dot(dense_tensor(y))).epsilon(1e-11));
    }
    // matrices contract like their flattenings
    TensorTrain a = rand_matrix({2, 3}, {3, 2}, 2, 71);
    TensorTrain b = rand_matrix({2, 3}, {3, 2}, 2, 72);
    CHECK(flat_inner(a, b) ==
          doctest::Approx((dense_matrix(a).array() * dense_matrix(b).array()).sum())
              .epsilon(1e-11));
}

TEST_CASE("pairwise_flat_inner matches memberwise dots and is symmetric on (x, x)") {
    TTShape s = TTShape::tensor({3, 2, 3});
    TTRanks r = oracle::clipped_ranks({3, 2, 3}, 2);
    TensorTrainBatch x = random_batch(4, s, r, 81);
    TensorTrainBatch y = random_batch(3, s, r, 82);
    GramMatrix g = pairwise_flat_inner(x, y);
    REQUIRE(g.rows() == 4);
    REQUIRE(g.cols() == 3);
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 3; ++j)
            CHECK(g(i, j) ==
                  doctest::Approx(dense_tensor(x, i).dot(dense_tensor(y, j))).epsilon(1e-11));
    GramMatrix gx = pairwise_flat_inner(x, x);
    CHECK((gx - gx.transpose()).norm() == 0.0);  // mirrored, not recomputed
}

TEST_CASE("frobenius_norm, both paths") {
    for (int trial = 0; trial < 10; ++trial) {
        oracle::InstanceGen gen(90 + trial);
        auto dims = gen.dims(4, 4);
        TensorTrain x = rand_tensor(dims, 3, 900 + trial);
        double want = dense_tensor(x).norm();
        CHECK(frobenius_norm(x) == doctest::Approx(want).epsilon(1e-11));
        CHECK(frobenius_norm(x, true) == doctest::Approx(want).epsilon(1e-11));
    }
    TTShape s = TTShape::tensor({2, 3, 2});
    TensorTrainBatch b = random_batch(3, s, TTRanks({1, 2, 2, 1}), 95);
    Eigen::VectorXd norms = frobenius_norm(b);
    for (Index i = 0; i < 3; ++i) {
        CHECK(norms[i] == doctest::Approx(dense_tensor(b, i).norm()).epsilon(1e-11));
    }
}

TEST_CASE("transpose is the exact dense transpose") {
    TensorTrain a = rand_matrix({2, 3}, {3, 2}, 3, 97);
    TensorTrain at = transpose(a);
    CHECK(at.shape().row_dims() == std::vector<Index>{3, 2});
    CHECK(at.shape().col_dims() == std::vector<Index>{2, 3});
    CHECK((dense_matrix(at) - dense_matrix(a).transpose()).norm() == 0.0);
    CHECK_THROWS_AS(transpose(rand_tensor({2, 2}, 2, 1)), std::invalid_argument);
}
