#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tt/decomp.hpp"
#include "tt/linalg.hpp"
#include "tt/ops.hpp"

using namespace tt;
using oracle::dense_matrix;
using oracle::dense_tensor;
using oracle::rel_err;

namespace {

TensorTrain rand_tensor(const std::vector<Index>& dims, Index r, std::uint64_t seed) {
    return random(TTShape::tensor(dims), oracle::clipped_ranks(dims, r), seed);
}

DenseTensor dense_of(const TensorTrain& t) {
    oracle::Vec v = dense_tensor(t);
    return DenseTensor(t.shape().row_dims(), std::vector<double>(v.data(), v.data() + v.size()));
}

/// Check left/right orthogonality of every core but the boundary one.
bool cores_orthogonal(const TensorTrain& t, Direction dir, double tol = 1e-12) {
    for (Index k = 0; k < t.ndims(); ++k) {
        if (dir == Direction::Left && k == t.ndims() - 1) continue;
        if (dir == Direction::Right && k == 0) continue;
        Index r0 = t.ranks()[k], r1 = t.ranks()[k + 1];
        Index n = t.shape().mode_dim(k);
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
            lu(t.core(k).data(), r0 * n, r1);
        if (dir == Direction::Left) {
            oracle::Mat g = lu.transpose() * lu;
            if ((g - oracle::Mat::Identity(r1, r1)).norm() > tol) return false;
        } else {
            Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                           Eigen::RowMajor>>
                ru(t.core(k).data(), r0, n * r1);
            oracle::Mat g = ru * ru.transpose();
            if ((g - oracle::Mat::Identity(r0, r0)).norm() > tol) return false;
        }
    }
    return true;
}

double best_rank_r_error(const oracle::Mat& m, Index r) {
    Eigen::BDCSVD<oracle::Mat> svd(m);
    double e2 = 0.0;
    for (Index i = r; i < svd.singularValues().size(); ++i) {
        e2 += svd.singularValues()[i] * svd.singularValues()[i];
    }
    return std::sqrt(e2);
}

}  // namespace

TEST_CASE("to_tt_tensor recovers TT-structured data exactly") {
    for (int trial = 0; trial < 15; ++trial) {
        oracle::InstanceGen gen(10 + trial);
        auto dims = gen.dims(4, 4);
        TensorTrain src = rand_tensor(dims, 3, 100 + trial);
        TensorTrain t = to_tt_tensor(dense_of(src));
        CHECK(rel_err(dense_tensor(t), dense_tensor(src)) < 1e-12);
        // ranks never exceed the generating ranks
        for (Index k = 0; k <= t.ndims(); ++k) CHECK(t.ranks()[k] <= src.ranks()[k]);
    }
    CHECK_THROWS_AS(to_tt_tensor(DenseTensor({2}, {1.0, std::nan("")})), std::invalid_argument);
}

TEST_CASE("to_tt_tensor epsilon bound") {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> g;
    for (double eps : {0.5, 0.1, 0.01}) {
        std::vector<Index> dims{3, 4, 3, 2};
        DenseTensor x(dims);
        for (auto& v : x.data) v = g(rng);
        oracle::Vec want = Eigen::Map<const oracle::Vec>(x.data.data(), x.size());
        TensorTrain t = to_tt_tensor(x, TruncationSpec::by_epsilon(eps));
        CHECK((dense_tensor(t) - want).norm() <= eps * want.norm() + 1e-13);
    }
}

TEST_CASE("to_tt_tensor max_rank cap") {
    std::mt19937_64 rng(78);
    std::normal_distribution<double> g;
    DenseTensor x({4, 4, 4});
    for (auto& v : x.data) v = g(rng);
    TensorTrain t = to_tt_tensor(x, TruncationSpec::by_rank(2));
    for (Index k = 1; k < t.ndims(); ++k) CHECK(t.ranks()[k] <= 2);
}

TEST_CASE("to_tt_matrix matches the dense matrix") {
    std::mt19937_64 rng(79);
    std::normal_distribution<double> g;
    oracle::Mat m(6, 6);
    for (Index i = 0; i < 36; ++i) m(i / 6, i % 6) = g(rng);
    TensorTrain t = to_tt_matrix(m, {{2, 3}, {3, 2}});
    CHECK(rel_err(dense_matrix(t), m) < 1e-12);
    CHECK_THROWS_AS(to_tt_matrix(m, {{2, 3}, {2, 2}}), std::invalid_argument);  // 12 != 36
}

TEST_CASE("orthogonalize preserves reconstruction and establishes orthogonality") {
    for (int trial = 0; trial < 10; ++trial) {
        oracle::InstanceGen gen(20 + trial);
        auto dims = gen.dims(4, 4);
        TensorTrain t = rand_tensor(dims, 3, 200 + trial);
        oracle::Vec want = dense_tensor(t);
        for (Direction dir : {Direction::Left, Direction::Right}) {
            TensorTrain o = orthogonalize(t, dir);
            CHECK(rel_err(dense_tensor(o), want) < 1e-12);
            CHECK(cores_orthogonal(o, dir));
        }
    }
}

TEST_CASE("right-orthogonal first core carries the norm") {
    TensorTrain t = rand_tensor({3, 4, 3}, 3, 33);
    TensorTrain o = orthogonalize(t, Direction::Right);
    double norm0 = Eigen::Map<const oracle::Vec>(o.core(0).data(),
                                                 static_cast<Index>(o.core(0).size()))
                       .norm();
    CHECK(norm0 == doctest::Approx(dense_tensor(t).norm()).epsilon(1e-11));
}

TEST_CASE("round exact spec preserves reconstruction and shrinks inflated ranks") {
    for (int trial = 0; trial < 10; ++trial) {
        oracle::InstanceGen gen(40 + trial);
        auto dims = gen.dims(4, 3);
        TensorTrain a = rand_tensor(dims, 2, 300 + trial);
        TensorTrain doubled = add(a, a);  // ranks doubled, content rank unchanged
        TensorTrain r = round(doubled, TruncationSpec::exact());
        CHECK(rel_err(dense_tensor(r), oracle::Vec(2.0 * dense_tensor(a))) < 1e-11);
        for (Index k = 0; k <= r.ndims(); ++k) CHECK(r.ranks()[k] <= a.ranks()[k]);
    }
}

TEST_CASE("round idempotence") {
    for (int trial = 0; trial < 10; ++trial) {
        TensorTrain t = rand_tensor({3, 4, 3, 2}, 4, 400 + trial);
        TruncationSpec spec = TruncationSpec::by_rank(2);
        TensorTrain once = round(t, spec);
        TensorTrain twice = round(once, spec);
        CHECK(rel_err(dense_tensor(twice), dense_tensor(once)) < 1e-12);
        CHECK(once.ranks() == twice.ranks());
    }
}

TEST_CASE("round to rank r at d=2 is SVD-optimal") {
    for (int trial = 0; trial < 10; ++trial) {
        TensorTrain t = rand_tensor({5, 6}, 5, 500 + trial);
        oracle::Vec dense = dense_tensor(t);
        oracle::Mat m = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                       Eigen::RowMajor>>(dense.data(), 5, 6);
        for (Index r : {1, 2, 3}) {
            TensorTrain rounded = round(t, TruncationSpec::by_rank(r));
            double got = (dense_tensor(rounded) - dense).norm();
            CHECK(got == doctest::Approx(best_rank_r_error(m, r)).epsilon(1e-10));
        }
    }
}

TEST_CASE("round epsilon bound") {
    for (double eps : {0.3, 0.05}) {
        TensorTrain t = rand_tensor({3, 4, 3, 2}, 4, 71);
        oracle::Vec want = dense_tensor(t);
        TensorTrain r = round(t, TruncationSpec::by_epsilon(eps));
        CHECK((dense_tensor(r) - want).norm() <= eps * want.norm() + 1e-13);
    }
}

TEST_CASE("batch round pads to common ranks without changing members") {
    TTShape s = TTShape::tensor({3, 4, 3});
    TTRanks r = oracle::clipped_ranks({3, 4, 3}, 3);
    TensorTrainBatch b = random_batch(4, s, r, 91);
    TensorTrainBatch rounded = round(b, TruncationSpec::exact());
    REQUIRE(rounded.batch_size() == 4);
    for (Index i = 0; i < 4; ++i) {
        CHECK(rel_err(dense_tensor(rounded, i), dense_tensor(b, i)) < 1e-11);
    }
    TensorTrainBatch o = orthogonalize(b, Direction::Left);
    for (Index i = 0; i < 4; ++i) {
        CHECK(rel_err(dense_tensor(o, i), dense_tensor(b, i)) < 1e-11);
    }
}

TEST_CASE("truncation spec validation") {
    TensorTrain t = rand_tensor({3, 3}, 2, 1);
    CHECK_THROWS_AS(round(t, TruncationSpec{-1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(round(t, TruncationSpec{0, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(round(t, TruncationSpec{0, 1.5}), std::invalid_argument);
}
