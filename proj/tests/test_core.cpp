#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tt/ops.hpp"

using namespace tt;
using oracle::dense_matrix;
using oracle::dense_tensor;
using oracle::rel_err;

namespace {

TensorTrain rand_tensor(const std::vector<Index>& dims, Index r, std::uint64_t seed) {
    return random(TTShape::tensor(dims), oracle::clipped_ranks(dims, r), seed);
}

}  // namespace

TEST_CASE("shape and rank validation") {
    CHECK_THROWS_AS(TTShape::tensor({}), std::invalid_argument);
    CHECK_THROWS_AS(TTShape::tensor({3, 0}), std::invalid_argument);
    CHECK_THROWS_AS(TTShape::matrix({2, 3}, {2}), std::invalid_argument);
    CHECK_THROWS_AS(TTRanks({2, 3, 1}), std::invalid_argument);  // boundary not 1
    CHECK_THROWS_AS(TTRanks({1, 0, 1}), std::invalid_argument);
    TTShape m = TTShape::matrix({2, 3}, {4, 5});
    CHECK(m.mode_dim(0) == 8);
    CHECK(m.total_rows() == 6);
    CHECK(m.total_cols() == 20);
    CHECK(TTShape::tensor({2, 3}).col_dim(1) == 1);
}

TEST_CASE("from_cores wraps and validates") {
    DenseTensor c0({1, 2, 2}, {1, 2, 3, 4});
    DenseTensor c1({2, 3, 1}, {1, 0, 1, 0, 1, 0});
    TensorTrain t = from_cores({c0, c1});
    CHECK(t.ranks()[1] == 2);
    CHECK_FALSE(t.is_matrix());
    oracle::Vec dense = dense_tensor(t);
    CHECK(dense(0) == doctest::Approx(1 * 1 + 2 * 0));

    // broken rank chain names the boundary
    DenseTensor bad({3, 3, 1}, std::vector<double>(9, 0.0));
    CHECK_THROWS_WITH_AS(from_cores({c0, bad}), doctest::Contains("rank chain broken at boundary 1"),
                         std::invalid_argument);
    // boundary rank must be 1
    DenseTensor c0b({2, 2, 2}, std::vector<double>(8, 0.0));
    CHECK_THROWS_AS(from_cores({c0b, c1}), std::invalid_argument);
    // 4-axis cores make a matrix
    DenseTensor m0({1, 2, 2, 1}, {1, 0, 0, 1});
    TensorTrain mt = from_cores({m0});
    CHECK(mt.is_matrix());
}

TEST_CASE("ones and eye") {
    TensorTrain o = ones(TTShape::tensor({2, 3, 2}));
    oracle::Vec od = dense_tensor(o);
    for (Index i = 0; i < od.size(); ++i) CHECK(od(i) == 1.0);

    TensorTrain id = eye({2, 3});
    oracle::Mat idd = dense_matrix(id);
    CHECK(rel_err(idd, oracle::Mat::Identity(6, 6)) == doctest::Approx(0.0));
    CHECK(id.ranks().max() == 1);
}

TEST_CASE("random is deterministic and batch-consistent") {
    TTShape s = TTShape::tensor({3, 4, 3});
    TTRanks r = oracle::clipped_ranks({3, 4, 3}, 3);
    TensorTrain a = random(s, r, 7);
    TensorTrain b = random(s, r, 7);
    for (Index k = 0; k < a.ndims(); ++k) CHECK(a.core(k) == b.core(k));
    TensorTrain c = random(s, r, 8);
    CHECK(a.core(0) != c.core(0));

    // member i of a batch matches a shifted-seed single draw
    TensorTrainBatch batch = random_batch(4, s, r, 7);
    TensorTrain m2 = random(s, r, 7 + 2 * kBatchSeedStride);
    for (Index k = 0; k < a.ndims(); ++k) {
        auto span = batch.core_span(k, 2);
        REQUIRE(span.size() == m2.core(k).size());
        for (size_t j = 0; j < span.size(); ++j) CHECK(span[j] == m2.core(k)[j]);
    }
}

TEST_CASE("random norm scaling is rank-insensitive") {
    // expected squared norm is prod(n_k) whatever the ranks
    std::vector<Index> dims{3, 3, 3, 3};
    double expect = 81.0;
    for (Index r : {1, 2, 3}) {
        double acc = 0.0;
        int trials = 60;
        for (int s = 0; s < trials; ++s) {
            oracle::Vec v = dense_tensor(rand_tensor(dims, r, 1000 + s));
            acc += v.squaredNorm();
        }
        double mean = acc / trials;
        CHECK(mean > 0.25 * expect);
        CHECK(mean < 4.0 * expect);
    }
}

TEST_CASE("full matches the oracle") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        oracle::InstanceGen gen(100 + trial);
        auto dims = gen.dims(4, 4);
        TensorTrain t = rand_tensor(dims, 3, 200 + trial);
        DenseTensor f = full(t);
        REQUIRE(f.dims == dims);
        oracle::Vec want = dense_tensor(t);
        oracle::Vec got = Eigen::Map<const oracle::Vec>(f.data.data(), f.size());
        CHECK(rel_err(got, want) < 1e-13);
    }
    // matrix comes back as (prod rows) x (prod cols) with unshuffled indices
    TTShape ms = TTShape::matrix({2, 3}, {3, 2});
    TensorTrain m = random(ms, TTRanks({1, 2, 1}), 5);
    DenseTensor f = full(m);
    REQUIRE(f.dims == std::vector<Index>{6, 6});
    oracle::Mat want = dense_matrix(m);
    oracle::Mat got = Eigen::Map<const oracle::Mat::PlainObject, 0>(f.data.data(), 6, 6);
    // DenseTensor is row-major; Eigen map above is column-major, so compare transposed
    CHECK(rel_err(oracle::Mat(got.transpose()), want) < 1e-13);
}

TEST_CASE("full respects the element guard") {
    std::vector<Index> dims(20, 10);  // 10^20 elements
    TensorTrain t = ones(TTShape::tensor(dims));
    CHECK_THROWS_WITH_AS(full(t), doctest::Contains("guard"), std::invalid_argument);
}

TEST_CASE("batch full stacks members") {
    TTShape s = TTShape::tensor({2, 3});
    TensorTrainBatch b = random_batch(3, s, TTRanks({1, 2, 1}), 11);
    DenseTensor f = full(b);
    REQUIRE(f.dims == std::vector<Index>{3, 2, 3});
    for (Index i = 0; i < 3; ++i) {
        oracle::Vec want = dense_tensor(b, i);
        oracle::Vec got = Eigen::Map<const oracle::Vec>(f.data.data() + i * 6, 6);
        CHECK(rel_err(got, want) < 1e-13);
    }
}

TEST_CASE("add matches dense sums and sums ranks") {
    for (int trial = 0; trial < 20; ++trial) {
        oracle::InstanceGen gen(300 + trial);
        auto dims = gen.dims(4, 4);
        TensorTrain a = rand_tensor(dims, 3, 400 + trial);
        TensorTrain b = rand_tensor(dims, 2, 500 + trial);
        TensorTrain c = add(a, b);
        CHECK(rel_err(dense_tensor(c), oracle::Vec(dense_tensor(a) + dense_tensor(b))) < 1e-13);
        for (Index k = 1; k < c.ndims(); ++k) {
            CHECK(c.ranks()[k] == a.ranks()[k] + b.ranks()[k]);
        }
    }
    TensorTrain a = rand_tensor({2, 3}, 2, 1);
    CHECK_THROWS_AS(add(a, rand_tensor({3, 2}, 2, 1)), std::invalid_argument);
}

TEST_CASE("multiply matches dense Hadamard and multiplies ranks") {
    for (int trial = 0; trial < 20; ++trial) {
        oracle::InstanceGen gen(600 + trial);
        auto dims = gen.dims(3, 4);
        TensorTrain a = rand_tensor(dims, 2, 700 + trial);
        TensorTrain b = rand_tensor(dims, 2, 800 + trial);
        TensorTrain c = multiply(a, b);
        oracle::Vec want = dense_tensor(a).cwiseProduct(dense_tensor(b));
        CHECK(rel_err(dense_tensor(c), want) < 1e-13);
        for (Index k = 0; k <= c.ndims(); ++k) {
            CHECK(c.ranks()[k] == a.ranks()[k] * b.ranks()[k]);
        }
    }
}

TEST_CASE("scalar multiply") {
    TensorTrain a = rand_tensor({3, 2, 3}, 2, 9);
    TensorTrain c = multiply(a, -2.5);
    CHECK(rel_err(dense_tensor(c), oracle::Vec(-2.5 * dense_tensor(a))) < 1e-13);
    CHECK(c.ranks() == a.ranks());
    CHECK_THROWS_AS(multiply(a, std::nan("")), std::invalid_argument);
}

TEST_CASE("batch binary ops broadcast") {
    TTShape s = TTShape::tensor({2, 3, 2});
    TTRanks r = TTRanks({1, 2, 2, 1});
    TensorTrainBatch a = random_batch(3, s, r, 21);
    TensorTrainBatch b = random_batch(3, s, r, 22);
    TensorTrain single = random(s, r, 23);

    TensorTrainBatch sum = add(a, b);
    TensorTrainBatch bs = add(a, single);
    TensorTrainBatch prod = multiply(single, a);
    for (Index i = 0; i < 3; ++i) {
        CHECK(rel_err(dense_tensor(sum, i),
                      oracle::Vec(dense_tensor(a, i) + dense_tensor(b, i))) < 1e-13);
        CHECK(rel_err(dense_tensor(bs, i),
                      oracle::Vec(dense_tensor(a, i) + dense_tensor(single))) < 1e-13);
        CHECK(rel_err(dense_tensor(prod, i),
                      dense_tensor(single).cwiseProduct(dense_tensor(a, i))) < 1e-13);
    }
    TensorTrainBatch two = random_batch(2, s, r, 24);
    CHECK_THROWS_AS(add(a, two), std::invalid_argument);
}

TEST_CASE("slice: fixing all modes yields the element") {
    oracle::InstanceGen gen(31);
    auto dims = gen.dims(4, 4);
    TensorTrain t = rand_tensor(dims, 3, 32);
    std::vector<Index> idx;
    std::vector<SliceSpec> specs;
    for (Index k = 0; k < t.ndims(); ++k) {
        idx.push_back(static_cast<Index>(k) % dims[static_cast<size_t>(k)]);
        specs.push_back(SliceSpec::at(idx.back()));
    }
    SliceResult r = slice(t, specs);
    REQUIRE(std::holds_alternative<double>(r));
    CHECK(std::get<double>(r) == doctest::Approx(oracle::element_at(t, idx)).epsilon(1e-12));
}

TEST_CASE("slice: mixed specs against dense oracle") {
    TensorTrain t = rand_tensor({3, 4, 2, 3}, 3, 44);
    oracle::Vec dense = dense_tensor(t);
    SliceResult r = slice(t, {SliceSpec::at(1), SliceSpec::range(1, 4), SliceSpec::all(),
                              SliceSpec::at(2)});
    REQUIRE(std::holds_alternative<TensorTrain>(r));
    const TensorTrain& sub = std::get<TensorTrain>(r);
    REQUIRE(sub.shape().row_dims() == std::vector<Index>{3, 2});
    oracle::Vec got = dense_tensor(sub);
    Index p = 0;
    for (Index i1 = 1; i1 < 4; ++i1)
        for (Index i2 = 0; i2 < 2; ++i2) {
            Index flat = ((1 * 4 + i1) * 2 + i2) * 3 + 2;
            CHECK(got(p++) == doctest::Approx(dense(flat)).epsilon(1e-12));
        }
    CHECK_THROWS_AS(slice(t, {SliceSpec::at(5), SliceSpec::all(), SliceSpec::all(),
                              SliceSpec::all()}),
                    std::out_of_range);
    CHECK_THROWS_AS(slice(t, {SliceSpec::all()}), std::invalid_argument);  // wrong arity
}

TEST_CASE("matrix slice: both-fixed pairs collapse, mixed pairs are rejected") {
    TTShape ms = TTShape::matrix({2, 3}, {3, 2});
    TensorTrain m = random(ms, TTRanks({1, 3, 1}), 55);
    oracle::Mat dense = dense_matrix(m);
    // fix mode 0 on both sides, keep mode 1
    SliceResult r = slice(m, {{SliceSpec::at(1), SliceSpec::at(2)},
                              {SliceSpec::all(), SliceSpec::all()}});
    REQUIRE(std::holds_alternative<TensorTrain>(r));
    const TensorTrain& sub = std::get<TensorTrain>(r);
    oracle::Mat got = dense_matrix(sub);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 2; ++j)
            CHECK(got(i, j) == doctest::Approx(dense(1 * 3 + i, 2 * 2 + j)).epsilon(1e-12));
    // fixing only the row side of a mode is not representable
    CHECK_THROWS_AS(slice(m, {{SliceSpec::at(0), SliceSpec::all()},
                              {SliceSpec::all(), SliceSpec::all()}}),
                    std::invalid_argument);
    // fixing everything yields the matrix element
    SliceResult e = slice(m, {{SliceSpec::at(1), SliceSpec::at(0)},
                              {SliceSpec::at(2), SliceSpec::at(1)}});
    REQUIRE(std::holds_alternative<double>(e));
    CHECK(std::get<double>(e) == doctest::Approx(dense(1 * 3 + 2, 0 * 2 + 1)).epsilon(1e-12));
}
