#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "tt/io.hpp"
#include "tt/ops.hpp"

using namespace tt;

namespace {

std::string save_str(const TensorTrain& t) {
    std::ostringstream s(std::ios::binary);
    std::size_t n = io::save(t, s);
    std::string bytes = s.str();
    REQUIRE(bytes.size() == n);
    return bytes;
}

std::string save_str(const TensorTrainBatch& t) {
    std::ostringstream s(std::ios::binary);
    std::size_t n = io::save(t, s);
    std::string bytes = s.str();
    REQUIRE(bytes.size() == n);
    return bytes;
}

io::LoadResult load_str(const std::string& bytes) {
    std::istringstream s(bytes, std::ios::binary);
    return io::load(s);
}

}  // namespace

TEST_CASE("bitwise round trip: tensors, matrices, batches") {
    for (int trial = 0; trial < 25; ++trial) {
        oracle::InstanceGen gen(10 + trial);
        auto dims = gen.dims(4, 4);
        TensorTrain t = random(TTShape::tensor(dims), oracle::clipped_ranks(dims, 3),
                               100 + trial);
        std::string bytes = save_str(t);
        auto r = load_str(bytes);
        REQUIRE(std::holds_alternative<TensorTrain>(r));
        const TensorTrain& back = std::get<TensorTrain>(r);
        CHECK(back.shape() == t.shape());
        CHECK(back.ranks() == t.ranks());
        CHECK(save_str(back) == bytes);  // bitwise
        for (Index k = 0; k < t.ndims(); ++k) CHECK(back.core(k) == t.core(k));
    }
    // matrix
    TensorTrain m = random(TTShape::matrix({2, 3}, {3, 2}), TTRanks({1, 2, 1}), 7);
    std::string mb = save_str(m);
    auto mr = load_str(mb);
    REQUIRE(std::holds_alternative<TensorTrain>(mr));
    CHECK(std::get<TensorTrain>(mr).is_matrix());
    CHECK(save_str(std::get<TensorTrain>(mr)) == mb);
    // batch
    TensorTrainBatch b = random_batch(3, TTShape::tensor({2, 3}), TTRanks({1, 2, 1}), 8);
    std::string bb = save_str(b);
    auto br = load_str(bb);
    REQUIRE(std::holds_alternative<TensorTrainBatch>(br));
    const TensorTrainBatch& bback = std::get<TensorTrainBatch>(br);
    CHECK(bback.batch_size() == 3);
    CHECK(save_str(bback) == bb);
}

TEST_CASE("specific corruption modes raise distinct errors") {
    TensorTrain t = random(TTShape::tensor({2, 3}), TTRanks({1, 2, 1}), 9);
    std::string bytes = save_str(t);

    std::string magic = bytes;
    magic[0] = 'X';
    CHECK_THROWS_AS(load_str(magic), io::BadMagicError);

    std::string version = bytes;
    version[4] = 2;
    CHECK_THROWS_AS(load_str(version), io::UnsupportedVersionError);

    std::string flags = bytes;
    flags[6] = 4;  // unknown flag bit
    CHECK_THROWS_AS(load_str(flags), io::FormatError);

    CHECK_THROWS_AS(load_str(bytes.substr(0, 3)), io::TruncatedError);
    CHECK_THROWS_AS(load_str(bytes.substr(0, 20)), io::TruncatedError);
    CHECK_THROWS_AS(load_str(bytes.substr(0, bytes.size() - 1)), io::TruncatedError);
    CHECK_THROWS_AS(load_str(bytes + "x"), io::FormatError);  // trailing byte
    CHECK_THROWS_AS(load_str(""), io::TruncatedError);
}

TEST_CASE("every single-byte header corruption is rejected or parses consistently") {
    TensorTrain t = random(TTShape::tensor({2, 3, 2}), TTRanks({1, 2, 2, 1}), 11);
    std::string bytes = save_str(t);
    // header: magic(4) version(2) flags(2) d(2) batch(4) dims(3*4) ranks(4*4)
    size_t header = 4 + 2 + 2 + 2 + 4 + 12 + 16;
    REQUIRE(bytes.size() > header);
    int rejected = 0, reparsed = 0;
    for (size_t pos = 0; pos < header; ++pos) {
        for (unsigned char delta : {0x01, 0x80, 0xFF}) {
            std::string mut = bytes;
            mut[pos] = static_cast<char>(static_cast<unsigned char>(mut[pos]) ^ delta);
            if (mut == bytes) continue;
            try {
                auto r = load_str(mut);
                // accepted: must re-serialize to exactly the mutated bytes,
                // i.e. the header was still self-consistent
                std::string again = std::holds_alternative<TensorTrain>(r)
                                        ? save_str(std::get<TensorTrain>(r))
                                        : save_str(std::get<TensorTrainBatch>(r));
                CHECK(again == mut);
                ++reparsed;
            } catch (const io::IoError&) {
                ++rejected;
            }
        }
    }
    CHECK(rejected > 0);
    // nothing slipped through without either outcome
    INFO("rejected=", rejected, " reparsed=", reparsed);
}
