#include "tt/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <vector>

namespace tt::io {

static_assert(std::endian::native == std::endian::little,
              "ttf serialization assumes a little-endian host");
static_assert(sizeof(double) == 8 && std::numeric_limits<double>::is_iec559);

namespace {

constexpr char kMagic[4] = {'T', 'T', 'F', '1'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint16_t kFlagMatrix = 1u << 0;
constexpr std::uint16_t kFlagBatch = 1u << 1;
constexpr std::uint16_t kKnownFlags = kFlagMatrix | kFlagBatch;

template <typename T>
void put(std::ostream& s, T v) {
    s.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& s, const char* what) {
    T v;
    s.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!s) {
        throw TruncatedError(std::string("ttf: stream ended while reading ") + what +
                             " (needed " + std::to_string(sizeof(T)) + " bytes)");
    }
    return v;
}

std::size_t write_object(const TTShape& shape, const TTRanks& ranks, bool is_batch,
                         Index batch_size, const std::vector<const std::vector<double>*>& cores,
                         std::ostream& sink) {
    Index d = shape.ndims();
    std::uint16_t flags = 0;
    if (shape.is_matrix()) flags |= kFlagMatrix;
    if (is_batch) flags |= kFlagBatch;

    sink.write(kMagic, 4);
    put<std::uint16_t>(sink, kVersion);
    put<std::uint16_t>(sink, flags);
    put<std::uint16_t>(sink, static_cast<std::uint16_t>(d));
    put<std::uint32_t>(sink, static_cast<std::uint32_t>(batch_size));
    std::size_t bytes = 4 + 2 + 2 + 2 + 4;
    for (Index k = 0; k < d; ++k) {
        put<std::uint32_t>(sink, static_cast<std::uint32_t>(shape.row_dim(k)));
        bytes += 4;
        if (shape.is_matrix()) {
            put<std::uint32_t>(sink, static_cast<std::uint32_t>(shape.col_dim(k)));
            bytes += 4;
        }
    }
    for (Index k = 0; k <= d; ++k) {
        put<std::uint32_t>(sink, static_cast<std::uint32_t>(ranks[k]));
        bytes += 4;
    }
    for (const auto* c : cores) {
        sink.write(reinterpret_cast<const char*>(c->data()),
                   static_cast<std::streamsize>(c->size() * sizeof(double)));
        bytes += c->size() * sizeof(double);
    }
    if (!sink) throw IoError("ttf: write failed");
    return bytes;
}

}  // namespace

std::size_t save(const TensorTrain& t, std::ostream& sink) {
    std::vector<const std::vector<double>*> cores;
    for (Index k = 0; k < t.ndims(); ++k) cores.push_back(&t.core(k));
    return write_object(t.shape(), t.ranks(), false, 1, cores, sink);
}

std::size_t save(const TensorTrainBatch& t, std::ostream& sink) {
    std::vector<const std::vector<double>*> cores;
    for (Index k = 0; k < t.ndims(); ++k) cores.push_back(&t.core(k));
    return write_object(t.shape(), t.ranks(), true, t.batch_size(), cores, sink);
}

LoadResult load(std::istream& source) {
    char magic[4];
    source.read(magic, 4);
    if (!source) throw TruncatedError("ttf: stream ended while reading magic");
    if (std::memcmp(magic, kMagic, 4) != 0) {
        throw BadMagicError("ttf: bad magic, not a ttf stream");
    }
    auto version = get<std::uint16_t>(source, "version");
    if (version != kVersion) {
        throw UnsupportedVersionError("ttf: unsupported version " + std::to_string(version));
    }
    auto flags = get<std::uint16_t>(source, "flags");
    if (flags & ~kKnownFlags) {
        throw FormatError("ttf: unknown flag bits " + std::to_string(flags & ~kKnownFlags));
    }
    bool is_matrix = flags & kFlagMatrix;
    bool is_batch = flags & kFlagBatch;
    auto d16 = get<std::uint16_t>(source, "mode count");
    if (d16 == 0) throw FormatError("ttf: zero modes");
    Index d = static_cast<Index>(d16);
    auto b32 = get<std::uint32_t>(source, "batch size");
    if (b32 == 0) throw FormatError("ttf: zero batch size");
    if (!is_batch && b32 != 1) {
        throw FormatError("ttf: non-batch stream declares batch size " + std::to_string(b32));
    }
    Index b = static_cast<Index>(b32);

    std::vector<Index> rows(static_cast<size_t>(d)), cols;
    if (is_matrix) cols.resize(static_cast<size_t>(d));
    for (Index k = 0; k < d; ++k) {
        auto r = get<std::uint32_t>(source, "mode dimension");
        if (r == 0) throw FormatError("ttf: zero dimension at mode " + std::to_string(k));
        rows[static_cast<size_t>(k)] = static_cast<Index>(r);
        if (is_matrix) {
            auto c = get<std::uint32_t>(source, "mode dimension");
            if (c == 0) throw FormatError("ttf: zero dimension at mode " + std::to_string(k));
            cols[static_cast<size_t>(k)] = static_cast<Index>(c);
        }
    }
    std::vector<Index> ranks(static_cast<size_t>(d) + 1);
    for (Index k = 0; k <= d; ++k) {
        auto r = get<std::uint32_t>(source, "rank");
        if (r == 0) throw FormatError("ttf: zero rank at position " + std::to_string(k));
        ranks[static_cast<size_t>(k)] = static_cast<Index>(r);
    }
    if (ranks.front() != 1 || ranks.back() != 1) {
        throw FormatError("ttf: boundary ranks must be 1");
    }

    TTShape shape = is_matrix ? TTShape::matrix(rows, cols) : TTShape::tensor(rows);
    TTRanks rr{ranks};

    // total payload size, overflow-checked, validated against the remaining
    // stream length before any allocation happens
    unsigned long long payload = 0;
    for (Index k = 0; k < d; ++k) {
        unsigned long long count = static_cast<unsigned long long>(b) *
                                   static_cast<unsigned long long>(rr[k]) *
                                   static_cast<unsigned long long>(shape.mode_dim(k)) *
                                   static_cast<unsigned long long>(rr[k + 1]);
        if (count > (1ULL << 48) || payload > (1ULL << 52)) {
            throw FormatError("ttf: declared core sizes are implausibly large");
        }
        payload += count * sizeof(double);
    }
    std::streampos cur = source.tellg();
    if (cur != std::streampos(-1)) {
        source.seekg(0, std::ios::end);
        std::streampos end = source.tellg();
        source.seekg(cur);
        unsigned long long remaining = static_cast<unsigned long long>(end - cur);
        if (remaining < payload) {
            throw TruncatedError("ttf: stream holds " + std::to_string(remaining) +
                                 " payload bytes, header declares " + std::to_string(payload));
        }
        if (remaining > payload) {
            throw FormatError("ttf: trailing bytes after payload");
        }
    }

    std::vector<std::vector<double>> cores;
    cores.reserve(static_cast<size_t>(d));
    for (Index k = 0; k < d; ++k) {
        std::size_t count = static_cast<std::size_t>(b) *
                            static_cast<std::size_t>(rr[k] * shape.mode_dim(k) * rr[k + 1]);
        std::vector<double> c(count);
        source.read(reinterpret_cast<char*>(c.data()),
                    static_cast<std::streamsize>(count * sizeof(double)));
        if (!source) {
            throw TruncatedError("ttf: stream ended inside core " + std::to_string(k) +
                                 " payload (expected " + std::to_string(count * sizeof(double)) +
                                 " bytes, got " + std::to_string(source.gcount()) + ")");
        }
        cores.push_back(std::move(c));
    }
    if (source.peek() != std::istream::traits_type::eof()) {
        throw FormatError("ttf: trailing bytes after payload");
    }
    if (is_batch) {
        return TensorTrainBatch(b, std::move(shape), std::move(rr), std::move(cores));
    }
    return TensorTrain(std::move(shape), std::move(rr), std::move(cores));
}

}  // namespace tt::io
