#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

#include "tt/tensor_train.hpp"

namespace tt::io {

// .ttf binary format, version 1:
//   magic "TTF1" | u16 version | u16 flags (bit0 is_matrix, bit1 is_batch)
//   | u16 d | u32 batch_size | d u32 dims (2d row-major pairs for matrices)
//   | d+1 u32 ranks | cores in order, f64 row-major, batch axis outermost.
// All integers little-endian.

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BadMagicError : public IoError {
public:
    using IoError::IoError;
};

class UnsupportedVersionError : public IoError {
public:
    using IoError::IoError;
};

class TruncatedError : public IoError {
public:
    using IoError::IoError;
};

/// Header fields that do not describe a valid TT object (zero dims, broken
/// rank chain, unknown flag bits, trailing bytes, ...).
class FormatError : public IoError {
public:
    using IoError::IoError;
};

/// Serialize; returns the number of bytes written. Byte-exact deterministic.
std::size_t save(const TensorTrain& t, std::ostream& sink);
std::size_t save(const TensorTrainBatch& t, std::ostream& sink);

using LoadResult = std::variant<TensorTrain, TensorTrainBatch>;

/// Inverse of save. The stream must contain exactly one object; trailing
/// bytes are rejected.
LoadResult load(std::istream& source);

}  // namespace tt::io
