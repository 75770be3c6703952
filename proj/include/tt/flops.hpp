#pragma once

#include <cstdint>

namespace tt::flops {

// Multiply-add counter for the tangent-space kernels. Counts analytic GEMM
// sizes, not hardware instructions; used to verify the advertised
// complexities without relying on wall time.

void reset();
void add(std::uint64_t multiply_adds);
std::uint64_t count();

}  // namespace tt::flops
