#pragma once

#include "diffusion/simd/kernels.hpp"

namespace diffusion::simd::detail {

// Defined only in the translation units built for the matching target.
// Callers must check CPU support before touching the returned table.
const KernelSet& avx2_table();
const KernelSet& neon_table();

}  // namespace diffusion::simd::detail
