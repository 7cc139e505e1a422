#pragma once

#include <string>

#include "sps/matrix_market.hpp"

namespace sps {

/// Deterministic test matrices.
///   paper40    - A_ij = cos(3^{1/4} i^{1/2} j)^5 with 1-based indices (real)
///   rankdef    - random n x n of the given rank (real; rank defaults to n-1)
///   hermitian  - B + B^* for random complex B
///   complexsym - B + B^T for random complex B
DenseVariant gen_test_matrix(const std::string& kind, index_t n, index_t rank = -1,
                             unsigned seed = 1);

}  // namespace sps
