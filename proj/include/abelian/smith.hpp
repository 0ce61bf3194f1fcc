#pragma once

#include <vector>

#include "abelian/numeric.hpp"

namespace abelian {

using IntegerMatrix = std::vector<std::vector<Integer>>;

/// Smith normal form D = U * M * V of an integer matrix. Only the left
/// transform U is kept: it carries the generators of Z^rows / M Z^cols onto
/// the generators of the diagonal presentation.
struct SmithForm {
  std::vector<Integer> diagonal;  // length rows; zero past rank, d_i | d_{i+1}
  IntegerMatrix left;             // rows x rows, unimodular
};

SmithForm smith_normal_form(IntegerMatrix matrix);

}  // namespace abelian
