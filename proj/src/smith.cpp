#include "abelian/smith.hpp"

#include <utility>

namespace abelian {
namespace {

struct Work {
  IntegerMatrix m;
  IntegerMatrix u;
  std::size_t rows;
  std::size_t cols;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(m[i], m[j]);
    std::swap(u[i], u[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& row : m) std::swap(row[i], row[j]);
  }
  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < cols; ++c) m[i][c] += q * m[j][c];
    for (std::size_t c = 0; c < rows; ++c) u[i][c] += q * u[j][c];
  }
  // col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < rows; ++r) m[r][i] += q * m[r][j];
  }
  void negate_row(std::size_t i) {
    for (auto& x : m[i]) x = -x;
    for (auto& x : u[i]) x = -x;
  }
};

}  // namespace

SmithForm smith_normal_form(IntegerMatrix matrix) {
  Work w;
  w.rows = matrix.size();
  w.cols = w.rows == 0 ? 0 : matrix.front().size();
  w.m = std::move(matrix);
  w.u.assign(w.rows, std::vector<Integer>(w.rows, 0));
  for (std::size_t i = 0; i < w.rows; ++i) w.u[i][i] = 1;

  const std::size_t steps = std::min(w.rows, w.cols);
  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool found = false;
      std::size_t pr = t, pc = t;
      Integer best;
      for (std::size_t r = t; r < w.rows; ++r) {
        for (std::size_t c = t; c < w.cols; ++c) {
          if (w.m[r][c] == 0) continue;
          Integer a = abs(w.m[r][c]);
          if (!found || a < best) {
            found = true;
            best = a;
            pr = r;
            pc = c;
          }
        }
      }
      if (!found) break;
      if (pr != t) w.swap_rows(pr, t);
      if (pc != t) w.swap_cols(pc, t);

      bool clean = true;
      const Integer pivot = w.m[t][t];
      for (std::size_t r = t + 1; r < w.rows; ++r) {
        if (w.m[r][t] == 0) continue;
        Integer q = w.m[r][t] / pivot;
        w.add_row(r, t, -q);
        if (w.m[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < w.cols; ++c) {
        if (w.m[t][c] == 0) continue;
        Integer q = w.m[t][c] / pivot;
        w.add_col(c, t, -q);
        if (w.m[t][c] != 0) clean = false;
      }
      if (!clean) continue;

      bool divisible = true;
      for (std::size_t r = t + 1; r < w.rows && divisible; ++r) {
        for (std::size_t c = t + 1; c < w.cols; ++c) {
          if (w.m[r][c] % pivot != 0) {
            w.add_row(t, r, 1);
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (w.m[t][t] < 0) w.negate_row(t);
  }

  SmithForm out;
  out.diagonal.assign(w.rows, 0);
  for (std::size_t t = 0; t < steps; ++t) out.diagonal[t] = w.m[t][t];
  out.left = std::move(w.u);
  return out;
}

}  // namespace abelian
