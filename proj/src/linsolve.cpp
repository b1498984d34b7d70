#include "toda/linsolve.hpp"

#include <algorithm>
#include <stdexcept>

namespace toda {

void SparseSystem::add_row(std::map<int, Rational> row, Rational b) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->second == 0)
      it = row.erase(it);
    else
      ++it;
  }
  if (row.empty() && b == 0) return;
  rows.push_back(std::move(row));
  rhs.push_back(std::move(b));
}

RationalSolution solve_sparse(const SparseSystem& sys) {
  // pivot column -> (row, rhs), row normalized so the pivot is 1
  std::map<int, std::pair<std::map<int, Rational>, Rational>> piv;
  RationalSolution out;
  for (size_t r = 0; r < sys.rows.size(); ++r) {
    std::map<int, Rational> row = sys.rows[r];
    Rational b = sys.rhs[r];
    while (true) {
      int col = -1;
      for (auto& [c, v] : row)
        if (piv.count(c)) {
          col = c;
          break;
        }
      if (col < 0) break;
      Rational f = row[col];
      auto& [prow, pb] = piv[col];
      for (auto& [c, v] : prow) {
        Rational nv = row[c] - f * v;
        if (nv == 0)
          row.erase(c);
        else
          row[c] = nv;
      }
      b -= f * pb;
    }
    if (row.empty()) {
      if (b != 0) {
        out.status = SolveStatus::inconsistent;
        return out;
      }
      continue;
    }
    int col = row.begin()->first;
    Rational inv = 1 / row.begin()->second;
    for (auto& [c, v] : row) v *= inv;
    b *= inv;
    // keep existing pivot rows reduced with respect to the new pivot
    for (auto& [pc, pr] : piv) {
      auto it = pr.first.find(col);
      if (it == pr.first.end()) continue;
      Rational f = it->second;
      for (auto& [c, v] : row) {
        Rational nv = pr.first[c] - f * v;
        if (nv == 0)
          pr.first.erase(c);
        else
          pr.first[c] = nv;
      }
      pr.second -= f * b;
    }
    piv.emplace(col, std::make_pair(std::move(row), b));
  }
  out.rank = static_cast<int>(piv.size());
  out.x.assign(sys.ncols, Rational(0));
  std::vector<bool> is_pivot(sys.ncols, false);
  for (auto& [c, pr] : piv) {
    is_pivot[c] = true;
    out.x[c] = pr.second;
    out.pivots.push_back(c);
  }
  for (int fcol = 0; fcol < sys.ncols; ++fcol) {
    if (is_pivot[fcol]) continue;
    std::vector<Rational> k(sys.ncols, Rational(0));
    k[fcol] = 1;
    for (auto& [c, pr] : piv) {
      auto it = pr.first.find(fcol);
      if (it != pr.first.end()) k[c] = -it->second;
    }
    out.kernel.push_back(std::move(k));
  }
  out.status = out.kernel.empty() ? SolveStatus::unique : SolveStatus::underdetermined;
  return out;
}

PolySolution bareiss_solve(std::vector<std::vector<Poly>> A, std::vector<Poly> b) {
  PolySolution out;
  size_t m = A.size();
  if (m == 0) return out;
  size_t n = A[0].size();
  for (size_t i = 0; i < m; ++i) A[i].push_back(b[i]);
  Poly prev(1);
  size_t r = 0;
  std::vector<size_t> pcols;
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t p = r;
    while (p < m && A[p][c].is_zero()) ++p;
    if (p == m) continue;
    std::swap(A[p], A[r]);
    for (size_t i = r + 1; i < m; ++i) {
      for (size_t j = c + 1; j <= n; ++j) A[i][j] = divide_exact(A[r][c] * A[i][j] - A[i][c] * A[r][j], prev);
      A[i][c] = Poly();
    }
    // rows above are not touched; later back-substitution handles them
    prev = A[r][c];
    pcols.push_back(c);
    ++r;
  }
  out.rank = static_cast<int>(r);
  for (size_t i = r; i < m; ++i)
    if (!A[i][n].is_zero()) {
      out.status = SolveStatus::inconsistent;
      return out;
    }
  if (r < n) {
    out.status = SolveStatus::underdetermined;
    return out;
  }
  // x_k = X_k / D with D the last pivot; X_k polynomial by Cramer's rule
  Poly D = A[n - 1][n - 1];
  std::vector<Poly> X(n);
  for (size_t k = n; k-- > 0;) {
    Poly s = D * A[k][n];
    for (size_t j = k + 1; j < n; ++j) s -= A[k][j] * X[j];
    X[k] = divide_exact(s, A[k][k]);
  }
  out.status = SolveStatus::unique;
  out.num = std::move(X);
  out.den = D;
  return out;
}

}  // namespace toda
