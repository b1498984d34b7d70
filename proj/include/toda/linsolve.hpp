#pragma once

#include <map>
#include <vector>

#include "toda/poly.hpp"

namespace toda {

// Sparse exact system over Q: rows[r] . x = rhs[r].
struct SparseSystem {
  int ncols = 0;
  std::vector<std::map<int, Rational>> rows;
  std::vector<Rational> rhs;

  void add_row(std::map<int, Rational> row, Rational b);
};

enum class SolveStatus { unique, underdetermined, inconsistent };

struct RationalSolution {
  SolveStatus status = SolveStatus::inconsistent;
  int rank = 0;
  std::vector<Rational> x;                    // particular solution, free variables 0
  std::vector<std::vector<Rational>> kernel;  // basis of the null space
  std::vector<int> pivots;
};

RationalSolution solve_sparse(const SparseSystem& sys);

// Fraction-free (Bareiss) elimination over Q[params].
// Solves A x = b for an overdetermined-or-square system of full column rank.
struct PolySolution {
  SolveStatus status = SolveStatus::inconsistent;
  int rank = 0;
  std::vector<Poly> num;  // x_i = num_i / den
  Poly den;
};

PolySolution bareiss_solve(std::vector<std::vector<Poly>> A, std::vector<Poly> b);

}  // namespace toda
