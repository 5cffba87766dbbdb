#include "hembed/lp.hpp"

#include <utility>

#include "hembed/errors.hpp"

namespace hembed {

namespace {

// Dense tableau simplex, maximize form: max c.x s.t. A x <= b, x >= 0.
// Rows 0..m-1 hold constraints, row m the true objective, row m+1 the
// artificial objective used to reach feasibility. Nonbasic id -1 marks the
// artificial column. Bland's rule everywhere keeps exact arithmetic cycle
// free.
class Simplex {
 public:
  Simplex(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
          const std::vector<Rat>& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        N_(n_ + 1),
        B_(m_),
        D_(m_ + 2, std::vector<Rat>(n_ + 2)) {
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < n_; ++j) D_[i][j] = A[i][j];
    for (int i = 0; i < m_; ++i) {
      B_[i] = n_ + i;
      D_[i][n_] = -1;
      D_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      N_[j] = j;
      D_[m_][j] = -c[j];
    }
    N_[n_] = -1;
    D_[m_ + 1][n_] = 1;
  }

  LpResult solve() {
    LpResult res;
    if (m_ > 0) {
      int r = 0;
      for (int i = 1; i < m_; ++i)
        if (D_[i][n_ + 1] < D_[r][n_ + 1]) r = i;
      if (D_[r][n_ + 1] < 0) {
        pivot(r, n_);
        // The artificial phase always terminates bounded; a negative optimum
        // of the artificial objective certifies infeasibility.
        if (!iterate(m_ + 1, false) || D_[m_ + 1][n_ + 1] < 0) {
          res.status = LpResult::Infeasible;
          return res;
        }
        for (int i = 0; i < m_; ++i)
          if (B_[i] == -1) {
            int s = -1;
            for (int j = 0; j <= n_; ++j)
              if (D_[i][j] != 0 && (s == -1 || N_[j] < N_[s])) s = j;
            // All-zero row: a redundant constraint; the artificial variable
            // parks there at value zero and never moves again.
            if (s >= 0) pivot(i, s);
          }
      }
    }
    if (!iterate(m_, true)) {
      res.status = LpResult::Unbounded;
      return res;
    }
    res.status = LpResult::Optimal;
    res.x.assign(n_, Rat(0));
    for (int i = 0; i < m_; ++i)
      if (B_[i] >= 0 && B_[i] < n_) res.x[B_[i]] = D_[i][n_ + 1];
    res.value = D_[m_][n_ + 1];
    return res;
  }

 private:
  // Optimize the given objective row. skip_artificial excludes the
  // artificial column from entering during the main phase.
  bool iterate(int obj_row, bool skip_artificial) {
    for (;;) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (skip_artificial && N_[j] == -1) continue;
        if (D_[obj_row][j] < 0 && (s == -1 || N_[j] < N_[s])) s = j;
      }
      if (s == -1) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (D_[i][s] <= 0) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        Rat cur = D_[i][n_ + 1] / D_[i][s];
        Rat best = D_[r][n_ + 1] / D_[r][s];
        if (cur < best || (cur == best && B_[i] < B_[r])) r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  void pivot(int r, int s) {
    Rat inv = Rat(1) / D_[r][s];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || D_[i][s] == 0) continue;
      Rat factor = D_[i][s] * inv;
      for (int j = 0; j < n_ + 2; ++j) D_[i][j] -= D_[r][j] * factor;
      D_[i][s] = D_[r][s] * factor;  // undo the j == s subtraction
    }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) D_[r][j] *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) D_[i][s] *= -inv;
    D_[r][s] = inv;
    std::swap(B_[r], N_[s]);
  }

  int m_, n_;
  std::vector<int> N_, B_;
  std::vector<std::vector<Rat>> D_;
};

}  // namespace

LpResult solve_lp_min(const std::vector<std::vector<Rat>>& lhs,
                      const std::vector<Rat>& rhs,
                      const std::vector<Rat>& objective) {
  size_t m = lhs.size();
  if (rhs.size() != m) throw ParamError("lp: row count mismatch");
  for (const auto& row : lhs)
    if (row.size() != objective.size()) throw ParamError("lp: column count mismatch");
  // Flip min / >= into the max / <= form the tableau wants.
  std::vector<std::vector<Rat>> A(m, std::vector<Rat>(objective.size()));
  std::vector<Rat> b(m);
  std::vector<Rat> c(objective.size());
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < objective.size(); ++j) A[i][j] = -lhs[i][j];
    b[i] = -rhs[i];
  }
  for (size_t j = 0; j < objective.size(); ++j) c[j] = -objective[j];
  LpResult res = Simplex(A, b, c).solve();
  if (res.status == LpResult::Optimal) res.value = -res.value;
  return res;
}

}  // namespace hembed
