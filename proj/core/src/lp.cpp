#include "mtroute/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mtroute::lp {

namespace {

constexpr double kEps = 1e-9;
constexpr double kPivotTol = 1e-10;

// Row-major tableau. Row 0 carries reduced costs (minimization form) with the
// negated objective value in its rhs slot; rows 1..m are constraint rows kept
// in B^-1 A form with rhs >= 0.
struct Tableau {
  int m = 0;
  int width = 0;  // columns including rhs
  std::vector<double> a;
  std::vector<int> basis;  // basis[r] = column basic in row r+1

  double* row(int r) { return a.data() + static_cast<size_t>(r) * width; }
  const double* row(int r) const {
    return a.data() + static_cast<size_t>(r) * width;
  }
  int rhs_col() const { return width - 1; }

  void pivot(int pr, int pc) {
    double* prow = row(pr);
    const double inv = 1.0 / prow[pc];
    for (int j = 0; j < width; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (int r = 0; r <= m; ++r) {
      if (r == pr) continue;
      double* rr = row(r);
      const double f = rr[pc];
      if (f == 0.0) continue;
      for (int j = 0; j < width; ++j) rr[j] -= f * prow[j];
      rr[pc] = 0.0;
    }
    basis[pr - 1] = pc;
  }
};

// Minimizes the cost currently loaded in row 0. `allowed[c]` gates entering
// columns. Returns optimal/unbounded/iteration_limit.
LpStatus run_simplex(Tableau& t, const std::vector<char>& allowed,
                     int max_iters, int& iters) {
  const int rhs = t.rhs_col();
  int stall = 0;
  bool bland = false;
  double last_obj = t.row(0)[rhs];
  while (true) {
    if (iters >= max_iters) return LpStatus::iteration_limit;
    const double* r0 = t.row(0);
    int pc = -1;
    if (!bland) {
      double best = -kEps;
      for (int j = 0; j < rhs; ++j) {
        if (allowed[j] && r0[j] < best) { best = r0[j]; pc = j; }
      }
    } else {
      for (int j = 0; j < rhs; ++j) {
        if (allowed[j] && r0[j] < -kEps) { pc = j; break; }
      }
    }
    if (pc < 0) return LpStatus::optimal;

    int pr = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 1; r <= t.m; ++r) {
      const double arc = t.row(r)[pc];
      if (arc <= kPivotTol) continue;
      const double ratio = t.row(r)[rhs] / arc;
      if (ratio < best_ratio - kEps ||
          (ratio < best_ratio + kEps &&
           (pr < 0 || t.basis[r - 1] < t.basis[pr - 1]))) {
        best_ratio = ratio;
        pr = r;
      }
    }
    if (pr < 0) return LpStatus::unbounded;

    t.pivot(pr, pc);
    ++iters;

    const double obj = t.row(0)[rhs];
    if (obj > last_obj - kEps) {
      if (++stall > 64) bland = true;  // anti-cycling fallback
    } else {
      stall = 0;
      bland = false;
    }
    last_obj = obj;
  }
}

}  // namespace

int LpProblem::add_variable(double objective_coeff) {
  objective_.push_back(objective_coeff);
  return static_cast<int>(objective_.size()) - 1;
}

void LpProblem::set_objective(int var, double coeff) {
  objective_.at(static_cast<size_t>(var)) = coeff;
}

void LpProblem::add_le(std::vector<std::pair<int, double>> terms, double rhs) {
  rows_.push_back({std::move(terms), Rel::le, rhs});
}

void LpProblem::add_ge(std::vector<std::pair<int, double>> terms, double rhs) {
  rows_.push_back({std::move(terms), Rel::ge, rhs});
}

void LpProblem::add_eq(std::vector<std::pair<int, double>> terms, double rhs) {
  rows_.push_back({std::move(terms), Rel::eq, rhs});
}

LpSolution LpProblem::maximize() const {
  const int n = variable_count();
  const int m = row_count();
  for (const Row& r : rows_) {
    for (const auto& [v, c] : r.terms) {
      if (v < 0 || v >= n) throw std::out_of_range("lp: bad variable index");
      (void)c;
    }
  }

  // Normalize rows to rhs >= 0, then count slack and artificial columns.
  struct Norm { Rel rel; double rhs; };
  std::vector<Norm> norm(rows_.size());
  int n_slack = 0;
  int n_art = 0;
  for (int i = 0; i < m; ++i) {
    Rel rel = rows_[i].rel;
    double rhs = rows_[i].rhs;
    if (rhs < 0.0) {
      rhs = -rhs;
      if (rel == Rel::le) rel = Rel::ge;
      else if (rel == Rel::ge) rel = Rel::le;
    }
    norm[i] = {rel, rhs};
    if (rel != Rel::eq) ++n_slack;
    if (rel != Rel::le) ++n_art;
  }

  Tableau t;
  t.m = m;
  t.width = n + n_slack + n_art + 1;
  t.a.assign(static_cast<size_t>(m + 1) * t.width, 0.0);
  t.basis.assign(static_cast<size_t>(m), -1);
  const int slack0 = n;
  const int art0 = n + n_slack;
  const int rhs = t.rhs_col();

  int si = 0;
  int ai = 0;
  for (int i = 0; i < m; ++i) {
    double* row = t.row(i + 1);
    const double sign = rows_[i].rhs < 0.0 ? -1.0 : 1.0;
    for (const auto& [v, c] : rows_[i].terms) row[v] += sign * c;
    row[rhs] = norm[i].rhs;
    if (norm[i].rel == Rel::le) {
      row[slack0 + si] = 1.0;
      t.basis[i] = slack0 + si++;
    } else if (norm[i].rel == Rel::ge) {
      row[slack0 + si++] = -1.0;
      row[art0 + ai] = 1.0;
      t.basis[i] = art0 + ai++;
    } else {
      row[art0 + ai] = 1.0;
      t.basis[i] = art0 + ai++;
    }
  }

  LpSolution sol;
  const int max_iters = 2000 + 200 * (m + n);
  std::vector<char> allowed(static_cast<size_t>(rhs), 1);

  if (n_art > 0) {
    // Phase 1: minimize the sum of artificials. Reduced costs: start from the
    // raw cost (1 on artificials) and price out the basic artificials.
    double* r0 = t.row(0);
    for (int j = art0; j < art0 + n_art; ++j) r0[j] = 1.0;
    for (int r = 1; r <= m; ++r) {
      if (t.basis[r - 1] < art0) continue;
      const double* rr = t.row(r);
      for (int j = 0; j < t.width; ++j) r0[j] -= rr[j];
    }
    const LpStatus st = run_simplex(t, allowed, max_iters, sol.iterations);
    if (st == LpStatus::iteration_limit) {
      sol.status = st;
      return sol;
    }
    const double art_sum = -t.row(0)[rhs];
    if (st == LpStatus::unbounded || art_sum > 1e-7) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
    // Drive basic artificials out; a row with no structural pivot is
    // redundant and dropped.
    for (int r = 1; r <= t.m; ++r) {
      if (t.basis[r - 1] < art0) continue;
      int pc = -1;
      const double* rr = t.row(r);
      for (int j = 0; j < art0; ++j) {
        if (std::abs(rr[j]) > 1e-7) { pc = j; break; }
      }
      if (pc >= 0) {
        t.pivot(r, pc);
      } else {
        // Swap-delete the redundant row.
        if (r != t.m) {
          std::copy(t.row(t.m), t.row(t.m) + t.width, t.row(r));
          t.basis[r - 1] = t.basis[t.m - 1];
        }
        --t.m;
        --r;
      }
    }
    for (int j = art0; j < art0 + n_art; ++j) allowed[j] = 0;
  }

  // Phase 2: minimize the negated user objective.
  {
    double* r0 = t.row(0);
    std::fill(r0, r0 + t.width, 0.0);
    for (int j = 0; j < n; ++j) r0[j] = -objective_[j];
    for (int r = 1; r <= t.m; ++r) {
      const int b = t.basis[r - 1];
      if (b >= n) continue;
      const double cb = -objective_[b];
      if (cb == 0.0) continue;
      const double* rr = t.row(r);
      for (int j = 0; j < t.width; ++j) r0[j] -= cb * rr[j];
      r0[b] = 0.0;
    }
  }
  const LpStatus st = run_simplex(t, allowed, max_iters, sol.iterations);
  sol.status = st;
  if (st != LpStatus::optimal) return sol;

  sol.x.assign(static_cast<size_t>(n), 0.0);
  for (int r = 1; r <= t.m; ++r) {
    const int b = t.basis[r - 1];
    if (b < n) sol.x[static_cast<size_t>(b)] = t.row(r)[rhs];
  }
  double obj = 0.0;
  for (int j = 0; j < n; ++j) obj += objective_[j] * sol.x[static_cast<size_t>(j)];
  sol.objective = obj;
  return sol;
}

}  // namespace mtroute::lp
