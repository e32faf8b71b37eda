#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mtroute::lp {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpSolution {
  LpStatus status = LpStatus::iteration_limit;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

// Dense two-phase primal simplex for small/medium instances. Variables are
// non-negative; free variables must be split by the caller. Deterministic:
// Dantzig pricing with a Bland fallback once the objective stalls, smallest
// basis label on ratio ties.
class LpProblem {
 public:
  // Returns the variable index. Objective coefficient applies to maximize().
  int add_variable(double objective_coeff = 0.0);

  void set_objective(int var, double coeff);

  void add_le(std::vector<std::pair<int, double>> terms, double rhs);
  void add_ge(std::vector<std::pair<int, double>> terms, double rhs);
  void add_eq(std::vector<std::pair<int, double>> terms, double rhs);

  int variable_count() const { return static_cast<int>(objective_.size()); }
  int row_count() const { return static_cast<int>(rows_.size()); }

  LpSolution maximize() const;

 private:
  enum class Rel { le, ge, eq };
  struct Row {
    std::vector<std::pair<int, double>> terms;
    Rel rel;
    double rhs;
  };
  std::vector<double> objective_;
  std::vector<Row> rows_;
};

}  // namespace mtroute::lp
