#pragma once

#include "kgh/execution.hpp"
#include "kgh/spectrum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kgh {

enum class CouplingCase { pure_vector, pure_scalar };

std::string to_string(CouplingCase c);

// One column of a binding-energy table: a coupling case at fixed alpha and n.
struct TableColumn {
  CouplingCase coupling;
  double alpha;
  int n;
};

struct TableSetup {
  int id = 1; // 1: ground states, 2: excited states
  std::vector<double> q_values;
  std::vector<TableColumn> columns;
  double vector_coupling = 0.25;
  double scalar_coupling = 0.25;
  double m0 = 1.0;
  int dim = 1;
  int l = 0;
};

TableSetup table1_setup();
TableSetup table2_setup();

struct TableCell {
  double q;
  TableColumn column;
  std::optional<double> energy; // nullopt renders as "-"
  std::string reason;           // failed inequality for "-" cells
  double residual = 0;          // of the unsquared energy equation
  bool residual_verified = false;
  std::optional<double> reference; // published value, nullopt for "-"
};

// Cells in row-major order (q outer, columns inner). Each cell evaluates the
// explicit particle-branch formula; nothing is discarded by back-substitution,
// but every cell records its residual.
std::vector<TableCell> compute_table(const TableSetup& setup,
                                     Execution exec = Execution::parallel,
                                     double residual_tolerance = kResidualTolerance);

// Reference values for the default setups; nullopt for infeasible cells.
std::optional<double> reference_value(int table_id, double q, const TableColumn& col);

// Parameter set of one cell.
PotentialParams cell_params(const TableSetup& setup, double q, const TableColumn& col);

struct AbsenceCheck {
  double q;
  TableColumn column;
  std::size_t roots = 0;            // solve_levels count for that n
  std::optional<int> capacity_nmax; // pure-vector capacity bound, if any
  bool holds = false;
};

// No n = 1 level at alpha = 2 and no n = 2 level at alpha in {1, 2}, for both
// coupling cases, over the q grid of table 2.
std::vector<AbsenceCheck> table2_absence_checks(Execution exec = Execution::parallel);

} // namespace kgh
