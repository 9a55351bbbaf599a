#pragma once

#include "torcal/cells.hpp"

namespace torcal::adams {

using cells::CellContext;
using cells::CellExpr;
using gralg::Window;

struct E2Page {
  homalg::ExtTable table;
  int rank = 1;
  int collapse_at = 2;  // rank + 1
  std::map<int, int> totals;
};

// Ext of the algebraic images of two cell expressions, assembled as a page
E2Page e2_page(const CellContext& ctx, const CellExpr& x, const CellExpr& y, Window t_window,
               Window module_window, int max_len = 4);
E2Page e2_from_modules(const diagram::DiagramModule& mx, const diagram::DiagramModule& my,
                       Window t_window, int max_len = 4);

struct DegeneracyReport {
  // totals on lines where no differential can act (source or target rows empty)
  std::map<int, int> converged;
  std::vector<int> ambiguous;  // t - s lines with possible differentials
  bool fully_collapsed = false;
};

DegeneracyReport degeneracy_report(const E2Page& page);

}  // namespace torcal::adams
