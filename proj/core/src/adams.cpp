#include "torcal/adams.hpp"

namespace torcal::adams {

using diagram::Level;

E2Page e2_from_modules(const diagram::DiagramModule& mx, const diagram::DiagramModule& my,
                       Window t_window, int max_len) {
  E2Page page;
  page.rank = mx.diag->poset->spec->rank;
  page.collapse_at = page.rank + 1;
  page.table = homalg::ext(mx, my, t_window, max_len);
  page.table.rank = page.rank;
  page.totals = page.table.totals();
  return page;
}

E2Page e2_page(const CellContext& ctx, const CellExpr& x, const CellExpr& y, Window t_window,
               Window module_window, int max_len) {
  diagram::DiagramModule mx = cells::pi_A_expr(ctx, x, Level::G, module_window);
  diagram::DiagramModule my = cells::pi_A_expr(ctx, y, Level::G, module_window);
  return e2_from_modules(mx, my, t_window, max_len);
}

DegeneracyReport degeneracy_report(const E2Page& page) {
  DegeneracyReport rep;
  // nonzero rows per t-s line
  std::map<int, std::set<int>> rows;
  for (auto& [st, dim] : page.table.entries)
    if (dim > 0) rows[st.second - st.first].insert(st.first);
  rep.fully_collapsed = true;
  for (auto& [line, srows] : rows) {
    // a differential d_r (r >= 2) maps (s, t) to (s + r, t + r - 1), i.e.
    // from line k to line k - 1; it can act only if both rows are nonzero
    bool blocked = true;
    for (int s : srows) {
      for (int r = 2; r <= page.rank; ++r) {
        // outgoing
        auto tgt = rows.find(line - 1);
        if (tgt != rows.end() && tgt->second.count(s + r)) blocked = false;
        // incoming
        auto src = rows.find(line + 1);
        if (src != rows.end() && src->second.count(s - r)) blocked = false;
      }
    }
    if (blocked) {
      int total = 0;
      for (int s : srows) {
        for (auto& [st, dim] : page.table.entries)
          if (st.first == s && st.second - st.first == line) total += dim;
      }
      rep.converged[line] = total;
    } else {
      rep.ambiguous.push_back(line);
      rep.fully_collapsed = false;
    }
  }
  return rep;
}

}  // namespace torcal::adams
