#pragma once

#include "torcal/homalg.hpp"

#include <optional>
#include <string>

namespace torcal::cells {

using diagram::DiagramModule;
using diagram::Level;
using diagram::RingDiagram;
using gralg::NormalForm;
using gralg::Window;
using lattice::SubgroupPoset;

enum class CellKind {
  Sphere,
  ToralIdempotentSphere,  // e_T S^0: the sphere seen inside the toral part
  Cell,                   // G/L_+
  Idempotent,             // E<(K)>
  CoinducedT,             // F_T(G_+, E<K>_T)
  CoinducedN,             // F_N(G_+, E<K>_N)
};

struct CellSpec {
  CellKind kind = CellKind::Sphere;
  int subgroup = -1;  // poset index for Cell/Idempotent/Coinduced
};

// grammar: sphere | etoral | cell:<label> | idem:<label> | coind:T:idem:<label>
//          | coind:N:idem:<label>   with labels C1, C2, ..., T
std::optional<CellSpec> parse_cell(const SubgroupPoset& poset, const std::string& s);
std::string cell_name(const SubgroupPoset& poset, const CellSpec& cell);
std::vector<CellSpec> catalog(const SubgroupPoset& poset);

struct CellContext {
  const SubgroupPoset* poset = nullptr;
  const RingDiagram* ra = nullptr;    // N-level diagram
  const RingDiagram* rinv = nullptr;  // G-level diagram
};

// the algebraic image of the cell at the requested level
DiagramModule pi_A(const CellContext& ctx, const CellSpec& cell, Level level, Window win);

// finite formal sums of shifted cells
struct CellExpr {
  std::vector<std::pair<int, CellSpec>> terms;  // (shift, cell)
};
std::optional<CellExpr> parse_cell_expr(const SubgroupPoset& poset, const std::string& s);
DiagramModule pi_A_expr(const CellContext& ctx, const CellExpr& expr, Level level, Window win);

// fixed points of an induced space: one piece per Weyl translate of L
struct FixedPointDecomposition {
  struct Piece {
    int weyl_rep;  // group element carrying L onto the translate
    int subgroup;  // the translate
  };
  std::vector<Piece> pieces;
};
FixedPointDecomposition fixed_point_decomposition(const SubgroupPoset& poset, int L);

// adjoint-representation suspension: a total degree shift by dim G - dim T,
// valid because multiplication by the product of the positive-root Euler
// classes is an isomorphism onto the invariants (verified up to the bound)
struct SuspendResult {
  DiagramModule module;
  int shift = 0;
  bool euler_multiplication_is_iso = false;
};
SuspendResult suspend_adjoint(const DiagramModule& m, const lattice::GroupSpec& spec,
                              int check_bound = 20);

// equal-rank change of groups along T <= O2 <= SO3 (and the identity)
enum class ChangeKind { ThetaStar, ThetaUpperStar, ThetaShriek };
DiagramModule change_groups(const DiagramModule& m, const RingDiagram& target_diag,
                            ChangeKind which);

// subgroups with nonzero stalk
std::vector<int> support(const DiagramModule& m);

}  // namespace torcal::cells
