#pragma once

#include "torcal/invariants.hpp"
#include "torcal/lattice.hpp"
#include "torcal/wmodule.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace torcal::diagram {

using gralg::NormalForm;
using gralg::RingTag;
using gralg::Window;
using gralg::WModule;
using lattice::Flag;
using lattice::SubgroupPoset;

enum class Flavor { Ra, Rinv, Rtw };
// N-level modules live over the full ring diagram with Weyl equivariance;
// G-level modules live over the invariant diagram with the residual action.
enum class Level { N, G };

std::string flag_label(const SubgroupPoset& poset, const Flag& f);

// Flag-indexed diagram of coefficient rings for a rank-one poset.
struct RingDiagram {
  const SubgroupPoset* poset = nullptr;
  Flavor flavor = Flavor::Ra;
  lattice::ComponentStructure cs;  // Lie structure on flags
  std::vector<Flag> flags;
  std::vector<RingTag> value;
  std::vector<bool> module_weyl;  // do modules at this flag carry the involution?
  std::vector<int> residual_order;
  struct Edge {
    int from, to;  // subflag inclusion
  };
  std::vector<Edge> edges;

  int flag_index(const Flag& f) const;
  // singleton flag index of a subgroup
  int singleton(int subgroup) const;
  std::string flag_name(int fi) const { return flag_label(*poset, flags[fi]); }
};

RingDiagram build_Ra(const SubgroupPoset& poset, int max_flag_len);
// requires the component structure to be decreasing (true on the flag poset);
// pass on_flag_poset = false to see the failure on the subgroup poset
RingDiagram build_Rinv(const SubgroupPoset& poset, int max_flag_len, bool on_flag_poset = true);
RingDiagram build_Rtw(const SubgroupPoset& poset, int max_flag_len);

// A module over a ring diagram: a windowed module per flag plus degreewise
// structure maps along the subflag edges.
struct DiagramModule {
  const RingDiagram* diag = nullptr;
  Level level = Level::G;
  Window win;
  std::vector<WModule> values;
  std::vector<std::vector<QMat>> edge_maps;  // per edge, indexed by win offsets

  const WModule& at_flag(const Flag& f) const;
  const WModule& at_subgroup(int subgroup) const;
  QMat edge_map_at(int edge, int t) const;
};

DiagramModule zero_module(const RingDiagram& diag, Level level, Window win);
DiagramModule direct_sum(const DiagramModule& a, const DiagramModule& b);
DiagramModule shift(const DiagramModule& m, int k);

// Assembly of a diagram module from stalks.  Flag values are the canonical
// scalar extensions of the bottom stalk; the map from the top singleton hits
// the surviving generators in slot order.  `t_stalk` may be omitted, in which
// case it is derived so the module is extended.
struct ModuleSpec {
  std::map<int, NormalForm> stalks;             // by subgroup index; missing = 0
  std::optional<NormalForm> t_stalk;            // over the rationals
  std::map<int, NormalForm> flag_overrides;     // by flag index (length >= 1)
};

DiagramModule assemble(const RingDiagram& diag, Level level, const ModuleSpec& spec, Window win);

// ---------------------------------------------------------------------------
// the qce and F-continuity checkers

struct CheckFailure {
  int flag = -1;
  std::string kind;  // "qc", "ext", "coeffs", "map", "loc"
  std::optional<int> degree;
};

struct QceReport {
  bool quasi_coherent = true;
  bool extended = true;
  bool f_continuous = true;
  std::vector<CheckFailure> failures;
  bool qce() const { return quasi_coherent && extended; }
};

QceReport check_qce(const DiagramModule& m);
// generator invertibility on every localized flag value, relative to the
// truncation, with failure witnesses
QceReport check_F_continuity(const DiagramModule& m);

// ---------------------------------------------------------------------------
// descent

// termwise extension of scalars along R_inv -> R; output is N-level
DiagramModule theta_star(const DiagramModule& m, const RingDiagram& ra);
// termwise fixed points under the component structure; output is G-level
DiagramModule psi(const DiagramModule& n, const RingDiagram& rinv);

// unit m -> Psi theta_* m is an isomorphism (always, in characteristic zero)
bool unit_check(const DiagramModule& m, const RingDiagram& ra, int* witness_flag = nullptr);
// counit theta_* Psi n -> n: an isomorphism exactly on restrictions from the
// full group; equivalent to flagwise normality at flags with W^e nontrivial
bool counit_check(const DiagramModule& n, int* witness_flag = nullptr);

// degreewise equality of two diagram modules (dims and an iso respecting the
// structure maps found by linear algebra)
bool modules_isomorphic(const DiagramModule& a, const DiagramModule& b, int* witness_flag = nullptr);

// ---------------------------------------------------------------------------
// rank-2 sample lane: diagrams of monomially localized free modules, enough
// to exercise the follows-the-coefficients condition on length-2 flags
namespace box {

struct MonomialRing {
  bool inv_x = false, inv_y = false;
};

// finite sums of monomial shifts of the ring
struct FreeValue {
  MonomialRing ring;
  std::vector<std::array<int, 2>> shifts;
};

FreeValue canonical(FreeValue v);

struct SampleDiagram {
  const SubgroupPoset* poset = nullptr;
  std::vector<Flag> flags;
  std::vector<MonomialRing> ring;  // per flag; singleton flags use {false,false}
};

SampleDiagram build_sample_Ra(const SubgroupPoset& poset);

struct SampleModule {
  std::vector<FreeValue> values;  // per flag
};

// free module with the same shift everywhere (the ring itself when shift = 0)
SampleModule constant_sample_module(const SampleDiagram& d, std::array<int, 2> shift);

struct SampleReport {
  bool ok = true;
  std::vector<std::pair<int, int>> failing_edges;  // (from flag, to flag)
  int length2_conditions_checked = 0;
};

// follows-the-coefficients along every subflag inclusion, including the
// inclusion of length-1 flags in length-2 flags
SampleReport check_sample_coefficients(const SampleDiagram& d, const SampleModule& m);

}  // namespace box

}  // namespace torcal::diagram
