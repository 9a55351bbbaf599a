#pragma once

#include "torcal/qlinalg.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace torcal::lattice {

enum class GroupName { Circle, Torus2, O2, SO3, SU3 };

std::string group_name_str(GroupName g);
std::optional<GroupName> parse_group_name(const std::string& s);

// small integer matrix acting on the cocharacter lattice
using IMat = std::vector<std::vector<long>>;

IMat imat_identity(int n);
IMat imat_mul(const IMat& a, const IMat& b);
std::vector<long> imat_apply(const IMat& m, const std::vector<long>& v);

// Static data for a supported compact Lie group: rank, toral Weyl group as
// integer matrices on the cocharacter lattice, reflections with the
// characters their root subgroups kill, and adjoint dimensions.
struct GroupSpec {
  GroupName name;
  int rank;
  std::vector<IMat> weyl_elements;   // element 0 is the identity; closed under product
  std::vector<int> reflections;      // indices into weyl_elements
  std::vector<std::vector<long>> reflection_roots;  // character of T killed... (root of the reflection)
  std::vector<std::vector<long>> positive_root_dirs;  // root directions in the cocharacter lattice
  int dim_g;
  int dim_t;

  int weyl_order() const { return int(weyl_elements.size()); }
  int weyl_mul(int a, int b) const;
  int weyl_inv(int a) const;

  static const GroupSpec& get(GroupName g);
};

// A closed subgroup of the maximal torus.
//   rank 1:  dim=1 => T;  dim=0 => cyclic of order n.
//   rank 2:  dim=2 => T;  dim=1 => (primitive cocharacter v, component count k);
//            dim=0 => finite, encoded by the lattice (1/m)*L with Z^2 <= (1/m)L,
//            L in Hermite normal form.
struct ToralSubgroup {
  int ambient_rank = 1;
  int dim = 0;
  long n = 1;                    // rank 1 finite order
  std::vector<long> v;           // rank 2, dim 1: primitive direction (canonical sign)
  long k = 1;                    // rank 2, dim 1: number of components
  long m = 1;                    // rank 2, dim 0: denominator
  IMat fin;                      // rank 2, dim 0: HNF basis of m*(lattice), 2x2

  static ToralSubgroup cyclic(long n);
  static ToralSubgroup full_torus(int ambient_rank);
  static ToralSubgroup circle2(std::vector<long> v, long k = 1);
  static ToralSubgroup finite2(long m, const IMat& gens_times_m);

  std::string label() const;
  bool operator==(const ToralSubgroup& o) const = default;
  bool operator<(const ToralSubgroup& o) const;

  ToralSubgroup acted_by(const IMat& w) const;
  // is the character alpha trivial on this subgroup?
  bool kills_character(const std::vector<long>& alpha) const;
};

// true iff l <= k with k/l a torus (cotoral inclusion, reflexive)
bool cotoral_leq(const ToralSubgroup& k, const ToralSubgroup& l);
// true iff l is a subgroup of k
bool subgroup_leq(const ToralSubgroup& k, const ToralSubgroup& l);

struct TruncationParams {
  long N = 1;  // rank 1: include C_1..C_N and T
};

struct WeylAction {
  const GroupSpec* spec = nullptr;
  // permutation action on poset elements, one per weyl element
  std::vector<std::vector<int>> on_subgroups;
};

struct SubgroupPoset {
  const GroupSpec* spec = nullptr;
  TruncationParams truncation;
  std::vector<ToralSubgroup> subgroups;           // sorted, deterministic
  std::vector<std::pair<int, int>> cotoral_pairs; // (k, l) with k > l strict
  WeylAction weyl;

  int index_of(const ToralSubgroup& s) const;
  int torus_index() const;
  bool leq(int k, int l) const;  // cotoral, reflexive
  // orbit of a subgroup under the Weyl action
  std::vector<int> orbit(int s) const;
  int act(int w, int s) const { return weyl.on_subgroups.at(w).at(s); }
};

SubgroupPoset build_poset(const GroupSpec& spec, const TruncationParams& trunc);
SubgroupPoset build_poset(const GroupSpec& spec,
                          const std::vector<ToralSubgroup>& user_list);

// strictly decreasing cotoral chain, longest term first; indices into poset
struct Flag {
  std::vector<int> terms;
  bool operator==(const Flag& o) const = default;
  bool operator<(const Flag& o) const;
  int length() const { return int(terms.size()) - 1; }
  int top() const { return terms.front(); }
  int bottom() const { return terms.back(); }
};

// all flags of length <= max_len, deterministically ordered (shorter first,
// then lexicographic on labels)
std::vector<Flag> enumerate_flags(const SubgroupPoset& poset, int max_len);

// is e a subflag of f (as term sets)?
bool subflag(const Flag& e, const Flag& f);

Flag act_on_flag(const SubgroupPoset& poset, int w, const Flag& f);

// ---------------------------------------------------------------------------
// Transport category over a finite poset with Weyl action.
//
// Objects are flags; a morphism (i, w) has source s, inclusion i: s -> t, and
// target t^w.  Composition follows (i,v)(j,w) = (i j^{v^-1}, vw).
struct TransportMorphism {
  Flag source;
  Flag incl_target;  // codomain of the inclusion part
  int w = 0;
  Flag target;       // incl_target acted by w
};

struct TransportCategory {
  const SubgroupPoset* poset = nullptr;
  std::vector<Flag> objects;
  std::vector<TransportMorphism> morphisms;
};

TransportCategory build_transport_category(const SubgroupPoset& poset, int max_flag_len);

TransportMorphism transport_compose(const SubgroupPoset& poset,
                                    const TransportMorphism& m1,
                                    const TransportMorphism& m2);

// ---------------------------------------------------------------------------
// Component structures.

// Subgroup of the toral Weyl group, as a sorted element-index set.
using WeylSubgroup = std::vector<int>;

WeylSubgroup weyl_subgroup_generated(const GroupSpec& spec, const std::vector<int>& gens);
bool weyl_subgroup_contains(const WeylSubgroup& h, int elt);
bool weyl_subgroup_normal_in(const GroupSpec& spec, const WeylSubgroup& h, const WeylSubgroup& g);

enum class StructureKind { Lie, Connected, Discrete };

struct ComponentStructure {
  const SubgroupPoset* poset = nullptr;
  StructureKind kind = StructureKind::Lie;
  std::vector<Flag> flags;
  std::vector<WeylSubgroup> isotropy;   // (WG)_F
  std::vector<WeylSubgroup> we;         // W_F^e <= (WG)_F
  bool on_flag_poset = true;            // false: flags are the length-0 flags with cotoral maps

  int flag_index(const Flag& f) const;
  int residual_order(int fi) const { return int(isotropy[fi].size() / we[fi].size()); }
};

// isotropy group of a flag: intersection of the stabilizers of its terms
WeylSubgroup flag_isotropy(const SubgroupPoset& poset, const Flag& f);

// The Lie component structure: W_F^e is generated by the reflections whose
// root kills the top term of the flag.
ComponentStructure component_structure(const SubgroupPoset& poset, int max_flag_len,
                                       StructureKind kind = StructureKind::Lie,
                                       bool on_flag_poset = true);

// decreasing: along every diagram map s -> t, W_t^e <= W_s^e.
// On the flag poset maps are subflag inclusions e -> f; on the subgroup poset
// they are inflations k -> l for l cotoral in k.
std::pair<bool, bool> check_structure_flags(const ComponentStructure& cs);

// Morphisms of the discrete residual orbifold: (inclusion, double coset).
// Requires a normal structure; verifies composition is well defined on
// representatives and associativity on all composable triples.
struct ResidualCheck {
  bool well_defined = true;
  bool associative = true;
  int num_morphisms = 0;
};
ResidualCheck discrete_residual(const ComponentStructure& cs);

}  // namespace torcal::lattice
