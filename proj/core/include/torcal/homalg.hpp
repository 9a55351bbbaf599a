#pragma once

#include "torcal/diagram.hpp"

#include <map>

namespace torcal::homalg {

using diagram::DiagramModule;
using diagram::Level;
using diagram::RingDiagram;
using gralg::NormalForm;
using gralg::Window;
using gralg::WModule;

// A degree-zero map of diagram modules over the same diagram.
struct DiagramMap {
  std::vector<std::vector<QMat>> component;  // per flag, per degree (win offsets)
};

// right adjoint to evaluation at a subgroup: the module vanishes off the
// cotoral downset of K, carries the payload at K, and is cofree above it
DiagramModule f_K(const RingDiagram& diag, int subgroup, const NormalForm& payload, Window win);

// a finite direct sum of f_K pieces with block bookkeeping
struct InjSummand {
  int subgroup;
  NormalForm payload;
};

struct InjectiveTerm {
  const RingDiagram* diag = nullptr;
  std::vector<InjSummand> summands;
  std::vector<DiagramModule> pieces;
  DiagramModule module;
  // dimension of piece j at (flag, degree): used for block offsets
  int block_offset(int j, int flag, int t) const;
};

InjectiveTerm make_injective(const RingDiagram& diag, std::vector<InjSummand> summands,
                             Window win);

// Hom_{ring at K}(stalk, payload)^{W^d} with explicit bases per degree
struct StalkHomBasis {
  std::vector<std::vector<QMat>> elems;  // each: per-degree matrices (src win offsets)
};
StalkHomBasis stalk_hom_basis(const WModule& stalk, const WModule& payload, int t);

// naive diagram-level Hom dimensions (the oracle): flagwise maps commuting
// with generators, Weyl actions and all structure squares
std::vector<int> naive_hom_dims(const DiagramModule& a, const DiagramModule& b,
                                const std::vector<int>& degrees);

// closed-form Hom dimensions into an injective term
std::vector<int> hom_into_injective_dims(const DiagramModule& m, const InjectiveTerm& term,
                                         const std::vector<int>& degrees);

// a monomorphism from m into a finite sum of f_K injectives
struct Embedding {
  InjectiveTerm term;
  DiagramMap map;
  bool mono = false;
};
Embedding embed_in_injectives(const DiagramModule& m);

struct Resolution {
  std::vector<InjectiveTerm> terms;
  std::vector<DiagramMap> maps;  // maps[0]: m -> I0; maps[s]: I^{s-1} -> I^s
  int length = 0;
  bool exact = false;
  bool terminated = true;
};

// iterated embeddings of cokernels; throws on non-termination within max_len
// only if `hard_fail`, otherwise reports terminated = false
Resolution injective_resolution(const DiagramModule& m, int max_len, bool hard_fail = true);

struct ExtTable {
  std::map<std::pair<int, int>, int> entries;  // (s, t) -> dim
  int rank = 1;
  int dim(int s, int t) const;
  // total dimension on the line t - s = k
  std::map<int, int> totals() const;
};

// Ext_{A}(m, n) on the t-window; both modules must be qce
ExtTable ext(const DiagramModule& m, const DiagramModule& n, Window t_window, int max_len = 4);

// cokernel of an embedding-like map with induced structure
DiagramModule cokernel(const DiagramModule& m, const DiagramModule& target, const DiagramMap& f);

// is f degreewise injective (within the margin window)?
bool is_mono(const DiagramModule& m, const DiagramModule& target, const DiagramMap& f);

// does the module vanish on the margin-interior window?
bool is_zero_module(const DiagramModule& m);

}  // namespace torcal::homalg
