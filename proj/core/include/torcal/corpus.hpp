#pragma once

#include "torcal/diagram.hpp"

#include <random>

namespace torcal::corpus {

using diagram::DiagramModule;
using diagram::RingDiagram;
using gralg::Window;
using gralg::WModule;

struct RandomModuleParams {
  int max_pattern = 2;   // number of surviving (Laurent) generators
  int max_torsion = 2;   // torsion summands per stalk
  int max_exp = 3;
  int max_shift = 5;
};

// a seeded random qce, F-continuous module over the diagram
DiagramModule random_qce_module(const RingDiagram& diag, diagram::Level level, Window win,
                                std::mt19937_64& rng, const RandomModuleParams& params = {});

// a random map between random normal (free-plus-Laurent) equivariant modules
// over Q[c], together with its kernel, cokernel, and a random extension
struct NormalClosureInstance {
  WModule a, b;
  WModule sum, kernel, cokernel, extension;
};
NormalClosureInstance random_normal_closure_instance(std::mt19937_64& rng, Window win);

// kernel and cokernel of a degreewise map with induced structure (stalk level)
WModule stalk_kernel(const WModule& a, const WModule& b, const std::vector<QMat>& f);
WModule stalk_cokernel(const WModule& a, const WModule& b, const std::vector<QMat>& f);

}  // namespace torcal::corpus
