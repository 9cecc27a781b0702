#pragma once

#include <optional>
#include <vector>

#include "rectsurf/morphism.hpp"
#include "rectsurf/surface.hpp"

namespace rectsurf {

struct FusionResult {
  Surface surface;
  std::vector<ImmersionMap> injections;  // one per input
};

// Least upper bound: the smallest path-invariant quotient of the disjoint
// union, with fans that only touch at a vertex pulled apart.
FusionResult fuse(const std::vector<Surface>& inputs);

// Greatest lower bound, or nullopt for the added bottom element.
std::optional<Surface> core(const std::vector<Surface>& inputs);

struct LimitResult {
  std::optional<Surface> limit;
  CertificateReport certificate;
};

// Chains ordered by ⇝ (increasing / decreasing). Throws kNotAChain.
LimitResult direct_limit(const std::vector<Surface>& chain, const std::vector<Surface>& extra_probes = {});
LimitResult inverse_limit(const std::vector<Surface>& chain, const std::vector<Surface>& extra_probes = {});

// Smallest-by-greedy set of input indices whose fusion already identifies
// p (a point of input i) with q (a point of input j). nullopt when the full
// fusion does not identify them.
std::optional<std::vector<int>> fusion_finiteness_witness(const std::vector<Surface>& inputs, int i,
                                                          const SurfacePoint& p, int j, const SurfacePoint& q);

}  // namespace rectsurf
