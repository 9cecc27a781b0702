#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rectsurf/complex.hpp"
#include "rectsurf/surface.hpp"

namespace rectsurf {

// The unique dev-respecting, basepoint-respecting cell map between two
// surfaces, on their common grid refinement.
class ImmersionMap {
 public:
  ImmersionMap(Surface source, Surface target, std::shared_ptr<const CellComplex> source_cx,
               std::shared_ptr<const CellComplex> target_cx, std::vector<int> cell_map);

  // Surfaces in the coordinates the map was computed in.
  const Surface& source() const { return source_; }
  const Surface& target() const { return target_; }
  const CellComplex& source_complex() const { return *source_cx_; }
  const CellComplex& target_complex() const { return *target_cx_; }
  const Grid& grid() const { return source_cx_->grid(); }

  // Target class of a source class, -1 for cells outside an open source.
  int image(int cls) const { return cell_map_[static_cast<std::size_t>(cls)]; }
  const std::vector<int>& cell_map() const { return cell_map_; }
  // Injective on every mapped cell.
  bool injective() const { return injective_; }

  std::vector<int> image_classes() const;
  // Image of a source point; nullopt outside the mapped cells.
  std::optional<Anchor> map_point(const Anchor& p) const;

 private:
  Surface source_, target_;
  std::shared_ptr<const CellComplex> source_cx_, target_cx_;
  std::vector<int> cell_map_;
  bool injective_ = false;
};

// Where analytic continuation stopped.
struct NoImmersion {
  CellKey from;
  CellKey toward;
  std::string reason;
};

struct ImmersionResult {
  std::optional<ImmersionMap> map;
  NoImmersion failure{};

  explicit operator bool() const { return map.has_value(); }
};

// Both surfaces are normalized first; the map lives in normalized coordinates.
ImmersionResult find_immersion(const Surface& a, const Surface& b);
// Continuation from given classes on a given common grid, without translating.
ImmersionResult continue_from(const Surface& a, const Surface& b, std::shared_ptr<const CellComplex> a_cx,
                              std::shared_ptr<const CellComplex> b_cx, int a_start, int b_start);

bool immerses(const Surface& a, const Surface& b);
bool embeds(const Surface& a, const Surface& b);
bool isomorphic(const Surface& a, const Surface& b);

// Locate `sub`, drawn in the same developed coordinates as `host`, inside
// `host`: an injective map from sub into host (into the interior of host when
// `into_interior`). Throws kInvalidSubUnion when there is none, or several.
ImmersionMap place_sub_union(const Surface& sub, const Surface& host, bool into_interior);
// Same, on a given grid refining both.
ImmersionMap place_sub_union(const Surface& sub, const Surface& host, bool into_interior, const Grid& grid);

// The developed image of an immersion as a surface (closed unless the source
// is open). May fail validation.
Surface image_surface(const ImmersionMap& m);

enum class SubbasisKind { kImm, kEmb, kNotImm, kNotEmb };

// K ⇝ Q, K ↪ Q, U ̸⇝ Q, U ̸↪ Q. The test set is taken closed for the first
// two and open for the negations.
bool subbasis_membership(SubbasisKind kind, const Surface& test_set, const Surface& q);

// There is ι: K ⇝ target with q ∈ ι(U). U is an open sub-union of K° in K's
// coordinates; q a point of target.
bool bundle_membership_plus(const Surface& k, const Surface& u, const Surface& target, const SurfacePoint& q);
// There is ι: K2 ⇝ target with q ∉ ι(K1). K1 a closed sub-union of K2.
bool bundle_membership_minus(const Surface& k2, const Surface& k1, const Surface& target, const SurfacePoint& q);

struct CertificateReport {
  struct DiskCheck {  // probe D with D ↪ limit must eventually immerse in every P_n
    int probe;
    bool applicable;
    std::optional<int> from_index;
    bool passed;
  };
  // "Infinitely often" is sampled at the last term.
  struct LimitCheck {  // probe Q embedding in the tail must immerse in the limit
    int probe;
    bool applicable;
    bool immerses_in_limit;
    bool passed;
  };
  std::vector<DiskCheck> disk_checks;
  std::vector<LimitCheck> limit_checks;
  int sequence_length = 0;
  int tail_start = 0;
  bool passed = true;
  std::string caveat;
};

CertificateReport convergence_certificate(const std::vector<Surface>& seq, const Surface& limit,
                                          const std::vector<Surface>& probes);

}  // namespace rectsurf
