#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morpho/families.hpp"

namespace morpho {

/// Which size parameter completes p for a construction.
enum class SizeParam { Q, R };

struct CatalogEntry {
  std::string label;
  Algebra algebra;
  Variant variant;
  SizeParam size_param;
  bool invariant;
  std::string space;
  std::string formula;
};

/// The ten constructions, in a fixed order.
const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& label);

struct FamilyParams {
  std::string label;
  int p = 1;
  std::optional<int> q;
  std::optional<int> r;
  std::uint64_t skew_seed = 7;
};

/// Parameters with q and r filled in consistently with the construction's
/// row layout; throws ShapeError with the structural reason otherwise.
FamilyParams resolve(const FamilyParams& params);

Family build_family(const FamilyParams& params);

}  // namespace morpho
