#pragma once

#include <string>
#include <vector>

#include "morpho/verify.hpp"

namespace morpho {

/// Fixed field order; doubles as %.17g. `wall_ms` is null unless `timing`
/// is set, so that identical runs produce identical bytes.
std::string to_json(const FamilyReport& report, bool timing = false);
std::string to_json(const std::vector<FamilyReport>& reports, bool timing = false);

/// One header line and one row per report, same maxima as the JSON.
std::string to_csv(const std::vector<FamilyReport>& reports, bool timing = false);

/// %.17g rendering shared by both encoders.
std::string format_double(double v);

}  // namespace morpho
