#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tto/blaschke.hpp"
#include "tto/clark.hpp"
#include "tto/experiments.hpp"

namespace tto {

/// RFC 4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view text);

/// Header N,lhs_re,lhs_im,rhs_re,rhs_im,gap,<diagnostics of the first record>.
std::string records_to_csv(const std::vector<ConvergenceRecord>& records);
/// JSON array of record objects, keys in a fixed order.
std::string records_to_json(const std::vector<ConvergenceRecord>& records);

/// One row per grid point: angle, final sum, first crossing per threshold (empty if none).
std::string angular_to_csv(const AngularDiagnostics& diag);
std::string angular_to_json(const AngularDiagnostics& diag);

/// Rows alpha_angle,zeta_angle,weight.
std::string clark_to_csv(const std::vector<ClarkMeasure>& measures);
std::string clark_to_json(const std::vector<ClarkMeasure>& measures);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace tto
