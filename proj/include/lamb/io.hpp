#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lamb/euler.hpp"
#include "lamb/functionals.hpp"
#include "lamb/grid.hpp"
#include "lamb/stability.hpp"
#include "lamb/varmin.hpp"

namespace lamb {

struct SnapshotMeta {
  double t = 0.0;
  std::string quantity = "zeta";
};

// Writes <path> (raw little-endian f64) and <path>.json.
void write_snapshot(const ScalarField& field, const std::filesystem::path& path,
                    const SnapshotMeta& meta = {});
ScalarField read_snapshot(const std::filesystem::path& path, SnapshotMeta* meta = nullptr);

// 17 significant digits.
std::string format_double(double v);

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRecord>& rows);
void write_stability_csv(const std::filesystem::path& path, const StabilityReport& report);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

nlohmann::json to_json(const Grid2D& g);
nlohmann::json to_json(const InequalityReport& r);
nlohmann::json to_json(const DiagnosticsRecord& d);
nlohmann::json to_json(const MinimizeTelemetry& t);

}  // namespace lamb
