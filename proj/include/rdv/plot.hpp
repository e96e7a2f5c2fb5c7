#pragma once

#include "rdv/csv.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace rdv {

enum class PlotKind { DiameterVsTime, DxmVsTime, TcVsEpsilon, Trajectories };

std::optional<PlotKind> parse_plot_kind(std::string_view name);
const char* to_string(PlotKind kind);

/// Input tables per kind:
///   diameter-vs-time, dxm-vs-time: metrics.csv (time, diameter / dxm)
///   tc-vs-epsilon: sweep.csv of an epsilon sweep (epsilon, tc), mean over converged seeds, log x
///   trajectories: trace.csv (agent_id, x, y)
/// Throws SchemaError with the row number on malformed or empty input.
std::string render_plot(const CsvTable& table, PlotKind kind);

void emit_plot(const std::filesystem::path& csv, PlotKind kind, const std::filesystem::path& out);

}  // namespace rdv
