#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include <nlohmann/json.hpp>

#include "switchgraph/degree_sequence.hpp"
#include "switchgraph/graph.hpp"
#include "switchgraph/stats.hpp"

namespace switchgraph::io {

// Degree sequences: one integer per line, no header.
DegreeSequence read_degree_sequence(std::istream& in);
DegreeSequence read_degree_sequence(const std::filesystem::path& path);
void write_degree_sequence(std::ostream& out, const DegreeSequence& seq);
void write_degree_sequence(const std::filesystem::path& path, const DegreeSequence& seq);

// Edge lists: "u v" per line, 0-based, smaller id first, sorted on write.
// Lines starting with '#' are ignored on read. Without an explicit vertex
// count, n is one more than the largest id seen.
SimpleGraph read_edge_list(std::istream& in, std::optional<std::size_t> n = std::nullopt);
SimpleGraph read_edge_list(const std::filesystem::path& path, std::optional<std::size_t> n = std::nullopt);
void write_edge_list(std::ostream& out, const SimpleGraph& g);
void write_edge_list(const std::filesystem::path& path, const SimpleGraph& g);

// Histograms: "value,count" header followed by one row per support point.
TriangleHistogram read_histogram_csv(std::istream& in);
TriangleHistogram read_histogram_csv(const std::filesystem::path& path);
void write_histogram_csv(std::ostream& out, const TriangleHistogram& h);
void write_histogram_csv(const std::filesystem::path& path, const TriangleHistogram& h);

// Fit results: JSON object with keys a, b, rss, stderr_a.
nlohmann::json to_json(const FitResult& fit);
FitResult fit_from_json(const nlohmann::json& j);

}  // namespace switchgraph::io
