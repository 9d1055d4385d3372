#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mcsc/coverage.hpp"
#include "mcsc/influence.hpp"
#include "mcsc/trace.hpp"

namespace mcsc {

struct SnapGraph {
  DirectedGraph graph;
  // original_ids[i] is the id the file used for dense vertex i.
  std::vector<std::int64_t> original_ids;
};

// SNAP edge list: one "u v" pair per line, '#' comments and blank lines
// skipped. Ids are remapped to 0.. in order of first appearance and
// duplicate edges collapse. Throws ParseError or EmptyGraph.
SnapGraph parse_snap_graph(std::istream& in, double p);
SnapGraph load_snap_graph(const std::filesystem::path& path, double p);

// Coverage instance JSON with keys n, m, costs, covers, weights, tau, in
// that order. Throws SchemaError naming the offending field.
CoverageProblem parse_coverage_problem(const std::string& text);
std::string format_coverage_problem(const CoverageProblem& problem);
CoverageProblem read_coverage_problem(const std::filesystem::path& path);
void write_coverage_problem(const std::filesystem::path& path,
                            const CoverageProblem& problem);

// "%.17g" formatting with a '.' decimal separator regardless of locale.
std::string format_real(double value);

inline constexpr const char* kTraceHeader =
    "iteration,evaluations,best_cost,best_f,population_size";

// Header plus one LF-terminated line per row; best_cost and best_f are
// empty when no entry is feasible.
void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows);

struct RRCacheKey {
  std::uint64_t graph_hash = 0;
  double p = 0.0;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const RRCacheKey&, const RRCacheKey&) = default;
};

RRCacheKey rr_cache_key(const DirectedGraph& graph, std::size_t m,
                        std::uint64_t seed);

// Binary little-endian file: "MCSCRRS" magic, format version, the key, the
// vertex count, then the offsets and vertex arrays.
void write_rr_cache(const std::filesystem::path& path, const RRCacheKey& key,
                    const RRSetIndex& index);
// Throws CacheMismatch if the header or key does not match.
RRSetIndex read_rr_cache(const std::filesystem::path& path,
                         const RRCacheKey& expected);

}  // namespace mcsc
