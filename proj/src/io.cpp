#include "mcsc/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "mcsc/errors.hpp"

namespace mcsc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool next_token(std::string_view& rest, std::string_view& token) {
  rest = trim(rest);
  if (rest.empty()) return false;
  const auto end = rest.find_first_of(" \t");
  token = rest.substr(0, end);
  rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end);
  return true;
}

std::int64_t parse_id(std::string_view token, std::size_t line) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected an integer vertex id, got '" +
                               std::string(token) + "'");
  }
  return value;
}

}  // namespace

SnapGraph parse_snap_graph(std::istream& in, double p) {
  std::unordered_map<std::int64_t, VertexId> dense;
  SnapGraph out;
  std::vector<std::pair<VertexId, VertexId>> edges;
  auto id_of = [&](std::int64_t raw) {
    auto [it, fresh] = dense.try_emplace(raw, static_cast<VertexId>(dense.size()));
    if (fresh) out.original_ids.push_back(raw);
    return it->second;
  };

  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::string_view rest = trim(text);
    if (rest.empty() || rest.front() == '#') continue;
    std::string_view a, b, extra;
    if (!next_token(rest, a) || !next_token(rest, b)) {
      throw ParseError(line, "expected two vertex ids");
    }
    if (next_token(rest, extra)) {
      throw ParseError(line, "unexpected trailing token '" +
                                 std::string(extra) + "'");
    }
    const std::int64_t u = parse_id(a, line);
    const std::int64_t v = parse_id(b, line);
    const VertexId du = id_of(u);
    const VertexId dv = id_of(v);
    edges.emplace_back(du, dv);
  }
  if (dense.empty()) throw EmptyGraph("edge list has no vertices");
  out.graph = DirectedGraph(dense.size(), std::move(edges), p);
  return out;
}

SnapGraph load_snap_graph(const std::filesystem::path& path, double p) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file " + path.string());
  return parse_snap_graph(in, p);
}

namespace {

using Json = nlohmann::ordered_json;

const Json& require(const Json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end()) throw SchemaError(field, "missing");
  return *it;
}

std::size_t require_count(const Json& doc, const char* field) {
  const Json& v = require(doc, field);
  if (!v.is_number_unsigned()) {
    throw SchemaError(field, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<double> require_reals(const Json& doc, const char* field,
                                  std::size_t expected_size) {
  const Json& v = require(doc, field);
  if (!v.is_array()) throw SchemaError(field, "expected an array");
  if (v.size() != expected_size) {
    throw SchemaError(field, "expected " + std::to_string(expected_size) +
                                 " entries, got " + std::to_string(v.size()));
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw SchemaError(field, "entry " + std::to_string(i) + " is not a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

}  // namespace

CoverageProblem parse_coverage_problem(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("<document>", e.what());
  }
  if (!doc.is_object()) throw SchemaError("<document>", "expected an object");

  CoverageProblem p;
  const std::size_t n = require_count(doc, "n");
  const std::size_t m = require_count(doc, "m");
  p.costs = require_reals(doc, "costs", n);
  p.weights = require_reals(doc, "weights", m);

  const Json& covers = require(doc, "covers");
  if (!covers.is_array() || covers.size() != n) {
    throw SchemaError("covers", "expected an array of " + std::to_string(n) +
                                    " item lists");
  }
  p.covers.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!covers[i].is_array()) {
      throw SchemaError("covers", "entry " + std::to_string(i) +
                                      " is not an array");
    }
    for (const Json& item : covers[i]) {
      if (!item.is_number_unsigned()) {
        throw SchemaError("covers", "entry " + std::to_string(i) +
                                        " has a non-integer item");
      }
      const auto j = item.get<std::size_t>();
      if (j >= m) {
        throw SchemaError("covers", "item index " + std::to_string(j) +
                                        " >= m = " + std::to_string(m));
      }
      p.covers[i].push_back(j);
    }
  }

  const Json& tau = require(doc, "tau");
  if (!tau.is_number()) throw SchemaError("tau", "expected a number");
  p.tau = tau.get<double>();
  return p;
}

std::string format_coverage_problem(const CoverageProblem& problem) {
  Json doc;
  doc["n"] = problem.n();
  doc["m"] = problem.m();
  doc["costs"] = problem.costs;
  doc["covers"] = problem.covers;
  doc["weights"] = problem.weights;
  doc["tau"] = problem.tau;
  return doc.dump(2) + "\n";
}

CoverageProblem read_coverage_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_coverage_problem(buffer.str());
}

void write_coverage_problem(const std::filesystem::path& path,
                            const CoverageProblem& problem) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write instance file " + path.string());
  out << format_coverage_problem(problem);
}

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows) {
  out << kTraceHeader << '\n';
  for (const TraceRow& row : rows) {
    out << row.iteration << ',' << row.evaluations << ',';
    if (row.best_feasible_cost) out << format_real(*row.best_feasible_cost);
    out << ',';
    if (row.best_feasible_f) out << format_real(*row.best_feasible_f);
    out << ',' << row.population_size << '\n';
  }
}

RRCacheKey rr_cache_key(const DirectedGraph& graph, std::size_t m,
                        std::uint64_t seed) {
  return RRCacheKey{graph.structure_hash(), graph.p(), m, seed};
}

namespace {

constexpr char kCacheMagic[8] = {'M', 'C', 'S', 'C', 'R', 'R', 'S', '\0'};
constexpr std::uint32_t kCacheVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "RR cache format is little-endian");

template <typename T>
void put(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw CacheMismatch("truncated RR cache");
  }
  return value;
}

template <typename T>
void put_array(std::ostream& out, const std::vector<T>& values) {
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(T)));
}

template <typename T>
std::vector<T> get_array(std::istream& in, std::size_t count) {
  std::vector<T> values(count);
  if (!in.read(reinterpret_cast<char*>(values.data()),
               static_cast<std::streamsize>(count * sizeof(T)))) {
    throw CacheMismatch("truncated RR cache");
  }
  return values;
}

}  // namespace

void write_rr_cache(const std::filesystem::path& path, const RRCacheKey& key,
                    const RRSetIndex& index) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write RR cache " + path.string());
  out.write(kCacheMagic, sizeof kCacheMagic);
  put(out, kCacheVersion);
  put(out, std::uint32_t{0});
  put(out, key.graph_hash);
  put(out, key.p);
  put(out, key.sample_count);
  put(out, key.seed);
  put(out, static_cast<std::uint64_t>(index.vertex_count()));
  put(out, static_cast<std::uint64_t>(index.vertices().size()));
  put_array(out, index.offsets());
  put_array(out, index.vertices());
  if (!out) throw Error("failed writing RR cache " + path.string());
}

RRSetIndex read_rr_cache(const std::filesystem::path& path,
                         const RRCacheKey& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheMismatch("cannot open RR cache " + path.string());
  char magic[8];
  if (!in.read(magic, sizeof magic) ||
      std::memcmp(magic, kCacheMagic, sizeof magic) != 0) {
    throw CacheMismatch("not an RR cache file");
  }
  const auto version = get<std::uint32_t>(in);
  if (version != kCacheVersion) {
    throw CacheMismatch("unsupported RR cache version " +
                        std::to_string(version));
  }
  get<std::uint32_t>(in);
  RRCacheKey key;
  key.graph_hash = get<std::uint64_t>(in);
  key.p = get<double>(in);
  key.sample_count = get<std::uint64_t>(in);
  key.seed = get<std::uint64_t>(in);
  if (!(key == expected)) {
    throw CacheMismatch("RR cache was built for a different graph, p, m or seed");
  }
  const auto vertex_count = get<std::uint64_t>(in);
  const auto total = get<std::uint64_t>(in);
  auto offsets = get_array<std::uint64_t>(in, key.sample_count + 1);
  auto vertices = get_array<VertexId>(in, total);
  try {
    return RRSetIndex(vertex_count, std::move(offsets), std::move(vertices),
                      key.seed);
  } catch (const DomainError& e) {
    throw CacheMismatch(std::string("corrupt RR cache: ") + e.what());
  }
}

}  // namespace mcsc
