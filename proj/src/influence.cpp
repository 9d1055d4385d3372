#include "mcsc/influence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <thread>
#include <unordered_set>

#include "mcsc/errors.hpp"
#include "mcsc/random.hpp"

namespace mcsc {

DirectedGraph::DirectedGraph(std::size_t vertex_count,
                             std::vector<std::pair<VertexId, VertexId>> edges,
                             double p)
    : vertex_count_(vertex_count), p_(p), edges_(std::move(edges)) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("edge probability must lie in [0, 1]");
  }
  for (const auto& [u, v] : edges_) {
    if (u >= vertex_count || v >= vertex_count) {
      throw DomainError("edge endpoint out of range");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  out_offsets_.assign(vertex_count + 1, 0);
  in_offsets_.assign(vertex_count + 1, 0);
  for (const auto& [u, v] : edges_) {
    ++out_offsets_[u + 1];
    ++in_offsets_[v + 1];
  }
  for (std::size_t i = 0; i < vertex_count; ++i) {
    out_offsets_[i + 1] += out_offsets_[i];
    in_offsets_[i + 1] += in_offsets_[i];
  }
  out_targets_.resize(edges_.size());
  in_sources_.resize(edges_.size());
  std::vector<std::size_t> out_fill(out_offsets_.begin(),
                                    out_offsets_.end() - 1);
  std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    out_targets_[out_fill[u]++] = v;
    in_sources_[in_fill[v]++] = u;
  }
}

std::uint64_t DirectedGraph::structure_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
      h ^= (value >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  feed(vertex_count_);
  for (const auto& [u, v] : edges_) {
    feed(u);
    feed(v);
  }
  return h;
}

DirectedGraph random_graph(std::size_t vertices, double mean_out_degree,
                           double p, std::uint64_t seed, GraphModel model,
                           double exponent) {
  if (vertices < 2) throw DomainError("random graph needs >= 2 vertices");
  const auto target = static_cast<std::size_t>(
      std::llround(static_cast<double>(vertices) * mean_out_degree));
  if (target > vertices * (vertices - 1)) {
    throw DomainError("mean out-degree too large for a simple digraph");
  }
  if (model == GraphModel::kPowerLaw && !(exponent > 2.0)) {
    throw DomainError("power-law exponent must exceed 2");
  }
  std::vector<double> cumulative;
  if (model == GraphModel::kPowerLaw) {
    cumulative.resize(vertices);
    double total = 0.0;
    for (std::size_t i = 0; i < vertices; ++i) {
      total += std::pow(static_cast<double>(i + 1), -1.0 / (exponent - 1.0));
      cumulative[i] = total;
    }
  }
  Rng rng(seed);
  auto draw = [&]() -> VertexId {
    if (model == GraphModel::kUniform) {
      return static_cast<VertexId>(rng.uniform_index(vertices));
    }
    const double u = rng.uniform01() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return static_cast<VertexId>(
        std::min<std::size_t>(it - cumulative.begin(), vertices - 1));
  };
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(target);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(target * 2);
  while (edges.size() < target) {
    const VertexId u = draw();
    const VertexId v = draw();
    if (u == v) continue;
    if (!seen.insert((std::uint64_t{u} << 32) | v).second) continue;
    edges.emplace_back(u, v);
  }
  return DirectedGraph(vertices, std::move(edges), p);
}

RRSetIndex::RRSetIndex(std::size_t vertex_count,
                       std::vector<std::uint64_t> offsets,
                       std::vector<VertexId> vertices, std::uint64_t seed)
    : vertex_count_(vertex_count),
      offsets_(std::move(offsets)),
      vertices_(std::move(vertices)),
      seed_(seed) {
  if (offsets_.size() < 2 || offsets_.front() != 0 ||
      offsets_.back() != vertices_.size()) {
    throw DomainError("malformed RR-set offsets");
  }
  inverted_offsets_.assign(vertex_count + 1, 0);
  for (std::size_t i = 0; i + 1 < offsets_.size(); ++i) {
    if (offsets_[i + 1] <= offsets_[i]) {
      throw DomainError("RR set " + std::to_string(i) + " is empty");
    }
  }
  for (VertexId v : vertices_) {
    if (v >= vertex_count) throw DomainError("RR-set vertex out of range");
    ++inverted_offsets_[v + 1];
  }
  for (std::size_t v = 0; v < vertex_count; ++v) {
    inverted_offsets_[v + 1] += inverted_offsets_[v];
  }
  inverted_.resize(vertices_.size());
  std::vector<std::size_t> fill(inverted_offsets_.begin(),
                                inverted_offsets_.end() - 1);
  for (std::size_t i = 0; i + 1 < offsets_.size(); ++i) {
    for (std::uint64_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      inverted_[fill[vertices_[k]]++] = static_cast<std::uint32_t>(i);
    }
  }
}

std::size_t RRSetIndex::hit_count(const Subset& x) const {
  std::vector<std::uint64_t> hit((sample_count() + 63) / 64, 0);
  std::size_t count = 0;
  x.for_each([&](std::size_t v) {
    for (std::uint32_t id : sets_containing(v)) {
      std::uint64_t& w = hit[id >> 6];
      const std::uint64_t bit = std::uint64_t{1} << (id & 63);
      if (!(w & bit)) {
        w |= bit;
        ++count;
      }
    }
  });
  return count;
}

namespace {

// Draws the RR sets with ids in [first, last) into `out`, one block stream
// per kRRBlockSize ids.
void draw_rr_block_range(const DirectedGraph& graph, std::uint64_t seed,
                         std::size_t first_block, std::size_t last_block,
                         std::size_t m,
                         std::vector<std::vector<VertexId>>& out) {
  const std::size_t n = graph.vertex_count();
  const double p = graph.p();
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t generation = 0;
  std::vector<VertexId> queue;
  for (std::size_t block = first_block; block < last_block; ++block) {
    Rng rng(derive_seed(seed, block));
    const std::size_t lo = block * kRRBlockSize;
    const std::size_t hi = std::min(m, lo + kRRBlockSize);
    for (std::size_t id = lo; id < hi; ++id) {
      ++generation;
      queue.clear();
      const auto root = static_cast<VertexId>(rng.uniform_index(n));
      stamp[root] = generation;
      queue.push_back(root);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (VertexId u : graph.in_neighbors(queue[head])) {
          if (stamp[u] == generation) continue;
          if (rng.uniform01() < p) {
            stamp[u] = generation;
            queue.push_back(u);
          }
        }
      }
      out[id] = queue;
    }
  }
}

}  // namespace

RRSetIndex generate_rr_sets(const DirectedGraph& graph, std::size_t m,
                            std::uint64_t seed, unsigned workers) {
  if (m == 0) throw DomainError("RR sample count must be >= 1");
  if (graph.vertex_count() == 0) throw DomainError("graph has no vertices");
  std::vector<std::vector<VertexId>> sets(m);
  const std::size_t blocks = (m + kRRBlockSize - 1) / kRRBlockSize;
  workers = std::max(1u, std::min<unsigned>(workers, blocks));
  if (workers == 1) {
    draw_rr_block_range(graph, seed, 0, blocks, m, sets);
  } else {
    std::vector<std::thread> pool;
    const std::size_t per = (blocks + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = std::min(blocks, w * per);
      const std::size_t hi = std::min(blocks, lo + per);
      pool.emplace_back([&, lo, hi] {
        draw_rr_block_range(graph, seed, lo, hi, m, sets);
      });
    }
    for (auto& t : pool) t.join();
  }
  std::vector<std::uint64_t> offsets(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) offsets[i + 1] = offsets[i] + sets[i].size();
  std::vector<VertexId> flat;
  flat.reserve(offsets.back());
  for (auto& s : sets) flat.insert(flat.end(), s.begin(), s.end());
  return RRSetIndex(graph.vertex_count(), std::move(offsets), std::move(flat),
                    seed);
}

double ris_influence(const RRSetIndex& index, const Subset& x) {
  return static_cast<double>(index.vertex_count()) *
         static_cast<double>(index.hit_count(x)) /
         static_cast<double>(index.sample_count());
}

namespace {

class RisExtensions final : public ExtensionEvaluator {
 public:
  RisExtensions(const SubmodularOracle& oracle, const RRSetIndex& index,
                const Subset& base)
      : ExtensionEvaluator(oracle),
        index_(index),
        base_(base),
        hit_((index.sample_count() + 63) / 64, 0),
        scale_(static_cast<double>(index.vertex_count()) /
               static_cast<double>(index.sample_count())) {
    base.for_each([&](std::size_t v) {
      for (std::uint32_t id : index.sets_containing(v)) {
        std::uint64_t& w = hit_[id >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (id & 63);
        if (!(w & bit)) {
          w |= bit;
          ++base_hits_;
        }
      }
    });
  }

 protected:
  double do_base_value() override {
    return scale_ * static_cast<double>(base_hits_);
  }
  double do_value_with(std::size_t x) override {
    if (base_.contains(x)) return do_base_value();
    std::size_t extra = 0;
    for (std::uint32_t id : index_.sets_containing(x)) {
      if (!((hit_[id >> 6] >> (id & 63)) & 1u)) ++extra;
    }
    return scale_ * static_cast<double>(base_hits_ + extra);
  }

 private:
  const RRSetIndex& index_;
  Subset base_;
  std::vector<std::uint64_t> hit_;
  std::size_t base_hits_ = 0;
  double scale_;
};

void check_exact_budget(const DirectedGraph& graph) {
  if (graph.edge_count() > kMaxExactEdges) {
    throw BudgetExceeded("exact influence limited to |E| <= " +
                         std::to_string(kMaxExactEdges) + ", got " +
                         std::to_string(graph.edge_count()));
  }
}

// Probability of a configuration with k live edges out of |E|.
std::vector<double> config_weights(const DirectedGraph& graph) {
  const std::size_t e = graph.edge_count();
  std::vector<double> w(e + 1);
  for (std::size_t k = 0; k <= e; ++k) {
    w[k] = std::pow(graph.p(), static_cast<double>(k)) *
           std::pow(1.0 - graph.p(), static_cast<double>(e - k));
  }
  return w;
}

}  // namespace

std::unique_ptr<ExtensionEvaluator> RisInfluence::make_extension_evaluator(
    const Subset& base) const {
  return std::make_unique<RisExtensions>(*this, *index_, base);
}

double exact_influence(const DirectedGraph& graph, const Subset& x) {
  check_exact_budget(graph);
  const std::size_t n = graph.vertex_count();
  const std::size_t e = graph.edge_count();
  const auto edges = graph.edges();
  const std::vector<double> weights = config_weights(graph);

  std::vector<std::size_t> live_out_offsets(n + 1);
  std::vector<VertexId> live_out;
  std::vector<char> active(n);
  std::vector<std::size_t> queue;
  double expected = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e); ++mask) {
    const double w = weights[static_cast<std::size_t>(std::popcount(mask))];
    if (w == 0.0) continue;
    std::fill(active.begin(), active.end(), 0);
    queue.clear();
    x.for_each([&](std::size_t v) {
      active[v] = 1;
      queue.push_back(v);
    });
    // Edges are sorted by source, so scan them per popped vertex.
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      for (std::size_t k = 0; k < e; ++k) {
        if (edges[k].first != u || !((mask >> k) & 1u)) continue;
        const VertexId v = edges[k].second;
        if (!active[v]) {
          active[v] = 1;
          queue.push_back(v);
        }
      }
    }
    expected += w * static_cast<double>(queue.size());
  }
  return expected;
}

std::vector<double> exact_singleton_influence(const DirectedGraph& graph) {
  check_exact_budget(graph);
  const std::size_t n = graph.vertex_count();
  if (n > 64) throw BudgetExceeded("singleton enumeration needs |V| <= 64");
  const std::size_t e = graph.edge_count();
  const auto edges = graph.edges();
  const std::vector<double> weights = config_weights(graph);

  std::vector<double> expected(n, 0.0);
  std::vector<std::uint64_t> reach(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e); ++mask) {
    const double w = weights[static_cast<std::size_t>(std::popcount(mask))];
    if (w == 0.0) continue;
    for (std::size_t v = 0; v < n; ++v) reach[v] = std::uint64_t{1} << v;
    for (std::size_t k = 0; k < e; ++k) {
      if ((mask >> k) & 1u) reach[edges[k].first] |= std::uint64_t{1} << edges[k].second;
    }
    // Bitwise transitive closure.
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if ((reach[i] >> k) & 1u) reach[i] |= reach[k];
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      expected[v] += w * static_cast<double>(std::popcount(reach[v]));
    }
  }
  return expected;
}

ExactInfluence::ExactInfluence(DirectedGraph graph) : graph_(std::move(graph)) {
  check_exact_budget(graph_);
}

DegreeNoiseCosts degree_noise_costs(const DirectedGraph& graph, double sigma,
                                    std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw DomainError("sigma must be >= 0");
  DegreeNoiseCosts out;
  out.sigma = sigma;
  out.seed = seed;
  out.costs.resize(graph.vertex_count());
  Rng rng(seed);
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const double xi = out.mu + sigma * rng.standard_normal();
    out.costs[v] =
        1.0 + (1.0 + std::abs(xi)) * static_cast<double>(graph.out_degree(v));
  }
  return out;
}

}  // namespace mcsc
