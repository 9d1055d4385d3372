#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "mcsc/oracle.hpp"
#include "mcsc/subset.hpp"

namespace mcsc {

using VertexId = std::uint32_t;

// Directed graph in compressed adjacency form with one propagation
// probability p shared by all edges (independent cascade model).
class DirectedGraph {
 public:
  DirectedGraph() = default;
  // Duplicate edges collapse to one. Throws DomainError on an endpoint
  // >= vertex_count or p outside [0, 1].
  DirectedGraph(std::size_t vertex_count,
                std::vector<std::pair<VertexId, VertexId>> edges, double p);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  double p() const { return p_; }

  // Sorted by (from, to).
  std::span<const std::pair<VertexId, VertexId>> edges() const {
    return edges_;
  }
  std::span<const VertexId> out_neighbors(std::size_t v) const {
    return {out_targets_.data() + out_offsets_[v],
            out_offsets_[v + 1] - out_offsets_[v]};
  }
  std::span<const VertexId> in_neighbors(std::size_t v) const {
    return {in_sources_.data() + in_offsets_[v],
            in_offsets_[v + 1] - in_offsets_[v]};
  }
  std::size_t out_degree(std::size_t v) const {
    return out_offsets_[v + 1] - out_offsets_[v];
  }

  // FNV-1a over vertex count and the sorted edge list. Keys the RR cache.
  std::uint64_t structure_hash() const;

 private:
  std::size_t vertex_count_ = 0;
  double p_ = 0.0;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<std::size_t> out_offsets_;
  std::vector<VertexId> out_targets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<VertexId> in_sources_;
};

enum class GraphModel {
  // Endpoints uniform over V (Erdos-Renyi G(n, M)).
  kUniform,
  // Chung-Lu style: both endpoints drawn with probability proportional to a
  // vertex weight (i + 1)^(-1 / (exponent - 1)), giving a heavy-tailed
  // degree distribution with correlated in- and out-degree.
  kPowerLaw,
};

// Random directed graph with round(vertices * mean_out_degree) distinct
// edges and no self-loops.
DirectedGraph random_graph(std::size_t vertices, double mean_out_degree,
                           double p, std::uint64_t seed,
                           GraphModel model = GraphModel::kUniform,
                           double exponent = 2.5);

// A fixed collection of reverse-reachable sets plus the inverted index
// vertex -> ids of the sets containing it.
class RRSetIndex {
 public:
  // offsets has sample_count + 1 entries delimiting `vertices`. Every set
  // must be non-empty with members < vertex_count.
  RRSetIndex(std::size_t vertex_count, std::vector<std::uint64_t> offsets,
             std::vector<VertexId> vertices, std::uint64_t seed);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t sample_count() const { return offsets_.size() - 1; }
  std::uint64_t seed() const { return seed_; }

  std::span<const VertexId> set(std::size_t i) const {
    return {vertices_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::span<const std::uint32_t> sets_containing(std::size_t v) const {
    return {inverted_.data() + inverted_offsets_[v],
            inverted_offsets_[v + 1] - inverted_offsets_[v]};
  }

  const std::vector<std::uint64_t>& offsets() const { return offsets_; }
  const std::vector<VertexId>& vertices() const { return vertices_; }

  // Number of sets hit by x.
  std::size_t hit_count(const Subset& x) const;

 private:
  std::size_t vertex_count_;
  std::vector<std::uint64_t> offsets_;
  std::vector<VertexId> vertices_;
  std::uint64_t seed_;
  std::vector<std::size_t> inverted_offsets_;
  std::vector<std::uint32_t> inverted_;
};

inline constexpr std::size_t kRRBlockSize = 1024;

// Draws m reverse-reachable sets: a uniform root, then a reverse BFS where
// each in-edge is live with probability p, sampled once per set. Set i is
// drawn from a stream derived from (seed, i / kRRBlockSize), so the result
// does not depend on the worker count.
RRSetIndex generate_rr_sets(const DirectedGraph& graph, std::size_t m,
                            std::uint64_t seed, unsigned workers = 1);

// |V| * (sets hit by x) / m.
double ris_influence(const RRSetIndex& index, const Subset& x);

// Expected influence estimated from a fixed RR-set sample. Monotone and
// submodular for that sample.
class RisInfluence final : public SubmodularOracle {
 public:
  explicit RisInfluence(std::shared_ptr<const RRSetIndex> index)
      : index_(std::move(index)) {}

  std::size_t ground_size() const override { return index_->vertex_count(); }
  const RRSetIndex& index() const { return *index_; }

 protected:
  double do_evaluate(const Subset& x) const override {
    return ris_influence(*index_, x);
  }
  std::unique_ptr<ExtensionEvaluator> make_extension_evaluator(
      const Subset& base) const override;

 private:
  std::shared_ptr<const RRSetIndex> index_;
};

inline constexpr std::size_t kMaxExactEdges = 20;

// Exact expected activation by enumerating all 2^|E| live-edge
// configurations. Throws BudgetExceeded for |E| > 20.
double exact_influence(const DirectedGraph& graph, const Subset& x);

// exact_influence of every singleton {v}, in one enumeration pass. Requires
// |V| <= 64 and |E| <= 20.
std::vector<double> exact_singleton_influence(const DirectedGraph& graph);

class ExactInfluence final : public SubmodularOracle {
 public:
  explicit ExactInfluence(DirectedGraph graph);

  std::size_t ground_size() const override { return graph_.vertex_count(); }

 protected:
  double do_evaluate(const Subset& x) const override {
    return exact_influence(graph_, x);
  }

 private:
  DirectedGraph graph_;
};

struct DegreeNoiseCosts {
  std::vector<double> costs;
  double mu = 0.0;
  double sigma = 0.5;
  std::uint64_t seed = 0;
};

// Cost of v is 1 + (1 + |xi_v|) * out_degree(v), xi_v ~ N(0, sigma^2).
// One normal draw per vertex in vertex order, from a generator seeded with
// `seed`.
DegreeNoiseCosts degree_noise_costs(const DirectedGraph& graph, double sigma,
                                    std::uint64_t seed);

}  // namespace mcsc
