#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace qhg {

using NodeIndex = std::size_t;

// An oriented hyperedge: a pair of disjoint, nonempty node sets, each kept in
// ascending index order.
struct Hyperedge {
  std::vector<NodeIndex> init;
  std::vector<NodeIndex> term;

  std::size_t size() const noexcept { return init.size() + term.size(); }
  // Number of oriented section edges this hyperedge expands to.
  std::size_t section_edge_count() const noexcept {
    return init.size() * term.size();
  }

  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

// Label-based hyperedge description, as read from input files.
struct RawHyperedge {
  std::vector<std::string> init;
  std::vector<std::string> term;
};

// Validated oriented hypergraph. Only obtainable through build_hypergraph(),
// so every instance satisfies the label-uniqueness, membership, disjointness
// and nonemptiness invariants.
class OrientedHypergraph {
 public:
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  const std::vector<Hyperedge>& hyperedges() const noexcept { return edges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t hyperedge_count() const noexcept { return edges_.size(); }

  friend bool operator==(const OrientedHypergraph&,
                         const OrientedHypergraph&) = default;

 private:
  friend OrientedHypergraph build_hypergraph(std::vector<std::string>,
                                             const std::vector<RawHyperedge>&);
  friend OrientedHypergraph build_hypergraph(std::vector<std::string>,
                                             std::vector<Hyperedge>);
  OrientedHypergraph(std::vector<std::string> nodes,
                     std::vector<Hyperedge> edges)
      : nodes_(std::move(nodes)), edges_(std::move(edges)) {}

  std::vector<std::string> nodes_;
  std::vector<Hyperedge> edges_;
};

// Simple undirected graph; each edge stored as (smaller, larger) index, sorted.
struct SimpleGraph {
  std::vector<std::string> nodes;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
};

struct SectionEdge {
  NodeIndex source;
  NodeIndex target;
  std::size_t hyperedge;

  friend bool operator==(const SectionEdge&, const SectionEdge&) = default;
};

// Oriented section: every hyperedge e replaced by the |init|*|term| edges
// init -> term. Edges of one hyperedge form a contiguous block, ordered by
// (position in init, position in term).
struct OrientedSection {
  std::vector<std::string> nodes;
  std::vector<SectionEdge> edges;
  std::vector<std::size_t> block_sizes;   // M_e per hyperedge
  std::vector<std::size_t> block_offsets; // index of the first edge of each block
  std::size_t big_m = 0;

  std::size_t edge_count() const noexcept { return edges.size(); }
};

// Validates and builds. Throws Error with DuplicateNode, UnknownNode,
// EmptySide or OverlappingSides; the message names the offending field.
OrientedHypergraph build_hypergraph(std::vector<std::string> nodes,
                                    const std::vector<RawHyperedge>& hyperedges);

// Index-based variant; sides may be given in any order (they are sorted).
OrientedHypergraph build_hypergraph(std::vector<std::string> nodes,
                                    std::vector<Hyperedge> hyperedges);

bool is_graph(const OrientedHypergraph& h) noexcept;

SimpleGraph unoriented_section(const OrientedHypergraph& h);

OrientedSection oriented_section(const OrientedHypergraph& h);

}  // namespace qhg
