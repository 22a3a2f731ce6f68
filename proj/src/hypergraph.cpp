#include "qhg/hypergraph.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "qhg/error.hpp"

namespace qhg {

namespace {

std::string edge_field(std::size_t e, const char* side) {
  return "hyperedges[" + std::to_string(e) + "]." + side;
}

void check_unique_labels(const std::vector<std::string>& nodes) {
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [it, inserted] = seen.emplace(nodes[i], i);
    if (!inserted) {
      throw Error(ErrorCode::DuplicateNode,
                  "nodes[" + std::to_string(i) + "]: duplicate node label '" +
                      nodes[i] + "' (first declared at nodes[" +
                      std::to_string(it->second) + "])");
    }
  }
}

// Sorts one side, rejecting empty sides, out-of-range indices and repeats.
void normalize_side(std::vector<NodeIndex>& side, std::size_t node_count,
                    const std::vector<std::string>& nodes, std::size_t e,
                    const char* name) {
  if (side.empty()) {
    throw Error(ErrorCode::EmptySide, edge_field(e, name) + ": side is empty");
  }
  for (NodeIndex v : side) {
    if (v >= node_count) {
      throw Error(ErrorCode::UnknownNode, edge_field(e, name) +
                                              ": node index " +
                                              std::to_string(v) +
                                              " is not declared");
    }
  }
  std::sort(side.begin(), side.end());
  auto dup = std::adjacent_find(side.begin(), side.end());
  if (dup != side.end()) {
    throw Error(ErrorCode::OverlappingSides,
                edge_field(e, name) + ": node '" + nodes[*dup] +
                    "' listed twice (hyperedges are sets)");
  }
}

}  // namespace

OrientedHypergraph build_hypergraph(std::vector<std::string> nodes,
                                    std::vector<Hyperedge> hyperedges) {
  check_unique_labels(nodes);
  for (std::size_t e = 0; e < hyperedges.size(); ++e) {
    Hyperedge& he = hyperedges[e];
    normalize_side(he.init, nodes.size(), nodes, e, "init");
    normalize_side(he.term, nodes.size(), nodes, e, "term");
    std::vector<NodeIndex> common;
    std::set_intersection(he.init.begin(), he.init.end(), he.term.begin(),
                          he.term.end(), std::back_inserter(common));
    if (!common.empty()) {
      throw Error(ErrorCode::OverlappingSides,
                  "hyperedges[" + std::to_string(e) + "]: node '" +
                      nodes[common.front()] + "' is in both init and term");
    }
  }
  return OrientedHypergraph(std::move(nodes), std::move(hyperedges));
}

OrientedHypergraph build_hypergraph(std::vector<std::string> nodes,
                                    const std::vector<RawHyperedge>& hyperedges) {
  check_unique_labels(nodes);
  std::unordered_map<std::string, NodeIndex> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);

  auto resolve = [&](const std::vector<std::string>& labels, std::size_t e,
                     const char* name) {
    std::vector<NodeIndex> out;
    out.reserve(labels.size());
    for (std::size_t k = 0; k < labels.size(); ++k) {
      auto it = index.find(labels[k]);
      if (it == index.end()) {
        throw Error(ErrorCode::UnknownNode,
                    edge_field(e, name) + "[" + std::to_string(k) +
                        "]: unknown node '" + labels[k] + "'");
      }
      out.push_back(it->second);
    }
    return out;
  };

  std::vector<Hyperedge> edges;
  edges.reserve(hyperedges.size());
  for (std::size_t e = 0; e < hyperedges.size(); ++e) {
    edges.push_back({resolve(hyperedges[e].init, e, "init"),
                     resolve(hyperedges[e].term, e, "term")});
  }
  return build_hypergraph(std::move(nodes), std::move(edges));
}

bool is_graph(const OrientedHypergraph& h) noexcept {
  return std::all_of(h.hyperedges().begin(), h.hyperedges().end(),
                     [](const Hyperedge& e) {
                       return e.init.size() == 1 && e.term.size() == 1;
                     });
}

SimpleGraph unoriented_section(const OrientedHypergraph& h) {
  std::set<std::pair<NodeIndex, NodeIndex>> pairs;
  for (const Hyperedge& e : h.hyperedges()) {
    std::vector<NodeIndex> members(e.init);
    members.insert(members.end(), e.term.begin(), e.term.end());
    std::sort(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        pairs.emplace(members[i], members[j]);
  }
  return {h.nodes(), {pairs.begin(), pairs.end()}};
}

OrientedSection oriented_section(const OrientedHypergraph& h) {
  OrientedSection s;
  s.nodes = h.nodes();
  s.block_sizes.reserve(h.hyperedge_count());
  s.block_offsets.reserve(h.hyperedge_count());
  for (std::size_t e = 0; e < h.hyperedge_count(); ++e) {
    const Hyperedge& he = h.hyperedges()[e];
    s.block_offsets.push_back(s.edges.size());
    s.block_sizes.push_back(he.section_edge_count());
    for (NodeIndex src : he.init)
      for (NodeIndex dst : he.term) s.edges.push_back({src, dst, e});
  }
  s.big_m = s.edges.size();
  return s;
}

}  // namespace qhg
