#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "splicemult/exact_linalg.hpp"

namespace splicemult {

using VertexId = std::int64_t;

struct Vertex {
  VertexId id;
  std::int64_t weight;
};

/// Undirected edge, always stored with a < b.
struct Edge {
  VertexId a;
  VertexId b;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

Edge make_edge(VertexId v, VertexId w);

/// Weighted dual graph of a good resolution: a connected tree of rational
/// curves with negative definite intersection matrix. Vertices are kept in
/// ascending id order; "index" below always means position in that order.
class ResolutionGraph {
 public:
  /// Validates every invariant. Throws TooSmall, BadWeight, NotATree,
  /// NotNegativeDefinite or ParseError (duplicate or unknown ids).
  static ResolutionGraph create(std::vector<Vertex> vertices, std::vector<std::pair<VertexId, VertexId>> edges);

  std::size_t size() const noexcept { return ids_.size(); }
  std::span<const VertexId> ids() const noexcept { return ids_; }
  bool contains(VertexId v) const;
  std::size_t index_of(VertexId v) const;

  std::int64_t weight(VertexId v) const { return weights_[index_of(v)]; }
  std::int64_t weight_at(std::size_t i) const { return weights_[i]; }
  std::span<const VertexId> neighbors(VertexId v) const { return neighbors_[index_of(v)]; }
  /// delta_v = (E - E_v) . E_v, i.e. the valence in a tree.
  std::size_t valence(VertexId v) const { return neighbors(v).size(); }
  bool is_end(VertexId v) const { return valence(v) == 1; }
  bool is_node(VertexId v) const { return valence(v) >= 3; }
  std::vector<VertexId> ends() const;
  std::vector<VertexId> nodes() const;

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool has_edge(VertexId v, VertexId w) const;

  linalg::IntMatrix intersection_matrix() const;

  /// No (-1)-curve of valence <= 2.
  bool is_minimal() const;
  VertexId smallest_unused_id() const;

  friend bool operator==(const ResolutionGraph& a, const ResolutionGraph& b) {
    return a.ids_ == b.ids_ && a.weights_ == b.weights_ && a.edges_ == b.edges_;
  }

 private:
  ResolutionGraph() = default;

  std::vector<VertexId> ids_;
  std::vector<std::int64_t> weights_;
  std::vector<std::vector<VertexId>> neighbors_;
  std::vector<Edge> edges_;
};

using GraphPtr = std::shared_ptr<const ResolutionGraph>;

inline GraphPtr share(ResolutionGraph g) { return std::make_shared<const ResolutionGraph>(std::move(g)); }

/// {"vertices": [{"id": 1, "weight": -2}, ...], "edges": [[1, 2], ...]}
ResolutionGraph graph_from_json(const nlohmann::json& doc);
ResolutionGraph parse_graph(std::string_view text);
nlohmann::ordered_json graph_to_json(const ResolutionGraph& g);

/// Connected components of the graph with v removed, each sorted by id,
/// ordered by their smallest id. There are exactly valence(v) of them.
std::vector<std::vector<VertexId>> branches(const ResolutionGraph& g, VertexId v);

enum class BlowupKind { Edge, EndPoint };

struct WeightChange {
  VertexId id;
  std::int64_t old_weight;
  std::int64_t new_weight;
};

struct BlowupEvent {
  BlowupKind kind;
  /// Edge: the two endpoints (v < w). EndPoint: v is the end vertex, w unused.
  VertexId v = 0;
  VertexId w = 0;
  /// EndPoint only: the monomial index whose variable moves to new_vertex.
  std::optional<VertexId> end_index;
  VertexId new_vertex = 0;
  std::vector<WeightChange> weight_changes;
};

struct BlowupResult {
  ResolutionGraph graph;
  BlowupEvent event;
};

/// Blow up the intersection point E_v ∩ E_w. Throws NotAnEdge.
BlowupResult blowup_edge(const ResolutionGraph& g, VertexId v, VertexId w);
/// Blow up a smooth point of the end curve E_v (the point b_i). Throws NotAnEnd.
BlowupResult blowup_end_point(const ResolutionGraph& g, VertexId end_vertex);
/// Re-applies a recorded event; used to replay histories.
ResolutionGraph apply_event(const ResolutionGraph& g, const BlowupEvent& e);

struct EndSlot {
  VertexId index;   // original end id, names the variable z_index
  VertexId vertex;  // current vertex carrying that variable

  friend bool operator==(const EndSlot&, const EndSlot&) = default;
};
using EndMap = std::vector<EndSlot>;

/// Every end carries its own variable.
EndMap identity_end_map(const ResolutionGraph& g);

/// Append-only record of blowups applied to an initial graph.
class GraphHistory {
 public:
  explicit GraphHistory(GraphPtr initial);

  const GraphPtr& initial() const noexcept { return snapshots_.front(); }
  const GraphPtr& current() const noexcept { return snapshots_.back(); }
  /// snapshots()[k] is the graph after the first k events.
  const std::vector<GraphPtr>& snapshots() const noexcept { return snapshots_; }
  const std::vector<BlowupEvent>& events() const noexcept { return events_; }
  const EndMap& end_map() const noexcept { return end_map_; }
  VertexId end_vertex(VertexId index) const;

  const BlowupEvent& blowup_edge(VertexId v, VertexId w);
  /// Throws NotAnEnd unless `index` is one of the end-map indices.
  const BlowupEvent& blowup_end_point(VertexId index);

  ResolutionGraph replay() const;

 private:
  std::vector<GraphPtr> snapshots_;
  std::vector<BlowupEvent> events_;
  EndMap end_map_;
};

}  // namespace splicemult
