#include "splicemult/resolution_graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace splicemult {

Edge make_edge(VertexId v, VertexId w) { return v < w ? Edge{v, w} : Edge{w, v}; }

ResolutionGraph ResolutionGraph::create(std::vector<Vertex> vertices,
                                        std::vector<std::pair<VertexId, VertexId>> edges) {
  if (vertices.size() < 2) throw Error(ErrorKind::TooSmall, "a resolution graph needs at least 2 vertices");
  std::sort(vertices.begin(), vertices.end(), [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  ResolutionGraph g;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i > 0 && vertices[i].id == vertices[i - 1].id) {
      throw Error(ErrorKind::ParseError, "duplicate vertex id " + std::to_string(vertices[i].id));
    }
    if (vertices[i].weight >= 0) {
      throw Error(ErrorKind::BadWeight, "vertex " + std::to_string(vertices[i].id) + " has weight " +
                                            std::to_string(vertices[i].weight) + " >= 0");
    }
    g.ids_.push_back(vertices[i].id);
    g.weights_.push_back(vertices[i].weight);
  }
  g.neighbors_.resize(g.ids_.size());

  for (auto [v, w] : edges) {
    if (!g.contains(v) || !g.contains(w)) {
      throw Error(ErrorKind::ParseError,
                  "edge (" + std::to_string(v) + "," + std::to_string(w) + ") names an unknown vertex");
    }
    if (v == w) throw Error(ErrorKind::NotATree, "self-loop at vertex " + std::to_string(v));
    g.edges_.push_back(make_edge(v, w));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  if (std::adjacent_find(g.edges_.begin(), g.edges_.end()) != g.edges_.end()) {
    throw Error(ErrorKind::NotATree, "repeated edge");
  }
  if (g.edges_.size() + 1 != g.ids_.size()) {
    throw Error(ErrorKind::NotATree, std::to_string(g.edges_.size()) + " edges on " +
                                         std::to_string(g.ids_.size()) + " vertices");
  }
  for (const Edge& e : g.edges_) {
    g.neighbors_[g.index_of(e.a)].push_back(e.b);
    g.neighbors_[g.index_of(e.b)].push_back(e.a);
  }
  for (auto& n : g.neighbors_) std::sort(n.begin(), n.end());

  // |E| = |V| - 1 plus connectivity rules out cycles.
  std::vector<bool> seen(g.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    for (VertexId w : g.neighbors_[i]) {
      std::size_t j = g.index_of(w);
      if (!seen[j]) {
        seen[j] = true;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  if (reached != g.size()) throw Error(ErrorKind::NotATree, "graph is not connected");

  if (!linalg::is_negative_definite(g.intersection_matrix())) {
    throw Error(ErrorKind::NotNegativeDefinite, "intersection matrix is not negative definite");
  }
  return g;
}

bool ResolutionGraph::contains(VertexId v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

std::size_t ResolutionGraph::index_of(VertexId v) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it == ids_.end() || *it != v) throw Error(ErrorKind::UnknownVertex, "vertex " + std::to_string(v));
  return static_cast<std::size_t>(it - ids_.begin());
}

std::vector<VertexId> ResolutionGraph::ends() const {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (neighbors_[i].size() == 1) out.push_back(ids_[i]);
  return out;
}

std::vector<VertexId> ResolutionGraph::nodes() const {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (neighbors_[i].size() >= 3) out.push_back(ids_[i]);
  return out;
}

bool ResolutionGraph::has_edge(VertexId v, VertexId w) const {
  return std::binary_search(edges_.begin(), edges_.end(), make_edge(v, w));
}

linalg::IntMatrix ResolutionGraph::intersection_matrix() const {
  linalg::IntMatrix m(size(), size());
  for (std::size_t i = 0; i < size(); ++i) m(i, i) = Integer(static_cast<long>(weights_[i]));
  for (const Edge& e : edges_) {
    std::size_t i = index_of(e.a), j = index_of(e.b);
    m(i, j) = 1;
    m(j, i) = 1;
  }
  return m;
}

bool ResolutionGraph::is_minimal() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (weights_[i] == -1 && neighbors_[i].size() <= 2) return false;
  return true;
}

VertexId ResolutionGraph::smallest_unused_id() const {
  VertexId id = 1;
  while (contains(id)) ++id;
  return id;
}

ResolutionGraph graph_from_json(const nlohmann::json& doc) {
  std::vector<Vertex> vertices;
  std::vector<std::pair<VertexId, VertexId>> edges;
  try {
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges")) {
      throw Error(ErrorKind::ParseError, "expected an object with 'vertices' and 'edges'");
    }
    for (const auto& v : doc.at("vertices")) {
      vertices.push_back({v.at("id").get<VertexId>(), v.at("weight").get<std::int64_t>()});
    }
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::ParseError, "an edge must be a 2-element list");
      edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::ParseError, ex.what());
  }
  return ResolutionGraph::create(std::move(vertices), std::move(edges));
}

ResolutionGraph parse_graph(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::ParseError, ex.what());
  }
  return graph_from_json(doc);
}

nlohmann::ordered_json graph_to_json(const ResolutionGraph& g) {
  nlohmann::ordered_json doc;
  doc["vertices"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    nlohmann::ordered_json v;
    v["id"] = g.ids()[i];
    v["weight"] = g.weight_at(i);
    doc["vertices"].push_back(v);
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) doc["edges"].push_back({e.a, e.b});
  return doc;
}

std::vector<std::vector<VertexId>> branches(const ResolutionGraph& g, VertexId v) {
  const std::size_t root = g.index_of(v);
  std::vector<bool> seen(g.size(), false);
  seen[root] = true;
  std::vector<std::vector<VertexId>> out;
  for (VertexId start : g.neighbors(v)) {
    std::vector<VertexId> comp{start};
    seen[g.index_of(start)] = true;
    for (std::size_t k = 0; k < comp.size(); ++k) {
      for (VertexId w : g.neighbors(comp[k])) {
        std::size_t j = g.index_of(w);
        if (!seen[j]) {
          seen[j] = true;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

namespace {

std::vector<Vertex> vertex_list(const ResolutionGraph& g) {
  std::vector<Vertex> vs;
  for (std::size_t i = 0; i < g.size(); ++i) vs.push_back({g.ids()[i], g.weight_at(i)});
  return vs;
}

std::vector<std::pair<VertexId, VertexId>> edge_list(const ResolutionGraph& g) {
  std::vector<std::pair<VertexId, VertexId>> es;
  for (const Edge& e : g.edges()) es.emplace_back(e.a, e.b);
  return es;
}

void decrement(std::vector<Vertex>& vs, VertexId id, std::vector<WeightChange>& log) {
  for (Vertex& x : vs) {
    if (x.id == id) {
      log.push_back({id, x.weight, x.weight - 1});
      --x.weight;
      return;
    }
  }
}

}  // namespace

BlowupResult blowup_edge(const ResolutionGraph& g, VertexId v, VertexId w) {
  if (!g.contains(v) || !g.contains(w) || !g.has_edge(v, w)) {
    throw Error(ErrorKind::NotAnEdge, "(" + std::to_string(v) + "," + std::to_string(w) + ")");
  }
  const Edge e = make_edge(v, w);
  BlowupEvent ev{BlowupKind::Edge, e.a, e.b, std::nullopt, g.smallest_unused_id(), {}};
  auto vs = vertex_list(g);
  decrement(vs, e.a, ev.weight_changes);
  decrement(vs, e.b, ev.weight_changes);
  vs.push_back({ev.new_vertex, -1});
  ev.weight_changes.push_back({ev.new_vertex, 0, -1});
  auto es = edge_list(g);
  std::erase_if(es, [&](const auto& p) { return make_edge(p.first, p.second) == e; });
  es.emplace_back(e.a, ev.new_vertex);
  es.emplace_back(ev.new_vertex, e.b);
  return {ResolutionGraph::create(std::move(vs), std::move(es)), std::move(ev)};
}

BlowupResult blowup_end_point(const ResolutionGraph& g, VertexId end_vertex) {
  if (!g.contains(end_vertex) || !g.is_end(end_vertex)) {
    throw Error(ErrorKind::NotAnEnd, "vertex " + std::to_string(end_vertex) + " is not an end");
  }
  BlowupEvent ev{BlowupKind::EndPoint, end_vertex, 0, std::nullopt, g.smallest_unused_id(), {}};
  auto vs = vertex_list(g);
  decrement(vs, end_vertex, ev.weight_changes);
  vs.push_back({ev.new_vertex, -1});
  ev.weight_changes.push_back({ev.new_vertex, 0, -1});
  auto es = edge_list(g);
  es.emplace_back(end_vertex, ev.new_vertex);
  return {ResolutionGraph::create(std::move(vs), std::move(es)), std::move(ev)};
}

ResolutionGraph apply_event(const ResolutionGraph& g, const BlowupEvent& e) {
  BlowupResult r = e.kind == BlowupKind::Edge ? blowup_edge(g, e.v, e.w) : blowup_end_point(g, e.v);
  if (r.event.new_vertex != e.new_vertex) {
    throw Error(ErrorKind::InternalInconsistency, "replayed blowup produced a different vertex id");
  }
  return std::move(r.graph);
}

EndMap identity_end_map(const ResolutionGraph& g) {
  EndMap m;
  for (VertexId e : g.ends()) m.push_back({e, e});
  return m;
}

GraphHistory::GraphHistory(GraphPtr initial) : snapshots_{std::move(initial)} {
  end_map_ = identity_end_map(*snapshots_.front());
}

VertexId GraphHistory::end_vertex(VertexId index) const {
  for (const EndSlot& s : end_map_)
    if (s.index == index) return s.vertex;
  throw Error(ErrorKind::NotAnEnd, "no end index " + std::to_string(index));
}

const BlowupEvent& GraphHistory::blowup_edge(VertexId v, VertexId w) {
  BlowupResult r = splicemult::blowup_edge(*current(), v, w);
  snapshots_.push_back(share(std::move(r.graph)));
  events_.push_back(std::move(r.event));
  return events_.back();
}

const BlowupEvent& GraphHistory::blowup_end_point(VertexId index) {
  const VertexId vertex = end_vertex(index);
  BlowupResult r = splicemult::blowup_end_point(*current(), vertex);
  r.event.end_index = index;
  for (EndSlot& s : end_map_)
    if (s.index == index) s.vertex = r.event.new_vertex;
  snapshots_.push_back(share(std::move(r.graph)));
  events_.push_back(std::move(r.event));
  return events_.back();
}

ResolutionGraph GraphHistory::replay() const {
  ResolutionGraph g = *initial();
  for (const BlowupEvent& e : events_) g = apply_event(g, e);
  return g;
}

}  // namespace splicemult
