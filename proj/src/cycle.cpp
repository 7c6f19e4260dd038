#include "splicemult/cycle.hpp"

#include <algorithm>
#include <string>

namespace splicemult {

bool same_graph(const GraphPtr& a, const GraphPtr& b) { return a == b || (a && b && *a == *b); }

QCycle::QCycle(GraphPtr g) : graph_(std::move(g)), coeffs_(graph_->size()) {}

QCycle::QCycle(GraphPtr g, std::vector<Rational> coefficients)
    : graph_(std::move(g)), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != graph_->size()) {
    throw Error(ErrorKind::IndexMismatch, std::to_string(coeffs_.size()) + " coefficients for " +
                                              std::to_string(graph_->size()) + " vertices");
  }
}

QCycle QCycle::vertex(GraphPtr g, VertexId v) {
  QCycle c(std::move(g));
  c.coeffs_[c.graph_->index_of(v)] = 1;
  return c;
}

bool QCycle::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return splicemult::is_integral(q); });
}

bool QCycle::is_effective() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q >= 0; });
}

bool QCycle::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q == 0; });
}

void QCycle::require_same_graph(const QCycle& o) const {
  if (!same_graph(graph_, o.graph_)) throw Error(ErrorKind::GraphMismatch, "cycles live on different graphs");
}

QCycle& QCycle::operator+=(const QCycle& o) {
  require_same_graph(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

QCycle& QCycle::operator-=(const QCycle& o) {
  require_same_graph(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

QCycle& QCycle::operator*=(const Rational& s) {
  for (Rational& q : coeffs_) q *= s;
  return *this;
}

bool operator==(const QCycle& a, const QCycle& b) {
  return same_graph(a.graph_, b.graph_) && a.coeffs_ == b.coeffs_;
}

bool QCycle::leq(const QCycle& o) const {
  require_same_graph(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] > o.coeffs_[i]) return false;
  return true;
}

QCycle pullback_vertex_cycle(const QCycle& d, const BlowupEvent& e, const GraphPtr& post) {
  const ResolutionGraph& pre = *d.graph();
  if (post->size() != pre.size() + 1 || pre.contains(e.new_vertex) || !post->contains(e.new_vertex)) {
    throw Error(ErrorKind::IndexMismatch, "cycle does not live on the pre-blowup graph");
  }
  for (VertexId v : pre.ids())
    if (!post->contains(v)) throw Error(ErrorKind::IndexMismatch, "vertex " + std::to_string(v) + " vanished");

  QCycle out(post);
  for (std::size_t i = 0; i < pre.size(); ++i) out.at(post->index_of(pre.ids()[i])) = d.at(i);
  Rational centre = d.coefficient(e.v);
  if (e.kind == BlowupKind::Edge) centre += d.coefficient(e.w);
  out.at(post->index_of(e.new_vertex)) = centre;
  return out;
}

QCycle pullback_through(const QCycle& d, const GraphHistory& h, std::size_t from) {
  QCycle cur = d;
  for (std::size_t k = from; k < h.events().size(); ++k) {
    cur = pullback_vertex_cycle(cur, h.events()[k], h.snapshots()[k + 1]);
  }
  return cur;
}

}  // namespace splicemult
