#pragma once

#include <span>
#include <vector>

#include "splicemult/exact_linalg.hpp"
#include "splicemult/resolution_graph.hpp"

namespace splicemult {

/// Rational cycle sum_v c_v E_v on a fixed graph, coefficients in sorted
/// vertex order.
class QCycle {
 public:
  explicit QCycle(GraphPtr g);
  QCycle(GraphPtr g, std::vector<Rational> coefficients);

  static QCycle vertex(GraphPtr g, VertexId v);

  const GraphPtr& graph() const noexcept { return graph_; }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// M_v(D): coefficient of E_v. Throws UnknownVertex.
  const Rational& coefficient(VertexId v) const { return coeffs_[graph_->index_of(v)]; }
  const Rational& at(std::size_t i) const { return coeffs_[i]; }
  Rational& at(std::size_t i) { return coeffs_[i]; }

  bool is_integral() const;
  bool is_effective() const;
  bool is_zero() const;

  QCycle& operator+=(const QCycle& o);
  QCycle& operator-=(const QCycle& o);
  QCycle& operator*=(const Rational& s);

  friend QCycle operator+(QCycle a, const QCycle& b) { return a += b; }
  friend QCycle operator-(QCycle a, const QCycle& b) { return a -= b; }
  friend QCycle operator*(const Rational& s, QCycle a) { return a *= s; }

  /// Same graph and equal coefficients.
  friend bool operator==(const QCycle& a, const QCycle& b);
  /// Componentwise order; throws GraphMismatch.
  bool leq(const QCycle& o) const;

 private:
  void require_same_graph(const QCycle& o) const;

  GraphPtr graph_;
  std::vector<Rational> coeffs_;
};

bool same_graph(const GraphPtr& a, const GraphPtr& b);

/// Total transform across one blowup. Coefficients on old vertices are kept;
/// the new vertex gets the sum over the one or two curves through the centre.
/// Throws IndexMismatch when D does not live on the pre-event graph.
QCycle pullback_vertex_cycle(const QCycle& d, const BlowupEvent& e, const GraphPtr& post);

/// Pull back through every event in history order, starting from the
/// snapshot with `from` events applied.
QCycle pullback_through(const QCycle& d, const GraphHistory& h, std::size_t from);

}  // namespace splicemult
