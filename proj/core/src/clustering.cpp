#include "glutton/clustering.hpp"

#include <algorithm>
#include <stdexcept>

namespace glutton {

Clustering::Clustering(const Instance& inst) : inst_(&inst), owner_(inst.num_vertices(), -1) {
  for (int term = 0; term < inst.num_terminals(); ++term) {
    int v = inst.terminal_vertex(term);
    int mate_v = inst.terminal_vertex(Instance::mate(term));
    if ((term & 1) && inst.d(v, mate_v) == 0) {
      NodeId id = owner_[mate_v];
      nodes_[id].terminals.push_back(term);
      nodes_[id].vertices.push_back(v);
      std::sort(nodes_[id].vertices.begin(), nodes_[id].vertices.end());
      owner_[v] = id;
      continue;
    }
    nodes_.push_back(Node{{term}, {v}, true});
    owner_[v] = next_id() - 1;
    ++live_;
  }
}

std::vector<NodeId> Clustering::ids() const {
  std::vector<NodeId> out;
  for (NodeId id = 0; id < next_id(); ++id)
    if (nodes_[id].present) out.push_back(id);
  return out;
}

bool Clustering::mate_active(NodeId id) const {
  for (int term : nodes_[id].terminals)
    if (node_of_terminal(Instance::mate(term)) != id) return true;
  return false;
}

NodeId Clustering::merge(NodeId a, NodeId b) {
  if (a == b) throw std::invalid_argument("merge of a supernode with itself");
  return merge(std::vector<NodeId>{a, b}, {});
}

NodeId Clustering::merge(const std::vector<NodeId>& parts, const std::vector<int>& free_vertices) {
  if (parts.empty() && free_vertices.empty()) throw std::invalid_argument("empty merge");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!present(parts[i])) throw std::invalid_argument("merge of absent supernode " + std::to_string(parts[i]));
    for (std::size_t j = 0; j < i; ++j)
      if (parts[i] == parts[j]) throw std::invalid_argument("duplicate supernode in merge");
  }
  for (int v : free_vertices)
    if (owner_[v] >= 0) throw std::invalid_argument("vertex " + std::to_string(v) + " is already owned");
  Node merged;
  for (NodeId id : parts) {
    Node& n = nodes_[id];
    merged.terminals.insert(merged.terminals.end(), n.terminals.begin(), n.terminals.end());
    merged.vertices.insert(merged.vertices.end(), n.vertices.begin(), n.vertices.end());
    n.present = false;
    --live_;
  }
  merged.vertices.insert(merged.vertices.end(), free_vertices.begin(), free_vertices.end());
  std::sort(merged.terminals.begin(), merged.terminals.end());
  std::sort(merged.vertices.begin(), merged.vertices.end());
  NodeId id = next_id();
  for (int v : merged.vertices) owner_[v] = id;
  nodes_.push_back(std::move(merged));
  ++live_;
  ++generation_;
  return id;
}

std::vector<std::vector<int>> Clustering::partition() const {
  std::vector<std::vector<int>> out;
  for (const auto& n : nodes_)
    if (n.present && !n.terminals.empty()) out.push_back(n.terminals);
  std::sort(out.begin(), out.end());
  return out;
}

PuncturedMetric::PuncturedMetric(const Instance& inst, const std::vector<int>& groups) : inst_(&inst) {
  if (static_cast<int>(groups.size()) != inst.num_vertices()) throw std::invalid_argument("group vector size");
  compute(groups);
}

PuncturedMetric::PuncturedMetric(const Clustering& cl) : inst_(&cl.instance()), cl_(&cl) {}

void PuncturedMetric::refresh() const {
  if (cl_ && seen_generation_ != cl_->generation()) {
    compute(cl_->owners());
    seen_generation_ = cl_->generation();
  }
}

bool PuncturedMetric::same_group(int u, int v) const {
  return u == v || (groups_[u] >= 0 && groups_[u] == groups_[v]);
}

void PuncturedMetric::compute(const std::vector<int>& groups) const {
  groups_ = groups;
  const int n = inst_->num_vertices();
  const auto& base = inst_->int_dist();
  dist_.assign(n, std::vector<std::int64_t>(n));
  next_.assign(n, std::vector<int>(n));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      dist_[u][v] = same_group(u, v) ? 0 : base[u][v];
      next_[u][v] = v;
    }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      const std::int64_t dik = dist_[i][k];
      auto& row = dist_[i];
      const auto& krow = dist_[k];
      for (int j = 0; j < n; ++j)
        if (dik + krow[j] < row[j]) {
          row[j] = dik + krow[j];
          next_[i][j] = next_[i][k];
        }
    }
}

Rational PuncturedMetric::distance(int u, int v) const {
  refresh();
  const int n = inst_->num_vertices();
  if (u < 0 || u >= n || v < 0 || v >= n) throw std::out_of_range("unknown vertex id");
  return Rational(dist_[u][v], inst_->denominator());
}

std::vector<int> PuncturedMetric::path(int u, int v) const {
  refresh();
  const int n = inst_->num_vertices();
  if (u < 0 || u >= n || v < 0 || v >= n) throw std::out_of_range("unknown vertex id");
  std::vector<int> out{u};
  while (u != v) {
    u = next_[u][v];
    out.push_back(u);
  }
  return out;
}

PuncturedMetric::NodePath PuncturedMetric::between(NodeId a, NodeId b) const {
  if (!cl_) throw std::logic_error("between() needs a clustering");
  if (!cl_->present(a) || !cl_->present(b)) throw std::invalid_argument("supernode not present");
  refresh();
  NodePath out;
  if (a == b) {
    int v = cl_->vertices(a).front();
    out = NodePath{Rational(0), v, v, {v}, true};
    return out;
  }
  std::int64_t best = -1;
  for (int u : cl_->vertices(a))
    for (int v : cl_->vertices(b))
      if (best < 0 || dist_[u][v] < best) {
        best = dist_[u][v];
        out.from = u;
        out.to = v;
      }
  out.distance = Rational(best, inst_->denominator());
  out.path = path(out.from, out.to);
  return out;
}

std::vector<Edge> PuncturedMetric::crossing_edges(const std::vector<int>& p) const {
  refresh();
  std::vector<Edge> out;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (!same_group(p[i], p[i + 1])) out.push_back({p[i], p[i + 1], inst_->d(p[i], p[i + 1])});
  return out;
}

Instance contract_edges(const Instance& inst, const std::vector<Edge>& edges) {
  const int n = inst.num_vertices();
  auto label = component_labels(n, edges);
  std::vector<char> touched(n, 0);
  for (const auto& e : edges) touched[e.u] = touched[e.v] = 1;
  std::vector<int> groups(n, -1);
  for (int v = 0; v < n; ++v)
    if (touched[v]) groups[v] = label[v];
  PuncturedMetric pm(inst, groups);
  Matrix m(n, std::vector<Rational>(n));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) m[u][v] = pm.distance(u, v);
  return Instance(std::move(m), inst.demands());
}

}  // namespace glutton
