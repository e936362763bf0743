#pragma once

// Prime graphs of degree sets and the two-clique (pi0/pi1) structure of
// diameter-three character degree graphs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cdgraph/arith.hpp"
#include "cdgraph/cyclotomic.hpp"
#include "cdgraph/degrees.hpp"
#include "cdgraph/report.hpp"

namespace cdg {

using PrimeSet = std::set<Nat>;

struct Infinite {
  friend bool operator==(Infinite, Infinite) { return true; }
};

/// Graph distance or diameter; disconnected pairs are Infinite.
using Distance = std::variant<std::size_t, Infinite>;

inline bool is_finite(const Distance& d) { return std::holds_alternative<std::size_t>(d); }
inline std::string to_string(const Distance& d) {
  return is_finite(d) ? std::to_string(std::get<std::size_t>(d)) : std::string("inf");
}

class PrimeGraph {
 public:
  PrimeGraph() = default;

  /// Union of cliques: each prime set becomes a clique.
  static PrimeGraph from_cliques(const std::vector<PrimeSet>& cliques) {
    PrimeGraph g;
    PrimeSet all;
    for (const auto& c : cliques) all.insert(c.begin(), c.end());
    g.vertices_.assign(all.begin(), all.end());
    g.adj_.assign(g.vertices_.size(), std::vector<bool>(g.vertices_.size(), false));
    for (const auto& c : cliques) {
      std::vector<std::size_t> idx;
      for (const auto& v : c) idx.push_back(g.index_of(v));
      for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = i + 1; j < idx.size(); ++j) g.link(idx[i], idx[j]);
      }
    }
    g.rebuild_neighbors();
    return g;
  }

  static PrimeGraph from_edges(const std::vector<Nat>& vertices, const std::vector<std::pair<Nat, Nat>>& edges) {
    std::vector<PrimeSet> cliques;
    for (const auto& v : vertices) cliques.push_back({v});
    for (const auto& [u, v] : edges) cliques.push_back({u, v});
    return from_cliques(cliques);
  }

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Nat>& vertices() const { return vertices_; }
  const Nat& vertex(std::size_t i) const { return vertices_.at(i); }
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return nbrs_.at(i); }

  bool has_vertex(const Nat& v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }
  std::size_t index_of(const Nat& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) throw std::out_of_range("PrimeGraph: unknown vertex " + v.str());
    return static_cast<std::size_t>(it - vertices_.begin());
  }
  bool adjacent(std::size_t i, std::size_t j) const { return adj_.at(i).at(j); }
  bool adjacent(const Nat& u, const Nat& v) const { return adjacent(index_of(u), index_of(v)); }

  std::vector<std::pair<Nat, Nat>> edges() const {
    std::vector<std::pair<Nat, Nat>> out;
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j : nbrs_[i]) {
        if (i < j) out.emplace_back(vertices_[i], vertices_[j]);
      }
    }
    return out;
  }

  /// Induced subgraph on the given vertices (which must be present).
  PrimeGraph induced(const PrimeSet& keep) const {
    std::vector<PrimeSet> parts;
    for (const auto& v : keep) parts.push_back({v});
    for (const auto& [u, v] : edges()) {
      if (keep.count(u) && keep.count(v)) parts.push_back({u, v});
    }
    return from_cliques(parts);
  }

  bool is_clique(const PrimeSet& set) const {
    for (auto it = set.begin(); it != set.end(); ++it) {
      for (auto jt = std::next(it); jt != set.end(); ++jt) {
        if (!adjacent(*it, *jt)) return false;
      }
    }
    return true;
  }

  /// BFS distances from vertex s; unreachable entries are Infinite.
  std::vector<Distance> distances_from(std::size_t s) const {
    std::vector<Distance> dist(size(), Infinite{});
    std::queue<std::size_t> q;
    dist[s] = std::size_t{0};
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      const std::size_t du = std::get<std::size_t>(dist[u]);
      for (std::size_t v : nbrs_[u]) {
        if (!is_finite(dist[v])) {
          dist[v] = du + 1;
          q.push(v);
        }
      }
    }
    return dist;
  }

  Distance distance(const Nat& u, const Nat& v) const { return distances_from(index_of(u))[index_of(v)]; }

  /// Vertex sets of the connected components, ordered by smallest vertex.
  std::vector<PrimeSet> components() const {
    std::vector<bool> seen(size(), false);
    std::vector<PrimeSet> out;
    for (std::size_t s = 0; s < size(); ++s) {
      if (seen[s]) continue;
      PrimeSet comp;
      auto dist = distances_from(s);
      for (std::size_t v = 0; v < size(); ++v) {
        if (is_finite(dist[v])) {
          seen[v] = true;
          comp.insert(vertices_[v]);
        }
      }
      out.push_back(std::move(comp));
    }
    return out;
  }

  bool connected() const { return components().size() <= 1; }

 private:
  void link(std::size_t i, std::size_t j) {
    if (i == j) return;
    adj_[i][j] = adj_[j][i] = true;
  }
  void rebuild_neighbors() {
    nbrs_.assign(size(), {});
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < size(); ++j) {
        if (adj_[i][j]) nbrs_[i].push_back(j);
      }
    }
  }

  std::vector<Nat> vertices_;
  std::vector<std::vector<bool>> adj_;
  std::vector<std::vector<std::size_t>> nbrs_;
};

/// Prime graph of a degree table: primes dividing a degree, adjacent when
/// their product divides a single degree.
inline PrimeGraph build_graph(const DegreeTable& table) {
  std::vector<PrimeSet> cliques;
  for (const auto& row : table.rows) {
    if (row.multiplicity <= 0) continue;
    if (!row.degree.complete()) throw BudgetExhausted("build_graph: degree " + row.degree.value.str() + " not fully factored");
    const auto primes = row.degree.primes();
    cliques.emplace_back(primes.begin(), primes.end());
  }
  return PrimeGraph::from_cliques(cliques);
}

inline Distance diameter(const PrimeGraph& g) {
  std::size_t best = 0;
  for (std::size_t s = 0; s < g.size(); ++s) {
    for (const auto& d : g.distances_from(s)) {
      if (!is_finite(d)) return Infinite{};
      best = std::max(best, std::get<std::size_t>(d));
    }
  }
  return best;
}

/// Every three vertices span at least one edge.
inline bool palfy_check(const PrimeGraph& g) {
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (g.adjacent(i, j)) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (!g.adjacent(i, k) && !g.adjacent(j, k)) return false;
      }
    }
  }
  return true;
}

/// Articulation points via DFS low-link.
inline PrimeSet cut_vertices(const PrimeGraph& g) {
  if (!g.connected()) throw std::invalid_argument("cut_vertices: graph is disconnected");
  const std::size_t n = g.size();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> is_cut(n, false);
  int timer = 0;
  std::function<void(std::size_t, std::optional<std::size_t>)> dfs = [&](std::size_t u, std::optional<std::size_t> parent) {
    disc[u] = low[u] = timer++;
    std::size_t children = 0;
    for (std::size_t v : g.neighbors(u)) {
      if (parent && v == *parent) continue;
      if (disc[v] >= 0) {
        low[u] = std::min(low[u], disc[v]);
        continue;
      }
      ++children;
      dfs(v, u);
      low[u] = std::min(low[u], low[v]);
      if (parent && low[v] >= disc[u]) is_cut[u] = true;
    }
    if (!parent && children > 1) is_cut[u] = true;
  };
  if (n > 0) dfs(0, std::nullopt);
  PrimeSet out;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_cut[i]) out.insert(g.vertex(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Two-clique classification
// ---------------------------------------------------------------------------

struct GraphProfile {
  PrimeGraph graph;
  PrimeSet pi0, pi1;
  PrimeSet alpha, beta, gamma, delta;
  Distance diameter = std::size_t{0};
  bool pi0_clique = false;
  bool pi1_clique = false;
  bool alpha_delta_at_three = false;  // every alpha-delta pair at distance exactly 3
  bool others_within_two = false;     // every other pair at distance <= 2
  bool bound_ok = false;              // |pi1| >= 2^{|pi0|}

  bool is_diameter_three() const { return is_finite(diameter) && std::get<std::size_t>(diameter) == 3; }
  bool structural_ok() const {
    return pi0_clique && pi1_clique && alpha_delta_at_three && others_within_two && is_diameter_three();
  }
};

inline Nat two_pow(std::size_t k) { return Nat(1) << k; }

/// alpha: pi0 vertices with no pi1 neighbour; delta: pi1 vertices with no pi0
/// neighbour; beta, gamma their complements.
inline GraphProfile classify(const PrimeGraph& g, const PrimeSet& pi0, const PrimeSet& pi1) {
  for (const auto& v : pi0) {
    if (!g.has_vertex(v) || pi1.count(v)) throw std::invalid_argument("classify: pi0/pi1 is not a partition");
  }
  for (const auto& v : pi1) {
    if (!g.has_vertex(v)) throw std::invalid_argument("classify: pi1 contains a non-vertex");
  }
  if (pi0.size() + pi1.size() != g.size()) throw std::invalid_argument("classify: pi0/pi1 do not cover the vertices");

  GraphProfile prof;
  prof.graph = g;
  prof.pi0 = pi0;
  prof.pi1 = pi1;
  auto has_neighbor_in = [&](const Nat& v, const PrimeSet& side) {
    for (std::size_t j : g.neighbors(g.index_of(v))) {
      if (side.count(g.vertex(j))) return true;
    }
    return false;
  };
  for (const auto& v : pi0) (has_neighbor_in(v, pi1) ? prof.beta : prof.alpha).insert(v);
  for (const auto& v : pi1) (has_neighbor_in(v, pi0) ? prof.gamma : prof.delta).insert(v);
  prof.diameter = diameter(g);
  prof.pi0_clique = g.is_clique(pi0);
  prof.pi1_clique = g.is_clique(pi1);

  prof.alpha_delta_at_three = true;
  prof.others_within_two = true;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto dist = g.distances_from(i);
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const Nat &u = g.vertex(i), &v = g.vertex(j);
      const bool cross = (prof.alpha.count(u) && prof.delta.count(v)) || (prof.alpha.count(v) && prof.delta.count(u));
      const bool at_three = is_finite(dist[j]) && std::get<std::size_t>(dist[j]) == 3;
      const bool within_two = is_finite(dist[j]) && std::get<std::size_t>(dist[j]) <= 2;
      if (cross && !at_three) prof.alpha_delta_at_three = false;
      if (!cross && !within_two) prof.others_within_two = false;
    }
  }
  prof.bound_ok = Nat(pi1.size()) >= two_pow(pi0.size());
  return prof;
}

/// pi0 = pi(n), pi1 = {p} together with pi((p^n - 1)/(p - 1)), each
/// intersected with the vertex set. When p | n the prime p goes to pi1 only;
/// the graph is then connected across the sides and no longer two cliques
/// at distance 3.
inline std::pair<PrimeSet, PrimeSet> construction_partition(const Params& params, const PrimeGraph& g,
                                                            const FactorBudget& budget = {}) {
  PrimeSet pi0, pi1;
  for (const auto& r : factor(Nat(params.n)).primes()) {
    if (g.has_vertex(r) && r != params.p) pi0.insert(r);
  }
  if (g.has_vertex(params.p)) pi1.insert(params.p);
  for (const auto& r : power_quotient(params.p, params.n, 1, budget).primes()) {
    if (g.has_vertex(r)) pi1.insert(r);
  }
  return {pi0, pi1};
}

struct TheoremBResult {
  Nat bound;  // 2^{|beta|} (2^{|alpha|} - 1) + 1
  bool ok = false;
};

inline TheoremBResult theorem_b_check(const GraphProfile& prof) {
  if (!prof.is_diameter_three()) throw std::invalid_argument("theorem_b_check: profile is not of diameter 3");
  TheoremBResult out;
  out.bound = two_pow(prof.beta.size()) * (two_pow(prof.alpha.size()) - 1) + 1;
  out.ok = Nat(prof.gamma.size()) >= out.bound;
  return out;
}

namespace detail {

inline PrimeSet primes_of(const Factored& f) {
  const auto v = f.primes();
  return {v.begin(), v.end()};
}

inline bool subset(const PrimeSet& a, const PrimeSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::string format_set(const PrimeSet& s) {
  std::string out = "{";
  for (const auto& v : s) out += (out.size() > 1 ? "," : "") + v.str();
  return out + "}";
}

}  // namespace detail

/// Parts (a)-(e) of the structure theorem for a profile of the (p, n)
/// construction, plus diagnostics comparing alpha/beta/gamma/delta with the
/// sets predicted by the construction.
inline Report structure_theorem_check(const Params& params, const GraphProfile& prof,
                                      const FactorBudget& budget = {}) {
  Report rep;
  const Nat& p = params.p;
  const std::uint64_t n = params.n;
  rep.add("p does not divide n", n % p != 0);
  const Factored fn = factor(Nat(n));
  const Nat n0 = sigma_part(fn, prof.pi0);
  const Nat n_alpha = sigma_part(fn, prof.alpha);
  const auto n0_64 = n0.convert_to<std::uint64_t>();
  const auto na_64 = n_alpha.convert_to<std::uint64_t>();
  rep.add("(a) n0 odd", n0 % 2 == 1, "n0=" + n0.str());

  const Factored m0 = power_quotient(p, n, n / n0_64, budget);
  const Factored all = power_minus_one(p, n, budget);
  const Factored m_alpha = power_quotient(p, n, n / na_64, budget);
  const bool factored = m0.complete() && all.complete() && m_alpha.complete();
  rep.add("factorizations complete", factored);

  PrimeSet lower = detail::primes_of(m0);
  lower.insert(p);
  PrimeSet upper = detail::primes_of(all);
  upper.insert(p);
  rep.add("(b) {p} u pi((p^n-1)/(p^{n/n0}-1)) in pi1", detail::subset(lower, prof.pi1));
  rep.add("(b) pi1 in {p} u pi(p^n-1)", detail::subset(prof.pi1, upper));

  PrimeSet c_set = detail::primes_of(m_alpha);
  c_set.insert(p);
  rep.add("(c) {p} u pi((p^n-1)/(p^{n/n_alpha}-1)) in gamma", detail::subset(c_set, prof.gamma),
          "n_alpha=" + n_alpha.str());

  PrimeSet d_set = c_set;
  d_set.insert(prof.beta.begin(), prof.beta.end());
  bool present = true;
  for (const auto& v : d_set) present = present && prof.graph.has_vertex(v);
  rep.add("(d) beta u {p} u pi((p^n-1)/(p^{n/n_alpha}-1)) is a clique", present && prof.graph.is_clique(d_set));

  if (prof.is_diameter_three()) {
    const auto tb = theorem_b_check(prof);
    rep.add("(e) |gamma| >= 2^|beta| (2^|alpha| - 1) + 1", tb.ok,
            std::to_string(prof.gamma.size()) + " >= " + tb.bound.str());
  } else {
    rep.skip("(e) |gamma| >= 2^|beta| (2^|alpha| - 1) + 1", "diameter " + to_string(prof.diameter));
  }
  return rep;
}

/// Predicted classes for the construction: alpha = pi(n/3), beta = {3},
/// gamma = {p} u pi((p^n-1)/(p^3-1)), delta = pi(p^2+p+1). Diagnostic only.
inline Report construction_diagnostics(const Params& params, const GraphProfile& prof,
                                       const FactorBudget& budget = {}) {
  Report rep;
  const PrimeSet alpha = detail::primes_of(factor(Nat(params.n / 3)));
  PrimeSet gamma = detail::primes_of(power_quotient(params.p, params.n, 3, budget));
  gamma.insert(params.p);
  const PrimeSet delta = detail::primes_of(factor(params.p * params.p + params.p + 1));
  rep.add("alpha = pi(n/3)", prof.alpha == alpha, detail::format_set(alpha));
  rep.add("beta = {3}", prof.beta == PrimeSet{3});
  rep.add("gamma = {p} u pi((p^n-1)/(p^3-1))", prof.gamma == gamma, detail::format_set(gamma));
  rep.add("delta = pi(p^2+p+1)", prof.delta == delta, detail::format_set(delta));
  return rep;
}

// ---------------------------------------------------------------------------
// DOT export
// ---------------------------------------------------------------------------

inline std::string export_dot(const PrimeGraph& g, const GraphProfile* profile = nullptr) {
  std::string out = "graph cdg {\n";
  if (profile) out += "  node [style=filled];\n";
  for (const auto& v : g.vertices()) {
    out += "  \"" + v.str() + "\"";
    if (profile) {
      const char* cls = profile->alpha.count(v)   ? "alpha"
                        : profile->beta.count(v)  ? "beta"
                        : profile->gamma.count(v) ? "gamma"
                                                  : "delta";
      const char* color = profile->alpha.count(v)   ? "lightblue"
                          : profile->beta.count(v)  ? "palegreen"
                          : profile->gamma.count(v) ? "khaki"
                                                    : "salmon";
      out += std::string(" [class=\"") + cls + "\", fillcolor=\"" + color + "\"]";
    }
    out += ";\n";
  }
  for (const auto& [u, v] : g.edges()) out += "  \"" + u.str() + "\" -- \"" + v.str() + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace cdg
