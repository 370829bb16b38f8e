#include "oracleopt/combinatorial.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "oracleopt/error.hpp"

namespace oracleopt {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edge_list) : num_nodes(n) {
  if (n < 0) throw InvalidArgument("node count must be nonnegative");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edge_list) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InvalidArgument(fmt::format("edge ({}, {}) out of range", u, v));
    }
    if (u == v) throw InvalidArgument(fmt::format("self loop at node {}", u));
    if (u > v) std::swap(u, v);
    if (seen.insert({u, v}).second) edges.emplace_back(u, v);
  }
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(num_nodes);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

Graph parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_dimacs(in);
}

Graph read_dimacs(std::istream& in) {
  std::string text;
  int line = 0;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    std::istringstream ls(text);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      if (n >= 0) throw ParseError(line, "duplicate problem line");
      std::string format;
      long long nn = -1;
      long long mm = -1;
      if (!(ls >> format >> nn >> mm) || (format != "edge" && format != "col") || nn < 0 ||
          mm < 0 || nn > std::numeric_limits<int>::max()) {
        throw ParseError(line, "malformed problem line, expected 'p edge <n> <m>'");
      }
      n = static_cast<int>(nn);
      continue;
    }
    if (tag == "e") {
      if (n < 0) throw ParseError(line, "edge before problem line");
      long long u = 0;
      long long v = 0;
      std::string rest;
      if (!(ls >> u >> v) || (ls >> rest)) throw ParseError(line, "malformed edge line");
      if (u < 1 || v < 1 || u > n || v > n) {
        throw ParseError(line, fmt::format("edge {} {} out of range for {} nodes", u, v, n));
      }
      if (u == v) throw ParseError(line, "self loop");
      edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
      continue;
    }
    throw ParseError(line, "unknown line type '" + tag + "'");
  }
  if (n < 0) throw ParseError(line, "missing problem line");
  return Graph(n, edges);
}

void write_dimacs(std::ostream& out, const Graph& g, const std::string& comment) {
  if (!comment.empty()) {
    std::istringstream lines(comment);
    std::string l;
    while (std::getline(lines, l)) out << "c " << l << '\n';
  }
  out << "p edge " << g.num_nodes << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

namespace {

// Uniform index in [0, k) by rejection; independent of the standard
// library's distribution implementations.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t k) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % k;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % k;
}

double uniform_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Graph generate_triangle_instance(int n_nodes, int n_triangles, std::uint64_t seed) {
  if (n_nodes < 3) throw InvalidArgument("triangle instances need at least 3 nodes");
  if (n_triangles < 0) throw InvalidArgument("triangle count must be nonnegative");
  std::mt19937_64 rng(seed);
  std::set<std::pair<int, int>> edges;
  const auto n = static_cast<std::uint64_t>(n_nodes);
  for (int i = 0; i < n_triangles; ++i) {
    const int a = static_cast<int>(uniform_index(rng, n));
    int b;
    do {
      b = static_cast<int>(uniform_index(rng, n));
    } while (b == a);
    int c;
    do {
      c = static_cast<int>(uniform_index(rng, n));
    } while (c == a || c == b);
    edges.insert(std::minmax(a, b));
    edges.insert(std::minmax(a, c));
    edges.insert(std::minmax(b, c));
  }
  return Graph(n_nodes, {edges.begin(), edges.end()});
}

Graph generate_random_graph(int n_nodes, double edge_probability, std::uint64_t seed) {
  if (n_nodes < 0) throw InvalidArgument("node count must be nonnegative");
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
    throw InvalidArgument("edge probability must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n_nodes; ++u) {
    for (int v = u + 1; v < n_nodes; ++v) {
      if (uniform_real(rng) < edge_probability) edges.emplace_back(u, v);
    }
  }
  return Graph(n_nodes, edges);
}

namespace {

constexpr double kSupportTol = 1e-12;
constexpr double kTieTol = 1e-12;

// Replaces `best` by (nodes, value) when value is larger, or equal and
// lexicographically smaller.
template <typename Nodes>
bool better(double value, const Nodes& nodes, double best, const std::vector<int>& best_nodes,
            bool have_best) {
  if (!have_best || value > best + kTieTol) return true;
  if (value < best - kTieTol) return false;
  return std::lexicographical_compare(nodes.begin(), nodes.end(), best_nodes.begin(),
                                      best_nodes.end());
}

class OddSetSearch {
 public:
  OddSetSearch(const Graph& g, const Vec& x, int cap) : cap_(cap) {
    std::vector<int> local(g.num_nodes, -1);
    for (int e = 0; e < g.num_edges(); ++e) {
      if (x(e) <= kSupportTol) continue;
      for (int node : {g.edges[e].first, g.edges[e].second}) {
        if (local[node] < 0) local[node] = 0;
      }
    }
    for (int v = 0; v < g.num_nodes; ++v) {
      if (local[v] >= 0) {
        local[v] = static_cast<int>(label_.size());
        label_.push_back(v);
      }
    }
    const int m = static_cast<int>(label_.size());
    weight_.assign(static_cast<std::size_t>(m) * m, 0.0);
    adj_.assign(m, {});
    for (int e = 0; e < g.num_edges(); ++e) {
      if (x(e) <= kSupportTol) continue;
      const int u = local[g.edges[e].first];
      const int v = local[g.edges[e].second];
      weight_[u * m + v] = weight_[v * m + u] = x(e);
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
    mark_.assign(m, 0);
  }

  bool cap_binding() const {
    const int m = static_cast<int>(label_.size());
    std::vector<char> seen(m, 0);
    for (int s = 0; s < m; ++s) {
      if (seen[s]) continue;
      int size = 0;
      std::vector<int> stack{s};
      seen[s] = 1;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        ++size;
        for (int u : adj_[v]) {
          if (!seen[u]) {
            seen[u] = 1;
            stack.push_back(u);
          }
        }
      }
      if (size > cap_) return true;
    }
    return false;
  }

  std::optional<OddSetCut> run() {
    const int m = static_cast<int>(label_.size());
    for (int v = 0; v < m; ++v) {
      sub_.assign(1, v);
      close(v, +1);
      std::vector<int> ext;
      for (int u : adj_[v]) {
        if (u > v) ext.push_back(u);
      }
      extend(ext, v, 0.0);
      close(v, -1);
    }
    if (!have_best_ || best_ <= kViolationTol) return std::nullopt;
    return OddSetCut{best_nodes_, best_};
  }

 private:
  void close(int w, int delta) {
    mark_[w] += delta;
    for (int u : adj_[w]) mark_[u] += delta;
  }

  void consider(double inner) {
    const int k = static_cast<int>(sub_.size());
    const double viol = inner - (k - 1) / 2.0;
    if (have_best_ && viol < best_ - kTieTol) return;
    std::vector<int> nodes;
    nodes.reserve(k);
    for (int s : sub_) nodes.push_back(label_[s]);
    std::sort(nodes.begin(), nodes.end());
    if (better(viol, nodes, best_, best_nodes_, have_best_)) {
      best_ = viol;
      best_nodes_ = std::move(nodes);
      have_best_ = true;
    }
  }

  // ESU enumeration: each connected set with minimum element v is visited once.
  void extend(std::vector<int> ext, int v, double inner) {
    const int k = static_cast<int>(sub_.size());
    if (k >= 3 && k % 2 == 1) consider(inner);
    if (k == cap_) return;
    const int m = static_cast<int>(label_.size());
    while (!ext.empty()) {
      const int w = ext.back();
      ext.pop_back();
      std::vector<int> next = ext;
      for (int u : adj_[w]) {
        if (u > v && mark_[u] == 0) next.push_back(u);
      }
      double add = 0.0;
      for (int s : sub_) add += weight_[s * m + w];
      sub_.push_back(w);
      close(w, +1);
      extend(std::move(next), v, inner + add);
      close(w, -1);
      sub_.pop_back();
    }
  }

  int cap_;
  std::vector<int> label_;
  std::vector<double> weight_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> mark_;
  std::vector<int> sub_;
  bool have_best_ = false;
  double best_ = 0.0;
  std::vector<int> best_nodes_;
};

void check_edge_vector(const Graph& g, const Vec& x) {
  if (x.size() != g.num_edges()) throw DimensionError("x must have one entry per edge");
}

void check_node_vector(const Graph& g, const Vec& x) {
  if (x.size() != g.num_nodes) throw DimensionError("x must have one entry per node");
}

}  // namespace

std::optional<OddSetCut> most_violated_oddset(const Graph& g, const Vec& x, int max_set_size,
                                              bool* cap_binding) {
  if (max_set_size < 3) throw InvalidArgument("max_set_size must be at least 3");
  check_edge_vector(g, x);
  OddSetSearch search(g, x, max_set_size);
  if (cap_binding) *cap_binding = search.cap_binding();
  return search.run();
}

namespace {

Constraint oddset_row(const Graph& g, const std::vector<int>& nodes) {
  std::vector<char> in(g.num_nodes, 0);
  for (int v : nodes) in[v] = 1;
  const double rhs = (static_cast<double>(nodes.size()) - 1.0) / 2.0;
  Vec a = Vec::Zero(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    if (in[g.edges[e].first] && in[g.edges[e].second]) a(e) = 1.0 / rhs;
  }
  return {a, 1.0, ConstraintForm::PolarNormalized};
}

Constraint clique_row(const Graph& g, const std::vector<int>& nodes) {
  Vec a = Vec::Zero(g.num_nodes);
  for (int v : nodes) a(v) = 1.0;
  return {a, 1.0, ConstraintForm::PolarNormalized};
}

}  // namespace

SeparationResult separate_oddset(const Graph& g, const Vec& x, int max_set_size) {
  if (x.size() == g.num_edges() && x.size() > 0 && x.minCoeff() < -kViolationTol) {
    throw InvalidArgument("odd-set separation needs x >= 0");
  }
  const std::optional<OddSetCut> cut = most_violated_oddset(g, x, max_set_size);
  if (!cut) return SeparationResult::inside();
  return SeparationResult::violated(oddset_row(g, cut->nodes), cut->violation);
}

namespace {

class CliqueSearch {
 public:
  CliqueSearch(const Graph& g, const Vec& x) {
    for (int v = 0; v < g.num_nodes; ++v) {
      if (x(v) > kSupportTol) label_.push_back(v);
    }
    const int m = static_cast<int>(label_.size());
    std::vector<int> local(g.num_nodes, -1);
    for (int i = 0; i < m; ++i) local[label_[i]] = i;
    adj_.assign(static_cast<std::size_t>(m) * m, 0);
    for (auto [u, v] : g.edges) {
      if (local[u] >= 0 && local[v] >= 0) {
        adj_[local[u] * m + local[v]] = adj_[local[v] * m + local[u]] = 1;
      }
    }
    w_.resize(m);
    for (int i = 0; i < m; ++i) w_[i] = x(label_[i]);
  }

  CliqueCut run() {
    const int m = static_cast<int>(label_.size());
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w_[a] > w_[b]; });
    std::vector<int> current;
    expand(current, 0.0, order);
    CliqueCut out;
    for (int v : best_) out.nodes.push_back(label_[v]);
    std::sort(out.nodes.begin(), out.nodes.end());
    out.weight = best_weight_;
    return out;
  }

 private:
  bool adjacent(int u, int v) const { return adj_[u * static_cast<int>(w_.size()) + v] != 0; }

  void expand(std::vector<int>& current, double weight, const std::vector<int>& cand) {
    if (weight > best_weight_ + kTieTol) {
      best_weight_ = weight;
      best_ = current;
    }
    if (cand.empty()) return;
    // Greedy coloring; vertices listed by color with prefix bounds.
    std::vector<std::vector<int>> classes;
    for (int v : cand) {
      bool placed = false;
      for (auto& cls : classes) {
        bool ok = true;
        for (int u : cls) {
          if (adjacent(u, v)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          cls.push_back(v);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({v});
    }
    std::vector<int> order;
    std::vector<double> bound;
    double done = 0.0;
    for (const auto& cls : classes) {
      double running = 0.0;
      for (int v : cls) {
        running = std::max(running, w_[v]);
        order.push_back(v);
        bound.push_back(done + running);
      }
      done += running;
    }
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (weight + bound[i] <= best_weight_ + kTieTol) return;
      const int v = order[i];
      std::vector<int> next;
      for (int j = 0; j < i; ++j) {
        if (adjacent(order[j], v)) next.push_back(order[j]);
      }
      current.push_back(v);
      expand(current, weight + w_[v], next);
      current.pop_back();
    }
  }

  std::vector<int> label_;
  std::vector<char> adj_;
  std::vector<double> w_;
  std::vector<int> best_;
  double best_weight_ = 0.0;
};

}  // namespace

CliqueCut max_weight_clique(const Graph& g, const Vec& x) {
  check_node_vector(g, x);
  return CliqueSearch(g, x).run();
}

SeparationResult separate_clique(const Graph& g, const Vec& x) {
  check_node_vector(g, x);
  if (x.size() > 0 && x.minCoeff() < -kViolationTol) {
    throw InvalidArgument("clique separation needs x >= 0");
  }
  const CliqueCut best = max_weight_clique(g, x);
  const double viol = best.weight - 1.0;
  if (viol <= kViolationTol) return SeparationResult::inside();
  return SeparationResult::violated(clique_row(g, best.nodes), viol);
}

namespace {

// Most negative coordinate as the row -x_i <= 0, if below -tol.
std::optional<SeparationResult> nonnegativity_cut(const Vec& x) {
  Eigen::Index i = 0;
  if (x.size() == 0 || x.minCoeff(&i) >= -kViolationTol) return std::nullopt;
  Vec a = Vec::Zero(x.size());
  a(i) = -1.0;
  return SeparationResult::violated({a, 0.0, ConstraintForm::General}, -x(i));
}

}  // namespace

MatchingOracle::MatchingOracle(Graph g, int max_set_size)
    : graph_(std::move(g)), max_set_size_(max_set_size), incident_(graph_.num_nodes) {
  if (graph_.num_edges() == 0) throw InvalidArgument("graph has no edges");
  if (max_set_size_ < 3) throw InvalidArgument("max_set_size must be at least 3");
  for (int e = 0; e < graph_.num_edges(); ++e) {
    incident_[graph_.edges[e].first].push_back(e);
    incident_[graph_.edges[e].second].push_back(e);
  }
}

double MatchingOracle::outer_radius() const { return std::sqrt(static_cast<double>(dimension())); }

std::optional<double> MatchingOracle::inner_radius() const {
  return 1.0 / std::sqrt(static_cast<double>(dimension()));
}

SeparationResult MatchingOracle::separate(const Vec& x) const {
  check_edge_vector(graph_, x);
  if (auto cut = nonnegativity_cut(x)) return *cut;
  const Eigen::Index m = dimension();
  double best = kViolationTol;
  std::optional<Constraint> row;
  Eigen::Index e_max = 0;
  const double bound_viol = x.maxCoeff(&e_max) - 1.0;
  if (bound_viol > best) {
    best = bound_viol;
    Vec a = Vec::Zero(m);
    a(e_max) = 1.0;
    row = Constraint{a, 1.0, ConstraintForm::PolarNormalized};
  }
  for (int v = 0; v < graph_.num_nodes; ++v) {
    double load = 0.0;
    for (int e : incident_[v]) load += x(e);
    if (load - 1.0 > best + kTieTol) {
      best = load - 1.0;
      Vec a = Vec::Zero(m);
      for (int e : incident_[v]) a(e) = 1.0;
      row = Constraint{a, 1.0, ConstraintForm::PolarNormalized};
    }
  }
  bool binding = false;
  const std::optional<OddSetCut> odd = most_violated_oddset(graph_, x, max_set_size_, &binding);
  if (odd && odd->violation > best + kTieTol) {
    best = odd->violation;
    row = oddset_row(graph_, odd->nodes);
  }
  if (!row) {
    if (binding) ++cap_binding_;
    return SeparationResult::inside();
  }
  return SeparationResult::violated(std::move(*row), best);
}

StableSetOracle::StableSetOracle(Graph g) : graph_(std::move(g)) {
  if (graph_.num_nodes == 0) throw InvalidArgument("graph has no nodes");
}

double StableSetOracle::outer_radius() const { return std::sqrt(static_cast<double>(dimension())); }

std::optional<double> StableSetOracle::inner_radius() const {
  return 1.0 / std::sqrt(static_cast<double>(dimension()));
}

SeparationResult StableSetOracle::separate(const Vec& x) const {
  check_node_vector(graph_, x);
  if (auto cut = nonnegativity_cut(x)) return *cut;
  return separate_clique(graph_, x);
}

std::vector<Constraint> matching_initial_rows(const Graph& g, InitialRows preset) {
  const int m = g.num_edges();
  std::vector<Constraint> rows;
  for (int e = 0; e < m; ++e) {
    Vec a = Vec::Zero(m);
    a(e) = 1.0;
    rows.push_back({a, 1.0, ConstraintForm::PolarNormalized});
  }
  if (preset == InitialRows::Basic) {
    std::vector<Vec> deg(g.num_nodes, Vec::Zero(m));
    std::vector<int> count(g.num_nodes, 0);
    for (int e = 0; e < m; ++e) {
      for (int v : {g.edges[e].first, g.edges[e].second}) {
        deg[v](e) = 1.0;
        ++count[v];
      }
    }
    for (int v = 0; v < g.num_nodes; ++v) {
      if (count[v] >= 2) rows.push_back({deg[v], 1.0, ConstraintForm::PolarNormalized});
    }
  }
  return rows;
}

std::vector<Constraint> stable_set_initial_rows(const Graph& g, InitialRows preset) {
  const int n = g.num_nodes;
  std::vector<Constraint> rows;
  for (int v = 0; v < n; ++v) {
    Vec a = Vec::Zero(n);
    a(v) = 1.0;
    rows.push_back({a, 1.0, ConstraintForm::PolarNormalized});
  }
  if (preset == InitialRows::Basic) {
    for (auto [u, v] : g.edges) rows.push_back(clique_row(g, {u, v}));
  }
  return rows;
}

LinearProgram packing_lp(Eigen::Index dim, const std::vector<Constraint>& rows) {
  LinearProgram lp = LinearProgram::nonnegative(Vec::Ones(dim));
  lp.rows = rows;
  return lp;
}

double brute_force_matching_opt(const Graph& g) {
  const int n = g.num_nodes;
  if (n > 24) throw InvalidArgument("instance too large for brute force");
  std::vector<std::uint32_t> nbr(n, 0);
  for (auto [u, v] : g.edges) {
    nbr[u] |= 1u << v;
    nbr[v] |= 1u << u;
  }
  std::vector<std::int8_t> memo(std::size_t{1} << n, -1);
  auto solve = [&](auto&& self, std::uint32_t mask) -> int {
    if (mask == 0) return 0;
    std::int8_t& slot = memo[mask];
    if (slot >= 0) return slot;
    const int v = __builtin_ctz(mask);
    const std::uint32_t rest = mask & ~(1u << v);
    int best = self(self, rest);
    for (std::uint32_t cand = nbr[v] & rest; cand != 0; cand &= cand - 1) {
      const int u = __builtin_ctz(cand);
      best = std::max(best, 1 + self(self, rest & ~(1u << u)));
    }
    slot = static_cast<std::int8_t>(best);
    return best;
  };
  const std::uint32_t all = n == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
  return solve(solve, all);
}

namespace {

using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
using Mate = std::vector<boost::graph_traits<BGraph>::vertex_descriptor>;

Mate edmonds_mate(const Graph& g, BGraph& bg) {
  for (auto [u, v] : g.edges) boost::add_edge(u, v, bg);
  Mate mate(g.num_nodes);
  if (g.num_nodes > 0) boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  return mate;
}

}  // namespace

double max_matching_size(const Graph& g) {
  BGraph bg(g.num_nodes);
  Mate mate = edmonds_mate(g, bg);
  if (g.num_nodes == 0) return 0.0;
  return static_cast<double>(boost::matching_size(bg, &mate[0]));
}

Vec maximum_matching_indicator(const Graph& g) {
  BGraph bg(g.num_nodes);
  const Mate mate = edmonds_mate(g, bg);
  const auto none = boost::graph_traits<BGraph>::null_vertex();
  Vec x = Vec::Zero(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edges[e];
    if (mate[u] != none && static_cast<int>(mate[u]) == v) x(e) = 1.0;
  }
  return x;
}

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
  const int n = g.num_nodes;
  if (n > 64) throw InvalidArgument("instance too large for clique enumeration");
  std::vector<std::uint64_t> nbr(n, 0);
  for (auto [u, v] : g.edges) {
    nbr[u] |= std::uint64_t{1} << v;
    nbr[v] |= std::uint64_t{1} << u;
  }
  std::vector<std::vector<int>> out;
  std::vector<int> r;
  auto bk = [&](auto&& self, std::uint64_t p, std::uint64_t x) -> void {
    if (p == 0 && x == 0) {
      std::vector<int> c = r;
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
      return;
    }
    const std::uint64_t px = p | x;
    int pivot = __builtin_ctzll(px);
    int best = -1;
    for (std::uint64_t s = px; s != 0; s &= s - 1) {
      const int u = __builtin_ctzll(s);
      const int cnt = __builtin_popcountll(p & nbr[u]);
      if (cnt > best) {
        best = cnt;
        pivot = u;
      }
    }
    for (std::uint64_t s = p & ~nbr[pivot]; s != 0; s &= s - 1) {
      const int v = __builtin_ctzll(s);
      const std::uint64_t bit = std::uint64_t{1} << v;
      r.push_back(v);
      self(self, p & nbr[v], x & nbr[v]);
      r.pop_back();
      p &= ~bit;
      x |= bit;
    }
  };
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  if (n > 0) bk(bk, all, 0);
  std::sort(out.begin(), out.end());
  return out;
}

LpSolution clique_relaxation_solution(const Graph& g) {
  if (g.num_nodes > 30) throw InvalidArgument("instance too large for brute force");
  std::vector<Constraint> rows;
  for (const auto& q : maximal_cliques(g)) rows.push_back(clique_row(g, q));
  return solve_lp(packing_lp(g.num_nodes, rows));
}

double clique_relaxation_opt(const Graph& g) { return clique_relaxation_solution(g).value; }

}  // namespace oracleopt
