#include "clar/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#include "clar/io_util.hpp"

namespace clar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_costs(const Mat& cost) {
  for (double v : cost.data)
    if (!std::isfinite(v) || v < 0.0)
      fail(ErrorCategory::Numeric,
           "matching: cost entries must be finite and non-negative");
}

// Min-cost flow instance over the bipartite gadget
//   source -> row i (capacity cap_i, cost 0)
//   row i  -> col j (capacity 1, cost c_ij, only where allowed)
//   col j  -> sink  (capacity 1, cost 0)
// Unit augmentations via Dijkstra with Johnson potentials. Costs are
// non-negative so zero initial potentials are valid; reduced costs are
// clamped at -1e-12 against rounding.
struct FlowSolver {
  const Mat& cost;
  std::size_t ns, nt;
  std::vector<int> row_cap;            // remaining capacity per source row
  std::vector<char> col_used;          // target column consumed
  std::vector<std::vector<char>> allowed;
  // matching state: col_to_row[j] = row currently matched to column j
  std::vector<std::ptrdiff_t> col_to_row;
  std::vector<double> pot_row, pot_col;
  double pot_sink = 0.0;

  FlowSolver(const Mat& c, std::size_t capacity)
      : cost(c),
        ns(c.rows),
        nt(c.cols),
        row_cap(c.rows, static_cast<int>(capacity)),
        col_used(c.cols, 0),
        allowed(c.rows, std::vector<char>(c.cols, 1)),
        col_to_row(c.cols, -1),
        pot_row(c.rows, 0.0),
        pot_col(c.cols, 0.0) {}

  static double clamp_reduced(double r) {
    if (r < 0.0) {
      if (r < -1e-9) fail(ErrorCategory::Numeric, "matching: potential drift");
      return 0.0;
    }
    return r;
  }

  // One augmentation along a shortest path in the residual graph.
  // Returns false when the sink is unreachable.
  bool augment() {
    // Node layout for Dijkstra: 0..ns-1 rows, ns..ns+nt-1 cols, ns+nt sink.
    const std::size_t n_nodes = ns + nt + 1;
    const std::size_t sink = ns + nt;
    std::vector<double> dist(n_nodes, kInf);
    std::vector<std::ptrdiff_t> prev(n_nodes, -1);  // predecessor node
    std::vector<char> done(n_nodes, 0);

    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (std::size_t i = 0; i < ns; ++i) {
      if (row_cap[i] > 0) {
        dist[i] = clamp_reduced(0.0 + 0.0 - pot_row[i]);
        pq.push({dist[i], i});
      }
    }
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (done[u]) continue;
      done[u] = 1;
      if (u == sink) break;
      if (u < ns) {
        // row -> unmatched residual edges to columns
        for (std::size_t j = 0; j < nt; ++j) {
          if (!allowed[u][j] || col_to_row[j] == static_cast<std::ptrdiff_t>(u))
            continue;
          const std::size_t v = ns + j;
          if (done[v]) continue;
          double w = clamp_reduced(cost.at(u, j) + pot_row[u] - pot_col[j]);
          if (d + w < dist[v]) {
            dist[v] = d + w;
            prev[v] = static_cast<std::ptrdiff_t>(u);
            pq.push({dist[v], v});
          }
        }
      } else {
        const std::size_t j = u - ns;
        if (!col_used[j]) {
          // col -> sink
          double w = clamp_reduced(0.0 + pot_col[j] - pot_sink);
          if (d + w < dist[sink]) {
            dist[sink] = d + w;
            prev[sink] = static_cast<std::ptrdiff_t>(u);
            pq.push({dist[sink], sink});
          }
        } else {
          // reverse of matched edge: col j -> its row
          const std::ptrdiff_t r = col_to_row[j];
          if (r >= 0 && !done[static_cast<std::size_t>(r)]) {
            const std::size_t v = static_cast<std::size_t>(r);
            double w =
                clamp_reduced(-cost.at(v, j) + pot_col[j] - pot_row[v]);
            if (d + w < dist[v]) {
              dist[v] = d + w;
              prev[v] = static_cast<std::ptrdiff_t>(u);
              pq.push({dist[v], v});
            }
          }
        }
      }
    }
    if (dist[sink] == kInf) return false;

    // Update potentials with finite distances only.
    for (std::size_t i = 0; i < ns; ++i)
      if (dist[i] < kInf) pot_row[i] += dist[i];
    for (std::size_t j = 0; j < nt; ++j)
      if (dist[ns + j] < kInf) pot_col[j] += dist[ns + j];
    pot_sink += dist[sink];

    // Walk back from sink flipping matched edges.
    std::size_t cur = sink;
    std::ptrdiff_t p = prev[cur];
    // p is the final column
    std::size_t last_col = static_cast<std::size_t>(p) - ns;
    col_used[last_col] = 1;
    cur = static_cast<std::size_t>(p);
    while (true) {
      p = prev[cur];
      if (cur >= ns) {
        // edge row(p) -> col(cur): match it
        const std::size_t j = cur - ns;
        const std::size_t r = static_cast<std::size_t>(p);
        col_to_row[j] = static_cast<std::ptrdiff_t>(r);
        cur = r;
        if (prev[cur] == -1) {
          --row_cap[r];
          break;
        }
      } else {
        // edge col(p) -> row(cur): unmatch that column from this row
        cur = static_cast<std::size_t>(p);
      }
    }
    return true;
  }

  // Sends k units; returns nullopt when infeasible.
  std::optional<IndexPairing> run(std::size_t k) {
    for (std::size_t step = 0; step < k; ++step)
      if (!augment()) return std::nullopt;
    IndexPairing out;
    for (std::size_t j = 0; j < nt; ++j)
      if (col_to_row[j] >= 0)
        out.pairs.push_back({static_cast<std::size_t>(col_to_row[j]), j});
    std::sort(out.pairs.begin(), out.pairs.end());
    out.total_cost = 0.0;
    for (const auto& pr : out.pairs)
      out.total_cost += cost.at(pr.source, pr.target);
    return out;
  }
};

// Optimal total with some pairs forced and all pairs lexicographically at or
// below `bound` forbidden. Forced pairs contribute their cost directly.
std::optional<double> restricted_optimum(const Mat& cost, std::size_t k_prime,
                                         std::size_t capacity,
                                         const std::vector<IndexPair>& forced,
                                         std::optional<IndexPair> bound) {
  FlowSolver solver(cost, capacity);
  double base = 0.0;
  for (const auto& f : forced) {
    solver.row_cap[f.source] -= 1;
    if (solver.row_cap[f.source] < 0) return std::nullopt;
    if (solver.col_used[f.target]) return std::nullopt;
    solver.col_used[f.target] = 1;
    base += cost.at(f.source, f.target);
    for (std::size_t i = 0; i < cost.rows; ++i) solver.allowed[i][f.target] = 0;
  }
  if (bound) {
    for (std::size_t i = 0; i < cost.rows; ++i)
      for (std::size_t j = 0; j < cost.cols; ++j)
        if (IndexPair{i, j} <= *bound) solver.allowed[i][j] = 0;
  }
  auto res = solver.run(k_prime - forced.size());
  if (!res) return std::nullopt;
  return base + res->total_cost;
}

bool totals_equal(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::max(std::abs(a),
                                                          std::abs(b)));
}

}  // namespace

Mat build_cost_matrix(const LabeledMatrix& u, const LabeledMatrix& v) {
  if (u.dim() != v.dim())
    fail(ErrorCategory::Numeric,
         "cost matrix: row dimension mismatch (" + std::to_string(u.dim()) +
             " vs " + std::to_string(v.dim()) + ")");
  Mat cost(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      cost.at(i, j) = squared_distance(u.rows.row(i), v.rows.row(j));
  return cost;
}

IndexPairing solve_matching(const Mat& cost, std::size_t k_prime,
                            std::size_t capacity) {
  check_costs(cost);
  if (capacity < 1) fail(ErrorCategory::Infeasible, "matching: capacity < 1");
  if (k_prime < 1) fail(ErrorCategory::Infeasible, "matching: K' < 1");
  if (k_prime > std::min(cost.cols, capacity * cost.rows))
    fail(ErrorCategory::Infeasible,
         "matching: K'=" + std::to_string(k_prime) +
             " exceeds min(k_t, M*k_s)=" +
             std::to_string(std::min(cost.cols, capacity * cost.rows)));

  auto opt = restricted_optimum(cost, k_prime, capacity, {}, std::nullopt);
  if (!opt) fail(ErrorCategory::Infeasible, "matching: infeasible instance");
  const double best = *opt;

  // Fix pairs one at a time in ascending (source, target) order, keeping
  // only prefixes that still reach the optimal total. The final list is the
  // lexicographically smallest optimal pairing.
  std::vector<IndexPair> fixed;
  std::optional<IndexPair> last;
  while (fixed.size() < k_prime) {
    bool advanced = false;
    for (std::size_t i = last ? last->source : 0; i < cost.rows && !advanced;
         ++i) {
      std::size_t j0 = (last && i == last->source) ? last->target + 1 : 0;
      for (std::size_t j = j0; j < cost.cols; ++j) {
        IndexPair cand{i, j};
        auto with = fixed;
        with.push_back(cand);
        auto t = restricted_optimum(cost, k_prime, capacity, with, cand);
        if (t && totals_equal(*t, best)) {
          fixed = std::move(with);
          last = cand;
          advanced = true;
          break;
        }
      }
    }
    if (!advanced)
      fail(ErrorCategory::Numeric,
           "matching: tie-break extraction failed to advance");
  }

  IndexPairing out;
  out.pairs = std::move(fixed);
  out.total_cost = 0.0;
  for (const auto& pr : out.pairs)
    out.total_cost += cost.at(pr.source, pr.target);
  return out;
}

IndexPairing brute_force_matching(const Mat& cost, std::size_t k_prime,
                                  std::size_t capacity) {
  check_costs(cost);
  if (cost.rows * cost.cols > 36)
    fail(ErrorCategory::Infeasible,
         "brute force matching: instance too large (rows*cols > 36)");
  if (k_prime < 1 || k_prime > std::min(cost.cols, capacity * cost.rows))
    fail(ErrorCategory::Infeasible, "brute force matching: infeasible K'");

  const std::size_t ns = cost.rows, nt = cost.cols;
  std::vector<std::size_t> row_use(ns, 0);
  std::vector<IndexPair> current;
  std::optional<IndexPairing> best;

  // Assign target columns left to right; each is skipped or paired with a
  // row that has capacity left.
  auto consider = [&]() {
    IndexPairing cand;
    cand.pairs = current;
    std::sort(cand.pairs.begin(), cand.pairs.end());
    cand.total_cost = 0.0;
    for (const auto& pr : cand.pairs)
      cand.total_cost += cost.at(pr.source, pr.target);
    if (!best || cand.total_cost < best->total_cost - 1e-12 ||
        (totals_equal(cand.total_cost, best->total_cost) &&
         cand.pairs < best->pairs))
      best = std::move(cand);
  };

  // recursive lambda over columns
  auto rec = [&](auto&& self, std::size_t j, std::size_t chosen) -> void {
    if (chosen == k_prime) {
      consider();
      return;
    }
    if (j == nt || chosen + (nt - j) < k_prime) return;
    // skip column j if enough columns remain
    if (chosen + (nt - j - 1) >= k_prime) self(self, j + 1, chosen);
    for (std::size_t i = 0; i < ns; ++i) {
      if (row_use[i] >= capacity) continue;
      row_use[i]++;
      current.push_back({i, j});
      self(self, j + 1, chosen + 1);
      current.pop_back();
      row_use[i]--;
    }
  };
  rec(rec, 0, 0);

  if (!best)
    fail(ErrorCategory::Infeasible, "brute force matching: no feasible T");
  return *best;
}

Pairing match_labels(const LabeledMatrix& u, const LabeledMatrix& v,
                     const FrequencyTable& freq_s, const FrequencyTable& freq_t,
                     const MatchConfig& cfg) {
  auto frequent_s = filter_frequent_labels(freq_s, cfg.frequency_threshold);
  auto frequent_t = filter_frequent_labels(freq_t, cfg.frequency_threshold);

  // Survivors keep the row order of the input matrices.
  auto survivors = [](const LabeledMatrix& m, const std::vector<LabelId>& keep,
                      const char* side) {
    std::set<LabelId> keep_set(keep.begin(), keep.end());
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (keep_set.count(m.labels[i])) {
        idx.push_back(i);
        keep_set.erase(m.labels[i]);
      }
    if (!keep_set.empty())
      fail(ErrorCategory::ParseFormat,
           std::string("match: ") + side +
               " weight matrix is missing frequent label " +
               to_string(*keep_set.begin()));
    return idx;
  };
  auto idx_s = survivors(u, frequent_s, "source");
  auto idx_t = survivors(v, frequent_t, "target");
  if (idx_s.empty() || idx_t.empty())
    fail(ErrorCategory::Infeasible,
         "match: no frequent labels survive the filter on one side");

  LabeledMatrix us, vs;
  us.rows = Mat(idx_s.size(), u.dim());
  vs.rows = Mat(idx_t.size(), v.dim());
  for (std::size_t a = 0; a < idx_s.size(); ++a) {
    us.labels.push_back(u.labels[idx_s[a]]);
    auto src = u.rows.row(idx_s[a]);
    std::copy(src.begin(), src.end(), us.rows.row(a).begin());
  }
  for (std::size_t a = 0; a < idx_t.size(); ++a) {
    vs.labels.push_back(v.labels[idx_t[a]]);
    auto src = v.rows.row(idx_t[a]);
    std::copy(src.begin(), src.end(), vs.rows.row(a).begin());
  }

  const std::size_t k_hat = std::min(us.size(), vs.size());
  std::size_t k_prime = 0;
  switch (cfg.cardinality.kind) {
    case Cardinality::Kind::Default:
      k_prime = cfg.source_capacity > 1 ? vs.size() : (k_hat + 1) / 2;
      break;
    case Cardinality::Kind::All:
      k_prime = k_hat;
      break;
    case Cardinality::Kind::Exact:
      k_prime = cfg.cardinality.value;
      break;
  }

  Mat cost = build_cost_matrix(us, vs);
  IndexPairing idx = solve_matching(cost, k_prime, cfg.source_capacity);

  Pairing out;
  for (const auto& pr : idx.pairs)
    out.pairs.push_back({us.labels[pr.source], vs.labels[pr.target],
                         cost.at(pr.source, pr.target)});
  return out;
}

std::string pairing_to_tsv(const Pairing& p) {
  auto sorted = p.pairs;
  std::sort(sorted.begin(), sorted.end(), [](const Pair& a, const Pair& b) {
    if (a.sq_distance != b.sq_distance) return a.sq_distance < b.sq_distance;
    if (a.source != b.source) return a.source < b.source;
    return a.target < b.target;
  });
  std::string out;
  for (const auto& pr : sorted) {
    out += pr.source.language;
    out += '\t';
    out += pr.source.name;
    out += '\t';
    out += pr.target.language;
    out += '\t';
    out += pr.target.name;
    out += '\t';
    out += format_double(pr.sq_distance);
    out += '\n';
  }
  return out;
}

Pairing pairing_from_tsv(const std::string& text) {
  Pairing p;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      std::size_t pos = line.find('\t', start);
      if (pos == std::string::npos) {
        cols.push_back(line.substr(start));
        break;
      }
      cols.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    if (cols.size() != 5)
      fail(ErrorCategory::ParseFormat,
           "line " + std::to_string(line_no) + ": expected 5 pairing columns");
    p.pairs.push_back({{cols[0], cols[1]},
                       {cols[2], cols[3]},
                       parse_double(cols[4], line_no)});
  }
  return p;
}

}  // namespace clar
