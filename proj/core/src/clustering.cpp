#include "hos/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hos/embedding.hpp"
#include "hos/mixture.hpp"
#include "hos/rng.hpp"

namespace hos {

std::string to_string(ClusterMethod m) {
  switch (m) {
    case ClusterMethod::DensityHier: return "density_hier";
    case ClusterMethod::GaussianMixture: return "gaussian_mixture";
    case ClusterMethod::AggloAverage: return "agglo_average";
    case ClusterMethod::AggloComplete: return "agglo_complete";
    case ClusterMethod::AggloWard: return "agglo_ward";
    case ClusterMethod::KmeansCosine: return "kmeans_cosine";
  }
  return "kmeans_cosine";
}

ClusterMethod cluster_method_from_string(const std::string& text) {
  if (text == "density_hier") return ClusterMethod::DensityHier;
  if (text == "gaussian_mixture") return ClusterMethod::GaussianMixture;
  if (text == "agglo_average") return ClusterMethod::AggloAverage;
  if (text == "agglo_complete") return ClusterMethod::AggloComplete;
  if (text == "agglo_ward") return ClusterMethod::AggloWard;
  if (text == "kmeans_cosine") return ClusterMethod::KmeansCosine;
  throw std::invalid_argument("unknown clustering method \"" + text + "\"");
}

namespace {

using Matrix = std::vector<std::vector<double>>;

void check_rectangular(const Matrix& vectors) {
  if (vectors.size() < 2) throw std::invalid_argument("clustering needs at least 2 vectors");
  const std::size_t dims = vectors[0].size();
  if (dims == 0) throw std::invalid_argument("clustering vectors are empty");
  for (const auto& v : vectors) {
    if (v.size() != dims) throw std::invalid_argument("clustering vectors are ragged");
  }
}

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

// Flat n*n Euclidean distance matrix.
std::vector<double> distance_matrix(const Matrix& vectors) {
  const std::size_t n = vectors.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = euclidean(vectors[i], vectors[j]);
      d[i * n + j] = v;
      d[j * n + i] = v;
    }
  }
  return d;
}

// Renumber clusters by their first member's position; noise stays -1.
void canonicalize(std::vector<int>& labels, int& k_out) {
  std::map<int, int> remap;
  int next = 0;
  for (int& label : labels) {
    if (label < 0) continue;
    auto [it, fresh] = remap.emplace(label, next);
    if (fresh) ++next;
    label = it->second;
  }
  k_out = next;
}

// ---------------------------------------------------------------------------
// k-means with cosine similarity (spherical k-means)

std::vector<double> normalized(const std::vector<double>& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  std::vector<double> out(v.size(), 0.0);
  if (norm == 0.0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / norm;
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<int> kmeans_cosine(const Matrix& vectors, int k, std::uint64_t seed) {
  const std::size_t n = vectors.size();
  Matrix unit;
  unit.reserve(n);
  for (const auto& v : vectors) unit.push_back(normalized(v));

  // k-means++ style seeding with 1 - cosine as the squared-distance proxy.
  Rng rng(seed);
  Matrix centers;
  centers.push_back(unit[rng.next_below(n)]);
  std::vector<double> best(n);
  for (std::size_t i = 0; i < n; ++i) best[i] = 1.0 - dot(unit[i], centers[0]);
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (double b : best) total += std::max(b, 0.0);
    std::size_t chosen;
    if (total <= 0.0) {
      chosen = rng.next_below(n);
    } else {
      double ticket = rng.next_double() * total;
      double acc = 0.0;
      chosen = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += std::max(best[i], 0.0);
        if (ticket < acc) {
          chosen = i;
          break;
        }
      }
    }
    centers.push_back(unit[chosen]);
    for (std::size_t i = 0; i < n; ++i) {
      best[i] = std::min(best[i], 1.0 - dot(unit[i], centers.back()));
    }
  }

  std::vector<int> labels(n, 0);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      int arg = 0;
      double sim = -2.0;
      for (int c = 0; c < k; ++c) {
        double s = dot(unit[i], centers[static_cast<std::size_t>(c)]);
        if (s > sim) {
          sim = s;
          arg = c;
        }
      }
      if (labels[i] != arg) {
        labels[i] = arg;
        changed = true;
      }
    }

    std::vector<std::vector<double>> sums(static_cast<std::size_t>(k),
                                          std::vector<double>(vectors[0].size(), 0.0));
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto c = static_cast<std::size_t>(labels[i]);
      ++sizes[c];
      for (std::size_t d = 0; d < unit[i].size(); ++d) sums[c][d] += unit[i][d];
    }
    for (int c = 0; c < k; ++c) {
      auto cs = static_cast<std::size_t>(c);
      if (sizes[cs] > 0) {
        centers[cs] = normalized(sums[cs]);
        continue;
      }
      // Empty cluster: recenter on the point least similar to its center.
      std::size_t worst = 0;
      double worst_sim = 2.0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = dot(unit[i], centers[static_cast<std::size_t>(labels[i])]);
        if (s < worst_sim) {
          worst_sim = s;
          worst = i;
        }
      }
      centers[cs] = unit[worst];
      labels[worst] = c;
      changed = true;
    }
    if (!changed) break;
  }
  return labels;
}

// ---------------------------------------------------------------------------
// Agglomerative clustering via Lance-Williams updates

struct LanceWilliams {
  // d(h, i+j) = ai*d(h,i) + aj*d(h,j) + b*d(i,j) + g*|d(h,i) - d(h,j)|
  double ai = 0.5, aj = 0.5, b = 0.0, g = 0.0;
};

std::vector<int> agglomerative(const Matrix& vectors, int k, ClusterMethod method) {
  const std::size_t n = vectors.size();
  std::vector<double> d = distance_matrix(vectors);
  const bool ward = method == ClusterMethod::AggloWard;
  if (ward) {
    bool any = false;
    for (double v : d) any = any || v > 0.0;
    if (!any) {
      throw std::invalid_argument("ward linkage is undefined on all-identical points");
    }
    for (double& v : d) v *= v;  // Lance-Williams ward runs on squared distances
  }

  std::vector<bool> active(n, true);
  std::vector<int> size(n, 1);
  std::vector<std::vector<int>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {static_cast<int>(i)};

  // Per-row nearest active neighbor cache.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> nn_dist(n, inf);
  std::vector<std::size_t> nn_idx(n, 0);
  auto recompute_nn = [&](std::size_t i) {
    nn_dist[i] = inf;
    nn_idx[i] = i;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !active[j]) continue;
      double v = d[i * n + j];
      if (v < nn_dist[i] || (v == nn_dist[i] && j < nn_idx[i])) {
        nn_dist[i] = v;
        nn_idx[i] = j;
      }
    }
  };
  for (std::size_t i = 0; i < n; ++i) recompute_nn(i);

  std::size_t remaining = n;
  while (remaining > static_cast<std::size_t>(k)) {
    // Global closest pair; ties resolved toward the smallest indices.
    std::size_t bi = n, bj = n;
    double bd = inf;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      std::size_t j = nn_idx[i];
      double v = nn_dist[i];
      std::size_t lo = std::min(i, j);
      std::size_t hi = std::max(i, j);
      if (v < bd || (v == bd && (lo < bi || (lo == bi && hi < bj)))) {
        bd = v;
        bi = lo;
        bj = hi;
      }
    }

    // Merge bj into bi.
    LanceWilliams lw;
    double si = size[bi];
    double sj = size[bj];
    for (std::size_t h = 0; h < n; ++h) {
      if (!active[h] || h == bi || h == bj) continue;
      double sh = size[h];
      switch (method) {
        case ClusterMethod::AggloAverage:
          lw = {si / (si + sj), sj / (si + sj), 0.0, 0.0};
          break;
        case ClusterMethod::AggloComplete:
          lw = {0.5, 0.5, 0.0, 0.5};
          break;
        default:  // ward
          lw = {(si + sh) / (si + sj + sh), (sj + sh) / (si + sj + sh), -sh / (si + sj + sh),
                0.0};
          break;
      }
      double dhi = d[h * n + bi];
      double dhj = d[h * n + bj];
      double merged = lw.ai * dhi + lw.aj * dhj + lw.b * bd + lw.g * std::fabs(dhi - dhj);
      d[h * n + bi] = merged;
      d[bi * n + h] = merged;
    }
    active[bj] = false;
    size[bi] += size[bj];
    members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
    members[bj].clear();
    --remaining;

    recompute_nn(bi);
    for (std::size_t h = 0; h < n; ++h) {
      if (!active[h] || h == bi) continue;
      if (nn_idx[h] == bi || nn_idx[h] == bj) {
        recompute_nn(h);
      } else {
        double v = d[h * n + bi];
        if (v < nn_dist[h] || (v == nn_dist[h] && bi < nn_idx[h])) {
          nn_dist[h] = v;
          nn_idx[h] = bi;
        }
      }
    }
  }

  std::vector<int> labels(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    std::sort(members[i].begin(), members[i].end());
    for (int m : members[i]) labels[static_cast<std::size_t>(m)] = next;
    ++next;
  }
  return labels;
}

// ---------------------------------------------------------------------------
// Density-based hierarchy (mutual reachability + excess-of-mass selection)

constexpr double kLambdaCap = 1e12;

double to_lambda(double distance) {
  if (distance <= 1.0 / kLambdaCap) return kLambdaCap;
  return 1.0 / distance;
}

struct CondensedCluster {
  int parent = -1;
  double birth_lambda = 0.0;
  double stability = 0.0;
  std::vector<int> children;
  bool selected = false;
};

struct DensityResult {
  std::vector<CondensedCluster> clusters;
  std::vector<int> point_cluster;    // condensed cluster each point fell out of
};

std::vector<int> density_hier(const Matrix& vectors, int min_cluster_size, int min_samples) {
  const std::size_t n = vectors.size();
  if (min_cluster_size < 2) throw std::invalid_argument("min_cluster_size must be at least 2");
  if (min_samples < 1) throw std::invalid_argument("min_samples must be at least 1");
  std::vector<double> d = distance_matrix(vectors);

  // Core distance: distance to the (min_samples - 1)-th nearest neighbor,
  // self excluded, clamped to the farthest neighbor on tiny inputs.
  std::vector<double> core(n, 0.0);
  std::size_t rank = std::min<std::size_t>(static_cast<std::size_t>(min_samples) - 1, n - 1);
  if (rank > 0) {
    std::vector<double> row(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t w = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) row[w++] = d[i * n + j];
      }
      std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                       row.end());
      core[i] = row[rank - 1];
    }
  }

  auto mreach = [&](std::size_t i, std::size_t j) {
    return std::max({core[i], core[j], d[i * n + j]});
  };

  // Prim's MST over the implicit complete mutual-reachability graph.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> key(n, inf);
  std::vector<std::size_t> link(n, 0);
  std::vector<bool> in_tree(n, false);
  key[0] = 0.0;
  struct Edge {
    double w;
    std::size_t u, v;
  };
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_tree[i] && (u == n || key[i] < key[u])) u = i;
    }
    in_tree[u] = true;
    if (u != 0) edges.push_back({key[u], std::min(u, link[u]), std::max(u, link[u])});
    for (std::size_t v2 = 0; v2 < n; ++v2) {
      if (in_tree[v2]) continue;
      double w = mreach(u, v2);
      if (w < key[v2]) {
        key[v2] = w;
        link[v2] = u;
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.w != b.w) return a.w < b.w;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });

  // Single-linkage dendrogram over the MST (union-find).
  struct Node {
    int left = -1, right = -1;  // node ids; ids < n are points
    double lambda = 0.0;        // 1 / merge distance
    int size = 1;
  };
  std::vector<Node> nodes(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) nodes[i].size = 1;
  std::vector<int> find_up(2 * n - 1);
  std::iota(find_up.begin(), find_up.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (find_up[static_cast<std::size_t>(x)] != x) {
      find_up[static_cast<std::size_t>(x)] =
          find_up[static_cast<std::size_t>(find_up[static_cast<std::size_t>(x)])];
      x = find_up[static_cast<std::size_t>(x)];
    }
    return x;
  };
  int next_node = static_cast<int>(n);
  for (const Edge& e : edges) {
    int a = find(static_cast<int>(e.u));
    int b = find(static_cast<int>(e.v));
    Node& parent = nodes[static_cast<std::size_t>(next_node)];
    parent.left = a;
    parent.right = b;
    parent.lambda = to_lambda(e.w);
    parent.size = nodes[static_cast<std::size_t>(a)].size + nodes[static_cast<std::size_t>(b)].size;
    find_up[static_cast<std::size_t>(a)] = next_node;
    find_up[static_cast<std::size_t>(b)] = next_node;
    ++next_node;
  }
  const int root = next_node - 1;

  // Condense: split only where both sides reach min_cluster_size; smaller
  // sides fall out of the running cluster at the split level.
  DensityResult res;
  res.point_cluster.assign(n, 0);
  std::vector<double> point_lambda(n, 0.0);
  res.clusters.push_back({});  // root condensed cluster, birth 0

  struct Frame {
    int node;
    int cluster;
  };
  std::vector<Frame> stack;
  stack.push_back({root, 0});
  auto drop_points = [&](int node, int cluster, double lambda) {
    // Every point under `node` leaves `cluster` at `lambda`.
    std::vector<int> walk{node};
    while (!walk.empty()) {
      int cur = walk.back();
      walk.pop_back();
      if (cur < static_cast<int>(n)) {
        res.point_cluster[static_cast<std::size_t>(cur)] = cluster;
        point_lambda[static_cast<std::size_t>(cur)] = lambda;
        continue;
      }
      walk.push_back(nodes[static_cast<std::size_t>(cur)].left);
      walk.push_back(nodes[static_cast<std::size_t>(cur)].right);
    }
  };
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.node < static_cast<int>(n)) {
      // A bare point at the tip of its cluster chain leaves at the cap.
      res.point_cluster[static_cast<std::size_t>(f.node)] = f.cluster;
      point_lambda[static_cast<std::size_t>(f.node)] = kLambdaCap;
      continue;
    }
    const Node& node = nodes[static_cast<std::size_t>(f.node)];
    int ls = nodes[static_cast<std::size_t>(node.left)].size;
    int rs = nodes[static_cast<std::size_t>(node.right)].size;
    bool lbig = ls >= min_cluster_size;
    bool rbig = rs >= min_cluster_size;
    if (lbig && rbig) {
      for (int child_node : {node.left, node.right}) {
        auto id = static_cast<int>(res.clusters.size());
        CondensedCluster c;
        c.parent = f.cluster;
        c.birth_lambda = node.lambda;
        res.clusters.push_back(c);
        res.clusters[static_cast<std::size_t>(f.cluster)].children.push_back(id);
        stack.push_back({child_node, id});
      }
      // The remaining mass of the running cluster disperses here.
      res.clusters[static_cast<std::size_t>(f.cluster)].stability +=
          node.size *
          (node.lambda - res.clusters[static_cast<std::size_t>(f.cluster)].birth_lambda);
    } else if (lbig || rbig) {
      int keep = lbig ? node.left : node.right;
      int drop = lbig ? node.right : node.left;
      drop_points(drop, f.cluster, node.lambda);
      res.clusters[static_cast<std::size_t>(f.cluster)].stability +=
          nodes[static_cast<std::size_t>(drop)].size *
          (node.lambda - res.clusters[static_cast<std::size_t>(f.cluster)].birth_lambda);
      stack.push_back({keep, f.cluster});
    } else {
      drop_points(f.node, f.cluster, node.lambda);
      res.clusters[static_cast<std::size_t>(f.cluster)].stability +=
          node.size *
          (node.lambda - res.clusters[static_cast<std::size_t>(f.cluster)].birth_lambda);
    }
  }

  // Excess-of-mass selection, bottom-up; the root is never selectable.
  const auto cluster_count = res.clusters.size();
  std::vector<double> sel_stab(cluster_count, 0.0);
  for (std::size_t c = cluster_count; c-- > 1;) {
    CondensedCluster& cc = res.clusters[c];
    if (cc.children.empty()) {
      cc.selected = true;
      sel_stab[c] = cc.stability;
      continue;
    }
    double child_sum = 0.0;
    for (int ch : cc.children) child_sum += sel_stab[static_cast<std::size_t>(ch)];
    if (cc.stability > child_sum) {
      cc.selected = true;
      sel_stab[c] = cc.stability;
    } else {
      sel_stab[c] = child_sum;
    }
  }
  // Deselect descendants of selected clusters, top-down (children have larger
  // ids than their parents by construction).
  std::vector<bool> suppressed(cluster_count, false);
  for (std::size_t c = 1; c < cluster_count; ++c) {
    if (suppressed[c]) res.clusters[c].selected = false;
    if (res.clusters[c].selected || suppressed[c]) {
      for (int ch : res.clusters[c].children) suppressed[static_cast<std::size_t>(ch)] = true;
    }
  }

  std::vector<int> labels(n, -1);
  for (std::size_t p = 0; p < n; ++p) {
    int c = res.point_cluster[p];
    while (c >= 0) {
      if (res.clusters[static_cast<std::size_t>(c)].selected) {
        labels[p] = c;
        break;
      }
      c = res.clusters[static_cast<std::size_t>(c)].parent;
    }
  }
  return labels;
}

}  // namespace

ClusterAssignment cluster(const Matrix& vectors, ClusterMethod method, const ClusterParams& params,
                          std::uint64_t seed) {
  check_rectangular(vectors);
  const auto n = static_cast<int>(vectors.size());
  ClusterAssignment out;
  out.method = to_string(method);

  if (method == ClusterMethod::DensityHier) {
    out.params["min_cluster_size"] = params.min_cluster_size;
    out.params["min_samples"] = params.min_samples;
    out.labels = density_hier(vectors, params.min_cluster_size, params.min_samples);
  } else {
    if (params.k < 1) throw std::invalid_argument("cluster count must be positive");
    if (params.k > n) {
      throw std::invalid_argument("cluster count " + std::to_string(params.k) +
                                  " exceeds the " + std::to_string(n) + " points");
    }
    out.params["k"] = params.k;
    switch (method) {
      case ClusterMethod::KmeansCosine:
        out.labels = kmeans_cosine(vectors, params.k, seed);
        break;
      case ClusterMethod::AggloAverage:
      case ClusterMethod::AggloComplete:
      case ClusterMethod::AggloWard:
        out.labels = agglomerative(vectors, params.k, method);
        break;
      default: {  // gaussian mixture
        MixtureModel model = fit_mixture(vectors, params.k, seed);
        auto resp = responsibilities(model, vectors);
        out.labels.resize(vectors.size());
        for (std::size_t i = 0; i < vectors.size(); ++i) {
          int arg = 0;
          for (int c = 1; c < model.components; ++c) {
            if (resp[i][static_cast<std::size_t>(c)] >
                resp[i][static_cast<std::size_t>(arg)]) {
              arg = c;
            }
          }
          out.labels[i] = arg;
        }
        break;
      }
    }
  }
  canonicalize(out.labels, out.k);
  return out;
}

namespace {

PartitionScores score_with_matrix(const Matrix& vectors, const std::vector<double>& dist,
                                  const std::vector<int>& labels) {
  const std::size_t n = vectors.size();
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] >= 0) members[labels[i]].push_back(i);
  }
  const std::size_t k = members.size();
  if (k < 2) throw std::invalid_argument("partition scores need at least two clusters");

  // Silhouette.
  double sil_sum = 0.0;
  std::size_t scored = 0;
  for (const auto& [ci, rows] : members) {
    for (std::size_t i : rows) {
      ++scored;
      if (rows.size() == 1) continue;  // singleton convention: s = 0
      double a = 0.0;
      for (std::size_t j : rows) {
        if (j != i) a += dist[i * n + j];
      }
      a /= static_cast<double>(rows.size() - 1);
      double b = std::numeric_limits<double>::infinity();
      for (const auto& [cj, other] : members) {
        if (cj == ci) continue;
        double mean = 0.0;
        for (std::size_t j : other) mean += dist[i * n + j];
        mean /= static_cast<double>(other.size());
        b = std::min(b, mean);
      }
      double denom = std::max(a, b);
      if (denom > 0.0) sil_sum += (b - a) / denom;  // max(a,b) = 0: s stays 0
    }
  }

  // Centroids for the variance-ratio and scatter indices.
  const std::size_t dims = vectors[0].size();
  std::vector<double> global(dims, 0.0);
  std::map<int, std::vector<double>> centroid;
  for (const auto& [ci, rows] : members) {
    std::vector<double> c(dims, 0.0);
    for (std::size_t i : rows) {
      for (std::size_t d2 = 0; d2 < dims; ++d2) {
        c[d2] += vectors[i][d2];
        global[d2] += vectors[i][d2];
      }
    }
    for (double& v : c) v /= static_cast<double>(rows.size());
    centroid[ci] = std::move(c);
  }
  for (double& v : global) v /= static_cast<double>(scored);

  double between = 0.0;
  double within = 0.0;
  for (const auto& [ci, rows] : members) {
    double dc = euclidean(centroid[ci], global);
    between += static_cast<double>(rows.size()) * dc * dc;
    for (std::size_t i : rows) {
      double dv = euclidean(vectors[i], centroid[ci]);
      within += dv * dv;
    }
  }

  PartitionScores out;
  out.silhouette = sil_sum / static_cast<double>(scored);
  double denom = within * static_cast<double>(k - 1);
  out.calinski_harabasz = denom > 0.0
                              ? between * static_cast<double>(scored - k) / denom
                              : std::numeric_limits<double>::infinity();

  // Davies-Bouldin: mean over clusters of the worst scatter-to-separation.
  std::vector<double> scatter;
  std::vector<int> ids;
  for (const auto& [ci, rows] : members) {
    double s = 0.0;
    for (std::size_t i : rows) s += euclidean(vectors[i], centroid[ci]);
    scatter.push_back(s / static_cast<double>(rows.size()));
    ids.push_back(ci);
  }
  double db = 0.0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    double worst = 0.0;
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (i == j) continue;
      double sep = euclidean(centroid[ids[i]], centroid[ids[j]]);
      double ratio = sep > 0.0 ? (scatter[i] + scatter[j]) / sep
                               : std::numeric_limits<double>::infinity();
      worst = std::max(worst, ratio);
    }
    db += worst;
  }
  out.davies_bouldin = db / static_cast<double>(ids.size());
  return out;
}

}  // namespace

PartitionScores score(const Matrix& vectors, const ClusterAssignment& assignment) {
  check_rectangular(vectors);
  if (assignment.labels.size() != vectors.size()) {
    throw std::invalid_argument("assignment and vectors are misaligned");
  }
  return score_with_matrix(vectors, distance_matrix(vectors), assignment.labels);
}

std::vector<SweepRow> sweep(const Matrix& vectors, const std::vector<ClusterMethod>& methods,
                            const std::vector<int>& ks, std::uint64_t seed) {
  check_rectangular(vectors);
  std::vector<double> dist = distance_matrix(vectors);
  std::vector<SweepRow> rows;
  for (ClusterMethod method : methods) {
    for (int k : ks) {
      ClusterParams params;
      params.k = k;
      if (method == ClusterMethod::DensityHier) params.min_cluster_size = k;
      try {
        ClusterAssignment assignment = cluster(vectors, method, params, seed);
        SweepRow row;
        row.method = to_string(method);
        row.k = k;
        row.scores = score_with_matrix(vectors, dist, assignment.labels);
        rows.push_back(row);
      } catch (const std::invalid_argument&) {
        // Undefined cell (k out of range or degenerate partition): skipped.
      }
    }
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  char buf[64];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "method,k,silhouette,calinski_harabasz,davies_bouldin\n";
  for (const auto& row : rows) {
    out << row.method << ',' << row.k << ',' << fmt(row.scores.silhouette) << ','
        << fmt(row.scores.calinski_harabasz) << ',' << fmt(row.scores.davies_bouldin) << '\n';
  }
  return out.str();
}

std::vector<ClusterReportEntry> decode_centroids(const ClusterAssignment& assignment,
                                                 const Matrix& vectors,
                                                 const std::vector<DayDocument>& docs,
                                                 const std::map<int, std::string>& descriptions,
                                                 const InfractionCodebook* codebook) {
  if (assignment.labels.size() != vectors.size() || docs.size() != vectors.size()) {
    throw std::invalid_argument("assignment, vectors and documents are misaligned");
  }
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (assignment.labels[i] >= 0) members[assignment.labels[i]].push_back(i);
  }
  std::vector<ClusterReportEntry> report;
  for (const auto& [cid, rows] : members) {
    ClusterReportEntry entry;
    entry.cluster = cid;
    entry.size = rows.size();
    std::size_t best = rows[0];
    double best_sim = -std::numeric_limits<double>::infinity();
    for (std::size_t i : rows) {
      double mean = 0.0;
      for (std::size_t j : rows) {
        if (j != i) mean += cosine_similarity(vectors[i], vectors[j]);
      }
      if (rows.size() > 1) mean /= static_cast<double>(rows.size() - 1);
      if (mean > best_sim) {
        best_sim = mean;
        best = i;
      }
    }
    entry.medoid = best;
    for (const auto& word : docs[best].words) {
      entry.medoid_decoded.push_back(decode_word(word, codebook));
    }
    auto it = descriptions.find(cid);
    entry.description = it != descriptions.end() ? it->second : "undescribed";
    report.push_back(std::move(entry));
  }
  return report;
}

std::map<int, std::vector<double>> cluster_centroids(const Matrix& vectors,
                                                     const ClusterAssignment& assignment) {
  if (assignment.labels.size() != vectors.size()) {
    throw std::invalid_argument("assignment and vectors are misaligned");
  }
  std::map<int, std::vector<double>> sums;
  std::map<int, std::size_t> counts;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    int label = assignment.labels[i];
    if (label < 0) continue;
    auto& sum = sums[label];
    if (sum.empty()) sum.assign(vectors[i].size(), 0.0);
    for (std::size_t d = 0; d < vectors[i].size(); ++d) sum[d] += vectors[i][d];
    ++counts[label];
  }
  for (auto& [label, sum] : sums) {
    for (double& v : sum) v /= static_cast<double>(counts[label]);
  }
  return sums;
}

int nearest_centroid(const std::map<int, std::vector<double>>& centroids,
                     const std::vector<double>& query) {
  if (centroids.empty()) throw std::invalid_argument("no centroids to compare against");
  int best = centroids.begin()->first;
  double best_sim = -std::numeric_limits<double>::infinity();
  for (const auto& [label, c] : centroids) {
    double sim = cosine_similarity(c, query);
    if (sim > best_sim) {
      best_sim = sim;
      best = label;
    }
  }
  return best;
}

}  // namespace hos
