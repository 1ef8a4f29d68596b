#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hos/day_encoder.hpp"

namespace hos {

enum class ClusterMethod {
  DensityHier,      // mutual-reachability MST with excess-of-mass selection
  GaussianMixture,  // EM mixture, hard assignment by max responsibility
  AggloAverage,
  AggloComplete,
  AggloWard,
  KmeansCosine,
};

std::string to_string(ClusterMethod m);
ClusterMethod cluster_method_from_string(const std::string& text);

struct ClusterParams {
  int k = 2;                  // target clusters for the k-accepting methods
  int min_cluster_size = 15;  // density method: smallest surviving cluster
  int min_samples = 5;        // density method: core-distance neighbor count
};

struct ClusterAssignment {
  std::vector<int> labels;  // per-vector cluster id; -1 marks noise
  int k = 0;                // distinct non-negative labels
  std::string method;
  std::map<std::string, double> params;
};

// Clusters the vectors. Only the density method may emit noise. Labels are
// canonical: clusters numbered by their first member's index. Throws
// std::invalid_argument on fewer than 2 vectors, k out of range, or the ward
// criterion over all-identical points.
ClusterAssignment cluster(const std::vector<std::vector<double>>& vectors, ClusterMethod method,
                          const ClusterParams& params, std::uint64_t seed);

struct PartitionScores {
  double silhouette = 0.0;         // in [-1, 1]; singleton clusters score 0
  double calinski_harabasz = 0.0;  // >= 0
  double davies_bouldin = 0.0;     // >= 0
};

// The three indices under Euclidean distance, noise excluded. Throws
// std::invalid_argument when fewer than two clusters remain.
PartitionScores score(const std::vector<std::vector<double>>& vectors,
                      const ClusterAssignment& assignment);

struct SweepRow {
  std::string method;
  int k = 0;
  PartitionScores scores;
};

// Cross-product evaluation of methods x k values. For the density method the
// k column is interpreted as min_cluster_size. Cells whose clustering or
// scoring is undefined (k exceeding the point count, a degenerate partition)
// are skipped rather than failing the sweep.
std::vector<SweepRow> sweep(const std::vector<std::vector<double>>& vectors,
                            const std::vector<ClusterMethod>& methods, const std::vector<int>& ks,
                            std::uint64_t seed);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

struct ClusterReportEntry {
  int cluster = 0;
  std::size_t size = 0;
  std::size_t medoid = 0;  // index into vectors/docs
  std::vector<DecodedWord> medoid_decoded;
  std::string description;
};

// Per-cluster medoid (maximal mean cosine similarity to the members, lowest
// index on ties) decoded to readable labels; descriptions come from the
// mapping with "undescribed" for missing ids. Noise points are not reported.
std::vector<ClusterReportEntry> decode_centroids(const ClusterAssignment& assignment,
                                                 const std::vector<std::vector<double>>& vectors,
                                                 const std::vector<DayDocument>& docs,
                                                 const std::map<int, std::string>& descriptions,
                                                 const InfractionCodebook* codebook = nullptr);

// Mean vector per cluster id (noise excluded), then the id of the centroid
// most cosine-similar to a query.
std::map<int, std::vector<double>> cluster_centroids(
    const std::vector<std::vector<double>>& vectors, const ClusterAssignment& assignment);
int nearest_centroid(const std::map<int, std::vector<double>>& centroids,
                     const std::vector<double>& query);

}  // namespace hos
