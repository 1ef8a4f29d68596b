#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hos/clustering.hpp"
#include "hos/day_encoder.hpp"
#include "hos/embedding.hpp"
#include "hos/labeller.hpp"

using namespace hos;

namespace {

using Matrix = std::vector<std::vector<double>>;

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Straight-from-the-definition partition indices, kept deliberately naive
// (O(n^2) pairwise work, no shared code with the library) so they can act as
// an oracle for score().
struct RefScores {
  double silhouette = 0.0;
  double calinski_harabasz = 0.0;
  double davies_bouldin = 0.0;
};

RefScores reference_scores(const Matrix& x, const std::vector<int>& labels) {
  std::map<int, std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (labels[i] >= 0) clusters[labels[i]].push_back(i);
  }
  const double k = static_cast<double>(clusters.size());

  // Silhouette: mean over points of (b - a) / max(a, b), singletons scoring 0.
  double sil = 0.0;
  double n_scored = 0.0;
  for (const auto& [ci, rows] : clusters) {
    for (std::size_t i : rows) {
      n_scored += 1.0;
      if (rows.size() < 2) continue;
      double a = 0.0;
      for (std::size_t j : rows)
        if (j != i) a += euclid(x[i], x[j]);
      a /= static_cast<double>(rows.size() - 1);
      double b = std::numeric_limits<double>::infinity();
      for (const auto& [cj, other] : clusters) {
        if (cj == ci) continue;
        double m = 0.0;
        for (std::size_t j : other) m += euclid(x[i], x[j]);
        b = std::min(b, m / static_cast<double>(other.size()));
      }
      if (std::max(a, b) > 0.0) sil += (b - a) / std::max(a, b);
    }
  }

  // Centroids.
  std::map<int, std::vector<double>> mu;
  std::vector<double> grand(x[0].size(), 0.0);
  for (const auto& [ci, rows] : clusters) {
    std::vector<double> c(x[0].size(), 0.0);
    for (std::size_t i : rows)
      for (std::size_t d = 0; d < c.size(); ++d) c[d] += x[i][d];
    for (double& v : c) v /= static_cast<double>(rows.size());
    mu[ci] = c;
  }
  for (const auto& [ci, rows] : clusters)
    for (std::size_t i : rows)
      for (std::size_t d = 0; d < grand.size(); ++d) grand[d] += x[i][d];
  for (double& v : grand) v /= n_scored;

  // Calinski-Harabasz: between/within variance ratio.
  double between = 0.0, within = 0.0;
  for (const auto& [ci, rows] : clusters) {
    double db = euclid(mu[ci], grand);
    between += static_cast<double>(rows.size()) * db * db;
    for (std::size_t i : rows) {
      double dw = euclid(x[i], mu[ci]);
      within += dw * dw;
    }
  }

  // Davies-Bouldin: mean worst scatter-to-separation ratio.
  double db_sum = 0.0;
  for (const auto& [ci, ri] : clusters) {
    double worst = 0.0;
    double si = 0.0;
    for (std::size_t i : ri) si += euclid(x[i], mu[ci]);
    si /= static_cast<double>(ri.size());
    for (const auto& [cj, rj] : clusters) {
      if (ci == cj) continue;
      double sj = 0.0;
      for (std::size_t j : rj) sj += euclid(x[j], mu[cj]);
      sj /= static_cast<double>(rj.size());
      worst = std::max(worst, (si + sj) / euclid(mu[ci], mu[cj]));
    }
    db_sum += worst;
  }

  RefScores out;
  out.silhouette = sil / n_scored;
  out.calinski_harabasz = between * (n_scored - k) / (within * (k - 1.0));
  out.davies_bouldin = db_sum / k;
  return out;
}

Matrix cone_corpus() {
  // Three tight direction bundles in 5 dimensions; magnitudes vary so the
  // cosine metric (not the norm) is what separates them.
  Matrix x;
  for (int b = 0; b < 3; ++b) {
    for (int j = 0; j < 8; ++j) {
      std::vector<double> v(5, 0.0);
      v[b] = 1.0 + 0.1 * j;
      v[(b + 1) % 5] += 0.01 * j;
      x.push_back(v);
    }
  }
  return x;
}

Matrix blob_and_noise_corpus() {
  std::mt19937 rng(99);
  std::normal_distribution<double> n01(0.0, 1.0);
  Matrix x;
  for (int i = 0; i < 20; ++i) x.push_back({0.05 * n01(rng), 0.05 * n01(rng)});
  for (int i = 0; i < 20; ++i) x.push_back({10 + 0.05 * n01(rng), 10 + 0.05 * n01(rng)});
  x.push_back({-15, 20});
  x.push_back({30, -10});
  x.push_back({15, 40});
  return x;
}

DriverLog make_log(const std::string& driver, Minutes start,
                   const std::vector<std::pair<ActivityKind, int>>& parts) {
  DriverLog log;
  log.driver_id = driver;
  Minutes at = start;
  for (const auto& [kind, minutes] : parts) {
    ActivityRecord r;
    r.driver_id = driver;
    r.start = at;
    r.end = at + minutes;
    r.duration_min = minutes;
    r.kind = kind;
    log.records.push_back(r);
    at = r.end;
  }
  return log;
}

}  // namespace

TEST_CASE("partition indices match a naive reference implementation") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 10 + static_cast<std::size_t>(trial) * 7;
    const std::size_t dims = 2 + trial % 5;
    const int k = 2 + trial % 4;
    Matrix x(n, std::vector<double>(dims));
    for (auto& row : x)
      for (double& v : row) v = coord(rng);

    ClusterAssignment a;
    a.k = k;
    a.labels.resize(n);
    for (int c = 0; c < k; ++c) a.labels[static_cast<std::size_t>(c)] = c;  // no empty cluster
    std::uniform_int_distribution<int> pick(0, k - 1);
    for (std::size_t i = static_cast<std::size_t>(k); i < n; ++i) a.labels[i] = pick(rng);
    if (trial % 3 == 0) a.labels[n - 1] = -1;  // noise must be excluded from every index

    PartitionScores got = score(x, a);
    RefScores want = reference_scores(x, a.labels);
    CHECK(got.silhouette == doctest::Approx(want.silhouette).epsilon(1e-9));
    CHECK(got.calinski_harabasz == doctest::Approx(want.calinski_harabasz).epsilon(1e-9));
    CHECK(got.davies_bouldin == doctest::Approx(want.davies_bouldin).epsilon(1e-9));
    CHECK(got.silhouette >= -1.0);
    CHECK(got.silhouette <= 1.0);
    CHECK(got.calinski_harabasz >= 0.0);
    CHECK(got.davies_bouldin >= 0.0);
  }
}

TEST_CASE("cosine k-means recovers direction bundles regardless of seed") {
  Matrix x = cone_corpus();
  ClusterParams params;
  params.k = 3;

  ClusterAssignment a = cluster(x, ClusterMethod::KmeansCosine, params, 9);
  std::vector<int> want;
  for (int b = 0; b < 3; ++b) want.insert(want.end(), 8, b);  // canonical: first member order
  CHECK(a.k == 3);
  CHECK(a.labels == want);
  CHECK(a.method == "kmeans_cosine");

  CHECK(cluster(x, ClusterMethod::KmeansCosine, params, 9).labels == a.labels);
  CHECK(cluster(x, ClusterMethod::KmeansCosine, params, 10).labels == a.labels);

  // Centroids are plain member means; queries snap to the nearest by cosine.
  auto centroids = cluster_centroids(x, a);
  REQUIRE(centroids.size() == 3);
  for (int b = 0; b < 3; ++b) {
    std::vector<double> mean(5, 0.0);
    for (int j = 0; j < 8; ++j)
      for (std::size_t d = 0; d < 5; ++d) mean[d] += x[static_cast<std::size_t>(b * 8 + j)][d];
    for (double& v : mean) v /= 8.0;
    for (std::size_t d = 0; d < 5; ++d)
      CHECK(centroids.at(b)[d] == doctest::Approx(mean[d]).epsilon(1e-12));
  }
  std::vector<double> query(5, 0.0);
  query[1] = 4.0;  // direction of bundle 1, different magnitude
  CHECK(nearest_centroid(centroids, query) == 1);
}

TEST_CASE("gaussian mixture splits two well separated blobs") {
  std::mt19937 rng(7);
  std::normal_distribution<double> n01(0.0, 1.0);
  Matrix x;
  for (int i = 0; i < 12; ++i) x.push_back({0.1 * n01(rng), 0.1 * n01(rng)});
  for (int i = 0; i < 12; ++i) x.push_back({5 + 0.1 * n01(rng), 5 + 0.1 * n01(rng)});
  ClusterParams params;
  params.k = 2;
  ClusterAssignment a = cluster(x, ClusterMethod::GaussianMixture, params, 3);
  std::vector<int> want(12, 0);
  want.insert(want.end(), 12, 1);
  CHECK(a.k == 2);
  CHECK(a.labels == want);
  CHECK(cluster(x, ClusterMethod::GaussianMixture, params, 3).labels == a.labels);
}

TEST_CASE("agglomerative linkages cut a hand-checkable dendrogram") {
  // 1-D points whose merge order is obvious: (0,1) then (10,11), leaving the
  // outlier alone at k=3 under every linkage.
  Matrix x = {{0.0}, {1.0}, {10.0}, {11.0}, {100.0}};
  ClusterParams params;
  params.k = 3;
  std::vector<int> want = {0, 0, 1, 1, 2};
  for (ClusterMethod m :
       {ClusterMethod::AggloAverage, ClusterMethod::AggloComplete, ClusterMethod::AggloWard}) {
    ClusterAssignment a = cluster(x, m, params, 1);
    CAPTURE(to_string(m));
    CHECK(a.k == 3);
    CHECK(a.labels == want);
  }

  // Ward on two gaussian blobs.
  std::mt19937 rng(11);
  std::normal_distribution<double> n01(0.0, 1.0);
  Matrix blobs;
  for (int i = 0; i < 10; ++i) blobs.push_back({0.2 * n01(rng), 0.2 * n01(rng)});
  for (int i = 0; i < 10; ++i) blobs.push_back({6 + 0.2 * n01(rng), 6 + 0.2 * n01(rng)});
  ClusterParams two;
  two.k = 2;
  ClusterAssignment a = cluster(blobs, ClusterMethod::AggloWard, two, 1);
  std::vector<int> blob_want(10, 0);
  blob_want.insert(blob_want.end(), 10, 1);
  CHECK(a.labels == blob_want);

  // Ward's variance objective has no footing when every point coincides.
  Matrix flat(4, {1.0, 1.0});
  CHECK_THROWS_AS(cluster(flat, ClusterMethod::AggloWard, two, 1), std::invalid_argument);
}

TEST_CASE("density clustering keeps blobs and rejects far strays as noise") {
  Matrix x = blob_and_noise_corpus();
  ClusterParams params;
  params.min_cluster_size = 5;
  params.min_samples = 3;
  ClusterAssignment a = cluster(x, ClusterMethod::DensityHier, params, 1);

  CHECK(a.k == 2);
  REQUIRE(a.labels.size() == 43);
  for (std::size_t i = 0; i < 20; ++i) CHECK(a.labels[i] == 0);
  for (std::size_t i = 20; i < 40; ++i) CHECK(a.labels[i] == 1);
  for (std::size_t i = 40; i < 43; ++i) CHECK(a.labels[i] == -1);

  // Scores ignore the noise points and reflect the clean separation.
  PartitionScores s = score(x, a);
  CHECK(s.silhouette == doctest::Approx(0.993748).epsilon(1e-4));
  CHECK(s.davies_bouldin < 0.1);
  CHECK(s.calinski_harabasz > 1000.0);
}

TEST_CASE("sweep skips unscorable cells instead of failing") {
  Matrix y = {{0, 0}, {0.1, 0}, {5, 5}, {5.1, 5}, {9, 0}, {9, 0.2}};
  auto rows =
      sweep(y, {ClusterMethod::AggloAverage, ClusterMethod::KmeansCosine}, {2, 3, 7}, 4);
  REQUIRE(rows.size() == 4);  // k=7 exceeds the point count in both methods
  CHECK(rows[0].method == "agglo_average");
  CHECK(rows[0].k == 2);
  CHECK(rows[1].method == "agglo_average");
  CHECK(rows[1].k == 3);
  CHECK(rows[2].method == "kmeans_cosine");
  CHECK(rows[2].k == 2);
  CHECK(rows[3].method == "kmeans_cosine");
  CHECK(rows[3].k == 3);

  std::string csv = sweep_to_csv(rows);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "method,k,silhouette,calinski_harabasz,davies_bouldin");
  int data_lines = 0;
  for (std::string line; std::getline(lines, line);)
    if (!line.empty()) ++data_lines;
  CHECK(data_lines == 4);

  // For the density method the k column carries min_cluster_size; a floor
  // larger than any candidate cluster leaves nothing scorable.
  Matrix x = blob_and_noise_corpus();
  auto drows = sweep(x, {ClusterMethod::DensityHier}, {5, 41}, 1);
  REQUIRE(drows.size() == 1);
  CHECK(drows[0].method == "density_hier");
  CHECK(drows[0].k == 5);
  CHECK(drows[0].scores.silhouette == doctest::Approx(0.993748).epsilon(1e-4));
}

TEST_CASE("medoid decoding names clusters, falls back on undescribed, skips noise") {
  Matrix x = {{1, 0, 0},   {1, 0, 0},      {0, 1, 0},    // tie: lowest index wins
              {0, 0, 1},   {0, 0.1, 0.99},               // two members always tie
              {1, 1, 0},   {0.8, 1, 0},    {0.6, 1, 0},  // fan: middle direction wins
              {-1, -1, -1}};
  ClusterAssignment a;
  a.labels = {0, 0, 0, 1, 1, 2, 2, 2, -1};
  a.k = 3;

  std::vector<DayDocument> docs(9);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    docs[i].driver = "d";
    docs[i].week = 1;
    docs[i].day = static_cast<int>(i) + 1;
    docs[i].words = {"0|0|0|0"};
  }
  docs[0].words = {"0|0|0|0", "2|0|0|5"};      // Driving + full daily rest
  docs[3].legal = false;
  docs[3].words = {"0|2|3|11|2"};              // unparsed driving, frozen infraction code
  docs[6].words = {"2|1|1|3"};                 // split break on an extended day

  std::map<int, std::string> descriptions = {{0, "standard full-rest day"},
                                             {2, "split-break day"}};
  auto entries = decode_centroids(a, x, docs, descriptions);
  REQUIRE(entries.size() == 3);

  CHECK(entries[0].cluster == 0);
  CHECK(entries[0].size == 3);
  CHECK(entries[0].medoid == 0);
  CHECK(entries[0].description == "standard full-rest day");
  REQUIRE(entries[0].medoid_decoded.size() == 2);
  CHECK(entries[0].medoid_decoded[0].kind == ActivityKind::Driving);
  CHECK(entries[0].medoid_decoded[0].day_type == DayType::Ndd);
  CHECK(entries[0].medoid_decoded[0].break_type == BreakStyle::Uninterrupted);
  CHECK(entries[0].medoid_decoded[0].token == Token::A);
  CHECK(entries[0].medoid_decoded[0].infraction.empty());
  CHECK(entries[0].medoid_decoded[1].kind == ActivityKind::Break);
  CHECK(entries[0].medoid_decoded[1].token == Token::DR_T1);

  CHECK(entries[1].cluster == 1);
  CHECK(entries[1].size == 2);
  CHECK(entries[1].medoid == 3);
  CHECK(entries[1].description == "undescribed");
  REQUIRE(entries[1].medoid_decoded.size() == 1);
  CHECK(entries[1].medoid_decoded[0].day_type == DayType::Unknown);
  CHECK(entries[1].medoid_decoded[0].token == Token::Unknown);
  CHECK(entries[1].medoid_decoded[0].infraction == "Surpassed NDD driving time");

  CHECK(entries[2].cluster == 2);
  CHECK(entries[2].medoid == 6);
  CHECK(entries[2].description == "split-break day");
  CHECK(entries[2].medoid_decoded[0].kind == ActivityKind::Break);
  CHECK(entries[2].medoid_decoded[0].day_type == DayType::Edd);
  CHECK(entries[2].medoid_decoded[0].break_type == BreakStyle::Split1);
  CHECK(entries[2].medoid_decoded[0].token == Token::B_T2);

  // A custom infraction code resolves only through an extended codebook.
  InfractionCodebook book;
  LabeledActivity custom;
  custom.infraction = "tampered record";
  book.extend({custom});
  docs[3].words = {"0|2|3|11|7"};
  auto with_book = decode_centroids(a, x, docs, descriptions, &book);
  CHECK(with_book[1].medoid_decoded[0].infraction == "tampered record");
  CHECK_THROWS_AS(decode_centroids(a, x, docs, descriptions), InputError);
}

TEST_CASE("labelled days embed and cluster into decodable schedule groups") {
  // Two schedule shapes, three drivers each: a plain day closed by a full
  // daily rest, and a split-break day. The pipeline is the real one:
  // label -> encode -> embed -> cluster -> decode.
  RegulationParameters params;
  std::vector<DayDocument> corpus;
  InfractionCodebook codebook;
  for (int i = 0; i < 3; ++i) {
    DriverLog plain = make_log("plain" + std::to_string(i), 0,
                               {{ActivityKind::Driving, 270},
                                {ActivityKind::Break, 45},
                                {ActivityKind::Driving, 270},
                                {ActivityKind::Break, 660}});
    DriverLog split = make_log("split" + std::to_string(i), 0,
                               {{ActivityKind::Driving, 150},
                                {ActivityKind::Break, 15},
                                {ActivityKind::Driving, 100},
                                {ActivityKind::Break, 30},
                                {ActivityKind::Driving, 240},
                                {ActivityKind::Break, 660}});
    for (const DriverLog& log : {plain, split}) {
      EncodedCorpora enc = encode_corpus(label_log(log, params));
      REQUIRE(enc.illegal.empty());
      REQUIRE(enc.legal.size() == 1);
      corpus.push_back(enc.legal[0]);
    }
  }

  EmbeddingHyperparams hp;
  hp.dims = 8;
  hp.epochs = 10;
  EmbeddingModel model = train_embedding(corpus, 21, hp);

  ClusterParams cp;
  cp.k = 2;
  ClusterAssignment a = cluster(model.doc_vectors, ClusterMethod::AggloWard, cp, 21);
  CHECK(a.k == 2);
  // Same-content days must co-cluster: plain docs at even indices, split at odd.
  for (std::size_t i = 2; i < corpus.size(); i += 2) CHECK(a.labels[i] == a.labels[0]);
  for (std::size_t i = 3; i < corpus.size(); i += 2) CHECK(a.labels[i] == a.labels[1]);
  CHECK(a.labels[0] != a.labels[1]);

  auto entries = decode_centroids(a, model.doc_vectors, corpus, {}, &codebook);
  REQUIRE(entries.size() == 2);
  // The plain schedule decodes to driving/break words ending in a full rest.
  const auto& plain_words = entries[0].medoid_decoded;
  REQUIRE(plain_words.size() == 4);
  CHECK(plain_words[0].kind == ActivityKind::Driving);
  CHECK(plain_words[0].token == Token::A);
  CHECK(plain_words[1].token == Token::B_T1);
  CHECK(plain_words[3].token == Token::DR_T1);
  for (const auto& w : plain_words) CHECK(w.day_type == DayType::Ndd);
  // The split schedule carries the two half-break tokens.
  const auto& split_words = entries[1].medoid_decoded;
  REQUIRE(split_words.size() == 6);
  CHECK(split_words[1].token == Token::B_T2);
  CHECK(split_words[1].break_type == BreakStyle::Split1);
  CHECK(split_words[3].token == Token::B_T3);
  CHECK(split_words[3].break_type == BreakStyle::Split2);
  CHECK(split_words[5].token == Token::DR_T1);
}

TEST_CASE("method names round-trip and errors carry invalid_argument") {
  for (ClusterMethod m : {ClusterMethod::DensityHier, ClusterMethod::GaussianMixture,
                          ClusterMethod::AggloAverage, ClusterMethod::AggloComplete,
                          ClusterMethod::AggloWard, ClusterMethod::KmeansCosine}) {
    CHECK(cluster_method_from_string(to_string(m)) == m);
  }
  CHECK(to_string(ClusterMethod::DensityHier) == "density_hier");
  CHECK(to_string(ClusterMethod::KmeansCosine) == "kmeans_cosine");
  CHECK_THROWS_AS(cluster_method_from_string("voronoi"), std::invalid_argument);

  ClusterParams params;
  params.k = 2;
  Matrix one = {{1.0, 2.0}};
  CHECK_THROWS_AS(cluster(one, ClusterMethod::KmeansCosine, params, 1), std::invalid_argument);
  Matrix ragged = {{1.0, 2.0}, {1.0}};
  CHECK_THROWS_AS(cluster(ragged, ClusterMethod::KmeansCosine, params, 1),
                  std::invalid_argument);
  Matrix x = {{0, 0}, {1, 0}, {0, 1}};
  ClusterParams zero;
  zero.k = 0;
  CHECK_THROWS_AS(cluster(x, ClusterMethod::AggloAverage, zero, 1), std::invalid_argument);
  ClusterParams big;
  big.k = 4;
  CHECK_THROWS_AS(cluster(x, ClusterMethod::AggloAverage, big, 1), std::invalid_argument);

  ClusterAssignment single;
  single.labels = {0, 0, 0};
  single.k = 1;
  CHECK_THROWS_AS(score(x, single), std::invalid_argument);
  ClusterAssignment short_labels;
  short_labels.labels = {0, 1};
  short_labels.k = 2;
  CHECK_THROWS_AS(score(x, short_labels), std::invalid_argument);
  CHECK_THROWS_AS(decode_centroids(short_labels, x, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(nearest_centroid({}, {1.0, 0.0}), std::invalid_argument);
}
