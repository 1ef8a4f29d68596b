#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hos/day_encoder.hpp"
#include "hos/embedding.hpp"

using namespace hos;

namespace {

DayDocument doc(const std::string& driver, int week, int day,
                std::vector<std::string> words) {
  DayDocument d;
  d.driver = driver;
  d.week = week;
  d.day = day;
  d.words = std::move(words);
  return d;
}

// Two well-separated "languages": documents built from disjoint vocabularies.
std::vector<DayDocument> two_language_corpus(int per_side) {
  std::vector<DayDocument> corpus;
  for (int i = 0; i < per_side; ++i) {
    corpus.push_back(doc("a", 1, i + 1, {"0|0|0|0", "1|0|0|0", "2|0|0|1"}));
    corpus.push_back(doc("b", 1, i + 1, {"0|1|2|5", "1|1|2|6", "2|1|2|7"}));
  }
  return corpus;
}

EmbeddingHyperparams small_params() {
  EmbeddingHyperparams hp;
  hp.dims = 16;
  hp.epochs = 30;
  return hp;
}

}  // namespace

TEST_CASE("training is deterministic for a fixed seed") {
  auto corpus = two_language_corpus(5);
  EmbeddingModel m1 = train_embedding(corpus, 99, small_params());
  EmbeddingModel m2 = train_embedding(corpus, 99, small_params());
  std::ostringstream d1, d2;
  write_model(m1, d1);
  write_model(m2, d2);
  CHECK(d1.str() == d2.str());

  EmbeddingModel m3 = train_embedding(corpus, 100, small_params());
  std::ostringstream d3;
  write_model(m3, d3);
  CHECK(d1.str() != d3.str());
}

TEST_CASE("document order does not change the embedding of a document") {
  auto corpus = two_language_corpus(4);
  EmbeddingModel forward = train_embedding(corpus, 7, small_params());

  auto reversed = corpus;
  std::reverse(reversed.begin(), reversed.end());
  EmbeddingModel backward = train_embedding(reversed, 7, small_params());

  // match documents by key and compare vectors exactly
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto it = std::find(backward.doc_keys.begin(), backward.doc_keys.end(), forward.doc_keys[i]);
    REQUIRE(it != backward.doc_keys.end());
    std::size_t j = static_cast<std::size_t>(it - backward.doc_keys.begin());
    CHECK(forward.doc_vectors[i] == backward.doc_vectors[j]);
  }
}

TEST_CASE("documents with identical content collapse to effectively one point") {
  std::vector<DayDocument> corpus = {
      doc("a", 1, 1, {"0|0|0|0", "1|0|0|0"}),
      doc("b", 2, 3, {"0|0|0|0", "1|0|0|0"}),  // same content, different key
      doc("c", 1, 1, {"0|1|2|5", "1|1|2|6"}),
  };
  EmbeddingModel model = train_embedding(corpus, 5, small_params());
  // Same words mean same starting point and same noise draws; only the
  // schedule position differs, so the pair stays orders of magnitude tighter
  // than any cross-content distance.
  auto gap = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
  };
  CHECK(cosine_similarity(model.doc_vectors[0], model.doc_vectors[1]) > 0.9999);
  double twin_gap = gap(model.doc_vectors[0], model.doc_vectors[1]);
  double cross_gap = gap(model.doc_vectors[0], model.doc_vectors[2]);
  CHECK(twin_gap < 0.05 * cross_gap);
  CHECK(model.doc_vectors[0] != model.doc_vectors[2]);
}

TEST_CASE("disjoint languages separate in cosine similarity") {
  auto corpus = two_language_corpus(10);
  EmbeddingHyperparams hp;
  hp.dims = 32;
  hp.epochs = 40;
  EmbeddingModel model = train_embedding(corpus, 11, hp);

  double within = 0.0, between = 0.0;
  int nw = 0, nb = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i + 1; j < corpus.size(); ++j) {
      double s = cosine_similarity(model.doc_vectors[i], model.doc_vectors[j]);
      if (corpus[i].driver == corpus[j].driver) {
        within += s;
        ++nw;
      } else {
        between += s;
        ++nb;
      }
    }
  }
  within /= nw;
  between /= nb;
  CHECK(within > between + 0.1);

  // The property clustering actually relies on: every document's nearest
  // neighbour (by cosine) speaks the same language.
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    double best = -2.0;
    std::size_t best_j = i;
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      if (j == i) continue;
      double s = cosine_similarity(model.doc_vectors[i], model.doc_vectors[j]);
      if (s > best) {
        best = s;
        best_j = j;
      }
    }
    CHECK(corpus[best_j].driver == corpus[i].driver);
  }
}

TEST_CASE("inference places a known document near its trained twin") {
  auto corpus = two_language_corpus(8);
  EmbeddingModel model = train_embedding(corpus, 13, small_params());

  DayDocument probe = corpus[0];  // an "a"-language day
  std::vector<double> v = infer_vector(model, probe, 77);
  double to_a = cosine_similarity(v, model.doc_vectors[0]);
  double to_b = cosine_similarity(v, model.doc_vectors[1]);
  CHECK(to_a > to_b);

  DayDocument alien = doc("x", 1, 1, {"3|2|3|9"});
  CHECK_THROWS_AS(infer_vector(model, alien, 1), std::invalid_argument);
}

TEST_CASE("the model dump round-trips byte-exactly") {
  auto corpus = two_language_corpus(3);
  EmbeddingModel model = train_embedding(corpus, 21, small_params());

  std::ostringstream out;
  write_model(model, out);
  std::istringstream in(out.str());
  EmbeddingModel back = read_model(in);

  CHECK(back.params == model.params);
  CHECK(back.seed == model.seed);
  CHECK(back.vocabulary == model.vocabulary);
  CHECK(back.word_counts == model.word_counts);
  CHECK(back.word_vectors == model.word_vectors);
  CHECK(back.doc_vectors == model.doc_vectors);
  CHECK(back.doc_keys == model.doc_keys);

  std::ostringstream again;
  write_model(back, again);
  CHECK(again.str() == out.str());

  // version line guards the format
  CHECK(out.str().rfind("hosvec 1", 0) == 0);
  std::istringstream wrong("hosvec 2\n");
  CHECK_THROWS(read_model(wrong));
}

TEST_CASE("degenerate corpora are rejected") {
  CHECK_THROWS_AS(train_embedding({}, 1, small_params()), std::invalid_argument);
  std::vector<DayDocument> empty_doc = {doc("a", 1, 1, {})};
  CHECK_THROWS_AS(train_embedding(empty_doc, 1, small_params()), std::invalid_argument);
}
