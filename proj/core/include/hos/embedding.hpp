#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hos/day_encoder.hpp"

namespace hos {

struct EmbeddingHyperparams {
  std::size_t dims = 200;
  int epochs = 40;
  int negatives = 5;
  double learning_rate = 0.025;  // linearly decayed over all (epoch, document) steps
  int infer_epochs = 40;

  bool operator==(const EmbeddingHyperparams&) const = default;
};

// Distributed bag-of-words paragraph vectors: each document's vector is
// trained to score its own words above negative-sampled ones. Word vectors
// are the shared output matrix (zero-initialized); document vectors start
// from a content-derived state so identical documents stay aligned.
struct EmbeddingModel {
  EmbeddingHyperparams params;
  std::uint64_t seed = 0;
  std::vector<std::string> vocabulary;          // sorted; row index = word id
  std::vector<std::int64_t> word_counts;        // corpus frequencies (negative table)
  std::vector<std::vector<double>> word_vectors;  // |V| x dims
  std::vector<std::vector<double>> doc_vectors;   // aligned with the input corpus order
  std::vector<std::string> doc_keys;              // "driver,week,day" per document
};

// Trains on the corpus in canonical (driver, week, day) order regardless of
// input order; doc_vectors are emitted in the input order. Throws
// std::invalid_argument on an empty corpus or a document with no words.
EmbeddingModel train_embedding(const std::vector<DayDocument>& corpus, std::uint64_t seed,
                               const EmbeddingHyperparams& params = {});

// Fresh vector for one document against frozen word vectors. Throws
// std::invalid_argument when the document uses a word outside the model
// vocabulary.
std::vector<double> infer_vector(const EmbeddingModel& model, const DayDocument& doc,
                                 std::uint64_t seed);

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

// Versioned textual dump ("hosvec 1"): hyperparameters, vocabulary with
// counts, word matrix, then per-document key/vector pairs. Round-trips
// byte-exactly.
void write_model(const EmbeddingModel& model, std::ostream& out);
EmbeddingModel read_model(std::istream& in);

}  // namespace hos
