#include "hos/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hos/rng.hpp"

namespace hos {

namespace {

std::uint64_t content_hash(const DayDocument& doc) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& w : doc.words) {
    for (char ch : w) {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ull;
    }
    h ^= '\n';
    h *= 1099511628211ull;
  }
  return h;
}

double sigmoid(double x) {
  if (x > 30.0) return 1.0;
  if (x < -30.0) return 0.0;
  return 1.0 / (1.0 + std::exp(-x));
}

// Cumulative unigram^0.75 sampling table over word ids.
struct NegativeTable {
  std::vector<double> cumulative;

  explicit NegativeTable(const std::vector<std::int64_t>& counts) {
    cumulative.resize(counts.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      acc += std::pow(static_cast<double>(counts[i]), 0.75);
      cumulative[i] = acc;
    }
  }

  std::size_t sample(Rng& rng) const {
    double ticket = rng.next_double() * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), ticket);
    if (it == cumulative.end()) return cumulative.size() - 1;
    return static_cast<std::size_t>(it - cumulative.begin());
  }
};

// One SGD pass of a document vector against the word output matrix.
// update_words toggles training vs frozen-vocabulary inference.
void train_document(std::vector<double>& doc_vec, std::vector<std::vector<double>>& word_vecs,
                    const std::vector<std::size_t>& word_ids, const NegativeTable& table,
                    Rng& rng, double lr, int negatives, bool update_words) {
  const std::size_t dims = doc_vec.size();
  std::vector<double> grad(dims);
  for (std::size_t target : word_ids) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (int n = 0; n <= negatives; ++n) {
      std::size_t word = target;
      double label = 1.0;
      if (n > 0) {
        word = table.sample(rng);
        if (word == target) continue;  // resampling would skew the stream
        label = 0.0;
      }
      std::vector<double>& row = word_vecs[word];
      double dot = 0.0;
      for (std::size_t d = 0; d < dims; ++d) dot += doc_vec[d] * row[d];
      double g = (label - sigmoid(dot)) * lr;
      for (std::size_t d = 0; d < dims; ++d) {
        grad[d] += g * row[d];
        if (update_words) row[d] += g * doc_vec[d];
      }
    }
    for (std::size_t d = 0; d < dims; ++d) doc_vec[d] += grad[d];
  }
}

std::vector<double> seeded_init(std::size_t dims, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(dims);
  for (auto& x : v) x = (rng.next_double() - 0.5) / static_cast<double>(dims);
  return v;
}

double decayed_lr(double lr0, std::int64_t step, std::int64_t total) {
  double remaining = 1.0 - static_cast<double>(step) / static_cast<double>(total);
  return lr0 * std::max(remaining, 1e-4);
}

}  // namespace

EmbeddingModel train_embedding(const std::vector<DayDocument>& corpus, std::uint64_t seed,
                               const EmbeddingHyperparams& params) {
  if (corpus.empty()) throw std::invalid_argument("embedding corpus holds no documents");
  if (params.dims < 2) throw std::invalid_argument("embedding needs at least two dimensions");
  for (const auto& doc : corpus) {
    if (doc.words.empty()) {
      throw std::invalid_argument("document " + doc.driver + "," + std::to_string(doc.week) +
                                  "," + std::to_string(doc.day) + " holds no words");
    }
  }

  EmbeddingModel model;
  model.params = params;
  model.seed = seed;

  // Vocabulary in sorted order so word ids never depend on corpus order.
  std::map<std::string, std::int64_t> counts;
  for (const auto& doc : corpus) {
    for (const auto& w : doc.words) ++counts[w];
  }
  std::map<std::string, std::size_t> index;
  for (const auto& [word, count] : counts) {
    index.emplace(word, model.vocabulary.size());
    model.vocabulary.push_back(word);
    model.word_counts.push_back(count);
  }

  // Canonical training order: (driver, week, day), then content for stability.
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&corpus](std::size_t a, std::size_t b) {
    const DayDocument& da = corpus[a];
    const DayDocument& db = corpus[b];
    if (da.driver != db.driver) return da.driver < db.driver;
    if (da.week != db.week) return da.week < db.week;
    if (da.day != db.day) return da.day < db.day;
    return da.words < db.words;
  });

  model.word_vectors.assign(model.vocabulary.size(), std::vector<double>(params.dims, 0.0));
  model.doc_vectors.resize(corpus.size());
  model.doc_keys.resize(corpus.size());

  std::vector<std::vector<std::size_t>> word_ids(corpus.size());
  std::vector<Rng> doc_rngs;
  doc_rngs.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const DayDocument& doc = corpus[i];
    word_ids[i].reserve(doc.words.size());
    for (const auto& w : doc.words) word_ids[i].push_back(index.at(w));
    std::uint64_t h = content_hash(doc);
    model.doc_vectors[i] = seeded_init(params.dims, derive_seed(seed, h));
    model.doc_keys[i] =
        doc.driver + "," + std::to_string(doc.week) + "," + std::to_string(doc.day);
    doc_rngs.emplace_back(derive_seed(seed ^ 0x5851f42d4c957f2dull, h));
  }

  NegativeTable table(model.word_counts);
  const std::int64_t total_steps =
      static_cast<std::int64_t>(params.epochs) * static_cast<std::int64_t>(corpus.size());
  std::int64_t step = 0;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      std::size_t di = order[pos];
      double lr = decayed_lr(params.learning_rate, step, total_steps);
      train_document(model.doc_vectors[di], model.word_vectors, word_ids[di], table,
                     doc_rngs[di], lr, params.negatives, /*update_words=*/true);
      ++step;
    }
  }
  return model;
}

std::vector<double> infer_vector(const EmbeddingModel& model, const DayDocument& doc,
                                 std::uint64_t seed) {
  if (doc.words.empty()) throw std::invalid_argument("document holds no words");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < model.vocabulary.size(); ++i) index.emplace(model.vocabulary[i], i);
  std::vector<std::size_t> ids;
  ids.reserve(doc.words.size());
  for (const auto& w : doc.words) {
    auto it = index.find(w);
    if (it == index.end()) {
      throw std::invalid_argument("word \"" + w + "\" is not in the model vocabulary");
    }
    ids.push_back(it->second);
  }
  std::uint64_t h = content_hash(doc);
  std::vector<double> vec = seeded_init(model.params.dims, derive_seed(model.seed ^ seed, h));
  Rng rng(derive_seed((model.seed ^ seed) + 0x9e3779b97f4a7c15ull, h));
  NegativeTable table(model.word_counts);
  // The output matrix stays frozen during inference.
  auto frozen = model.word_vectors;
  for (int epoch = 0; epoch < model.params.infer_epochs; ++epoch) {
    double lr = decayed_lr(model.params.learning_rate, epoch, model.params.infer_epochs);
    train_document(vec, frozen, ids, table, rng, lr, model.params.negatives,
                   /*update_words=*/false);
  }
  return vec;
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("cosine of unequal-width vectors");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_vector(std::ostream& out, const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out << ' ';
    out << format_double(v[i]);
  }
  out << '\n';
}

std::vector<double> read_vector(std::istream& in, std::size_t dims, const char* what) {
  std::vector<double> v(dims);
  for (std::size_t i = 0; i < dims; ++i) {
    if (!(in >> v[i])) throw InputError(std::string("truncated ") + what + " vector");
  }
  return v;
}

}  // namespace

void write_model(const EmbeddingModel& model, std::ostream& out) {
  out << "hosvec 1\n";
  out << "dims " << model.params.dims << " epochs " << model.params.epochs << " negatives "
      << model.params.negatives << " learning_rate " << format_double(model.params.learning_rate)
      << " infer_epochs " << model.params.infer_epochs << " seed " << model.seed << '\n';
  out << "vocab " << model.vocabulary.size() << '\n';
  for (std::size_t i = 0; i < model.vocabulary.size(); ++i) {
    out << model.vocabulary[i] << ' ' << model.word_counts[i] << '\n';
    write_vector(out, model.word_vectors[i]);
  }
  out << "docs " << model.doc_vectors.size() << '\n';
  for (std::size_t i = 0; i < model.doc_vectors.size(); ++i) {
    out << model.doc_keys[i] << '\n';
    write_vector(out, model.doc_vectors[i]);
  }
}

EmbeddingModel read_model(std::istream& in) {
  EmbeddingModel model;
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "hosvec" || version != 1) {
    throw InputError("not a version-1 embedding model file");
  }
  std::string key;
  auto expect = [&in, &key](const char* name) {
    if (!(in >> key) || key != name) {
      throw InputError(std::string("embedding model: expected \"") + name + "\"");
    }
  };
  expect("dims");
  in >> model.params.dims;
  expect("epochs");
  in >> model.params.epochs;
  expect("negatives");
  in >> model.params.negatives;
  expect("learning_rate");
  in >> model.params.learning_rate;
  expect("infer_epochs");
  in >> model.params.infer_epochs;
  expect("seed");
  in >> model.seed;
  expect("vocab");
  std::size_t vocab = 0;
  if (!(in >> vocab)) throw InputError("embedding model: bad vocabulary count");
  for (std::size_t i = 0; i < vocab; ++i) {
    std::string word;
    std::int64_t count = 0;
    if (!(in >> word >> count)) throw InputError("embedding model: truncated vocabulary");
    model.vocabulary.push_back(word);
    model.word_counts.push_back(count);
    model.word_vectors.push_back(read_vector(in, model.params.dims, "word"));
  }
  expect("docs");
  std::size_t docs = 0;
  if (!(in >> docs)) throw InputError("embedding model: bad document count");
  in >> std::ws;
  for (std::size_t i = 0; i < docs; ++i) {
    std::string doc_key;
    if (!std::getline(in, doc_key) || doc_key.empty()) {
      throw InputError("embedding model: truncated document keys");
    }
    model.doc_keys.push_back(doc_key);
    model.doc_vectors.push_back(read_vector(in, model.params.dims, "document"));
    in >> std::ws;
  }
  return model;
}

}  // namespace hos
