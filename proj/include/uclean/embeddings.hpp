// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "uclean/corpus.hpp"
#include "uclean/rng.hpp"

namespace uclean {

// Thrown for malformed input files; carries path and line diagnostics.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainConfig {
  int window = 3;
  int dim = 100;
  int negative_samples = 5;
  int epochs = 5;
  double initial_lr = 0.025;  // linear decay to 1e-4 of the initial value
  int min_count = 0;          // 0 = auto: 5, or 1 for corpora under 100k tokens
  bool subsample = false;
  double subsample_threshold = 1e-3;
  std::uint64_t seed = 1;
};

namespace sgns {

// Row-major parameter matrix; rows are word vectors.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double* row(std::size_t i) { return a.data() + i * cols; }
  const double* row(std::size_t i) const { return a.data() + i * cols; }
};

// One training example: an input word scored against output rows with
// binary labels (the positive context and the sampled negatives).
struct Example {
  std::size_t input = 0;
  std::vector<std::pair<std::size_t, int>> outputs;
};

inline double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Numerically safe log(sigmoid(x)).
inline double log_sigmoid(double x) {
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

// Negative-sampling objective for one example:
//   L = -sum_o [ y_o * log s(u_o . v) + (1 - y_o) * log s(-u_o . v) ]
inline double loss(const Matrix& in, const Matrix& out, const Example& ex) {
  const double* v = in.row(ex.input);
  double l = 0.0;
  for (const auto& [o, label] : ex.outputs) {
    double d = dot(v, out.row(o), in.cols);
    l -= label ? log_sigmoid(d) : log_sigmoid(-d);
  }
  return l;
}

// Analytic gradients of the loss above, evaluated at the current
// parameters. grad_input has in.cols entries; grad_outputs one row per
// output in example order. Returns the loss.
inline double gradients(const Matrix& in, const Matrix& out,
                        const Example& ex, std::vector<double>& grad_input,
                        std::vector<std::vector<double>>& grad_outputs) {
  const std::size_t n = in.cols;
  const double* v = in.row(ex.input);
  grad_input.assign(n, 0.0);
  grad_outputs.assign(ex.outputs.size(), std::vector<double>(n, 0.0));
  double l = 0.0;
  for (std::size_t k = 0; k < ex.outputs.size(); ++k) {
    auto [o, label] = ex.outputs[k];
    const double* u = out.row(o);
    double d = dot(v, u, n);
    l -= label ? log_sigmoid(d) : log_sigmoid(-d);
    double g = sigmoid(d) - static_cast<double>(label);  // dL/d(u.v)
    for (std::size_t i = 0; i < n; ++i) {
      grad_outputs[k][i] = g * v[i];
      grad_input[i] += g * u[i];
    }
  }
  return l;
}

// One SGD step; gradients are computed at the current parameters and
// applied afterwards, so output updates see the pre-step input vector.
inline void step(Matrix& in, Matrix& out, const Example& ex, double lr) {
  const std::size_t n = in.cols;
  double* v = in.row(ex.input);
  thread_local std::vector<double> acc;
  acc.assign(n, 0.0);
  for (const auto& [o, label] : ex.outputs) {
    double* u = out.row(o);
    double g = sigmoid(dot(v, u, n)) - static_cast<double>(label);
    for (std::size_t i = 0; i < n; ++i) {
      acc[i] += g * u[i];
      u[i] -= lr * g * v[i];
    }
  }
  for (std::size_t i = 0; i < n; ++i) v[i] -= lr * acc[i];
}

}  // namespace sgns

class EmbeddingModel {
 public:
  EmbeddingModel() = default;

  EmbeddingModel(std::vector<std::string> vocab,
                 std::vector<std::vector<double>> vectors, int min_count = 1)
      : vocab_(std::move(vocab)), min_count_(min_count) {
    if (vectors.size() != vocab_.size())
      throw std::invalid_argument("embedding model: vocab/vector mismatch");
    dim_ = vectors.empty() ? 0 : static_cast<int>(vectors[0].size());
    data_.reserve(vocab_.size() * static_cast<std::size_t>(dim_));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (static_cast<int>(vectors[i].size()) != dim_)
        throw std::invalid_argument("embedding model: ragged vectors");
      data_.insert(data_.end(), vectors[i].begin(), vectors[i].end());
      if (!index_.emplace(vocab_[i], i).second)
        throw std::invalid_argument("embedding model: duplicate word " +
                                    vocab_[i]);
    }
  }

  int dim() const { return dim_; }
  int min_count() const { return min_count_; }
  std::size_t size() const { return vocab_.size(); }
  const std::vector<std::string>& vocab() const { return vocab_; }
  bool contains(const std::string& w) const { return index_.count(w) > 0; }

  const double* vector(const std::string& w) const {
    auto it = index_.find(w);
    if (it == index_.end())
      throw std::out_of_range("embedding model: out-of-vocabulary word: " + w);
    return data_.data() + it->second * static_cast<std::size_t>(dim_);
  }

  double cosine(const std::string& w1, const std::string& w2) const {
    return cosine_raw(vector(w1), vector(w2));
  }

  // Top-k neighbors by cosine, excluding the query word itself.
  // Ties break toward the lexicographically smaller word.
  std::vector<std::pair<std::string, double>> knn(const std::string& w,
                                                  int k) const {
    if (k < 1) throw std::invalid_argument("knn: k must be >= 1");
    const double* v = vector(w);
    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(vocab_.size());
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
      if (vocab_[i] == w) continue;
      scored.emplace_back(
          vocab_[i],
          cosine_raw(v, data_.data() + i * static_cast<std::size_t>(dim_)));
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    if (scored.size() > static_cast<std::size_t>(k)) scored.resize(k);
    return scored;
  }

  // word2vec text format: "vocab dim" header, then one word + dim values
  // per line.
  void save_word2vec_text(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot open for writing: " + path);
    out << vocab_.size() << ' ' << dim_ << '\n';
    char buf[32];
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
      out << vocab_[i];
      const double* v = data_.data() + i * static_cast<std::size_t>(dim_);
      for (int j = 0; j < dim_; ++j) {
        std::snprintf(buf, sizeof(buf), " %.6f", v[j]);
        out << buf;
      }
      out << '\n';
    }
    if (!out) throw parse_error("write failed: " + path);
  }

  static EmbeddingModel load_word2vec_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line))
      throw parse_error(path + ":1: empty file, expected header");
    std::istringstream header(line);
    long long nwords = -1, dim = -1;
    if (!(header >> nwords >> dim) || nwords < 0 || dim <= 0)
      throw parse_error(path + ":1: malformed header, expected "
                               "\"vocab_size dim\"");
    std::vector<std::string> vocab;
    std::vector<std::vector<double>> vecs;
    vocab.reserve(nwords);
    vecs.reserve(nwords);
    std::unordered_map<std::string, std::size_t> seen;
    long long lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() && vocab.size() == static_cast<std::size_t>(nwords))
        continue;  // trailing blank line
      std::istringstream row(line);
      std::string word;
      if (!(row >> word))
        throw parse_error(path + ":" + std::to_string(lineno) +
                          ": missing word");
      if (!seen.emplace(word, vocab.size()).second)
        throw parse_error(path + ":" + std::to_string(lineno) +
                          ": duplicate word: " + word);
      std::vector<double> v;
      v.reserve(dim);
      double x;
      while (row >> x) v.push_back(x);
      if (static_cast<long long>(v.size()) != dim)
        throw parse_error(path + ":" + std::to_string(lineno) +
                          ": expected " + std::to_string(dim) + " values, got " +
                          std::to_string(v.size()));
      vocab.push_back(std::move(word));
      vecs.push_back(std::move(v));
    }
    if (static_cast<long long>(vocab.size()) != nwords)
      throw parse_error(path + ": header promises " + std::to_string(nwords) +
                        " words, file has " + std::to_string(vocab.size()));
    return EmbeddingModel(std::move(vocab), std::move(vecs));
  }

  static double cosine_raw_n(const double* a, const double* b,
                             std::size_t n) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += a[i] * b[i];
      na += a[i] * a[i];
      nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;  // zero vector convention
    return dot / (std::sqrt(na) * std::sqrt(nb));
  }

 private:
  double cosine_raw(const double* a, const double* b) const {
    return cosine_raw_n(a, b, static_cast<std::size_t>(dim_));
  }

  std::vector<std::string> vocab_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> data_;
  int dim_ = 0;
  int min_count_ = 1;
};

// Skip-gram with negative sampling, trained single-threaded so a fixed
// seed reproduces vectors bit for bit.
inline EmbeddingModel train_skipgram(const Corpus& corpus,
                                     const TrainConfig& cfg) {
  if (cfg.window < 1 || cfg.dim < 1 || cfg.epochs < 1)
    throw std::invalid_argument("train: window, dim and epochs must be >= 1");
  int min_count = cfg.min_count;
  if (min_count <= 0) min_count = corpus.token_count() < 100000 ? 1 : 5;

  // Vocabulary ordered by descending count, ties lexicographic.
  std::vector<std::pair<std::string, long long>> counted;
  for (const auto& [w, c] : corpus.lexicon())
    if (c >= min_count) counted.emplace_back(w, c);
  if (counted.empty())
    throw std::runtime_error(
        "train: vocabulary is empty after min-count filtering");
  std::sort(counted.begin(), counted.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> vocab;
  std::unordered_map<std::string, std::size_t> index;
  vocab.reserve(counted.size());
  for (const auto& [w, c] : counted) {
    index.emplace(w, vocab.size());
    vocab.push_back(w);
  }

  // Unigram^(3/4) cumulative table for negative sampling.
  std::vector<double> cum(vocab.size());
  double running = 0.0;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    running += std::pow(static_cast<double>(counted[i].second), 0.75);
    cum[i] = running;
  }
  const double cum_total = running;

  // Encode documents, dropping filtered words from the stream.
  std::vector<std::vector<std::size_t>> docs;
  docs.reserve(corpus.doc_count());
  long long train_tokens = 0;
  for (const Document& d : corpus.documents()) {
    std::vector<std::size_t> enc;
    enc.reserve(d.tokens.size());
    for (const std::string& t : d.tokens) {
      auto it = index.find(t);
      if (it != index.end()) enc.push_back(it->second);
    }
    train_tokens += static_cast<long long>(enc.size());
    docs.push_back(std::move(enc));
  }

  const std::size_t dim = static_cast<std::size_t>(cfg.dim);
  sgns::Matrix syn0(vocab.size(), dim);
  sgns::Matrix syn1(vocab.size(), dim);
  Rng rng(derive_seed(cfg.seed, "skipgram"));
  for (double& x : syn0.a) x = (rng.next_double() - 0.5) / cfg.dim;

  auto sample_negative = [&]() -> std::size_t {
    double u = rng.next_double() * cum_total;
    return static_cast<std::size_t>(
        std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
  };

  const double lr_floor = cfg.initial_lr * 1e-4;
  const double total_steps =
      static_cast<double>(cfg.epochs) * static_cast<double>(train_tokens) + 1.0;
  long long processed = 0;
  sgns::Example ex;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (const std::vector<std::size_t>& doc : docs) {
      for (std::size_t pos = 0; pos < doc.size(); ++pos) {
        double lr = std::max(
            lr_floor,
            cfg.initial_lr * (1.0 - static_cast<double>(processed) /
                                        total_steps));
        ++processed;
        if (cfg.subsample) {
          double f = static_cast<double>(counted[doc[pos]].second) /
                     static_cast<double>(train_tokens);
          double keep = std::sqrt(cfg.subsample_threshold / f) +
                        cfg.subsample_threshold / f;
          if (keep < 1.0 && rng.next_double() > keep) continue;
        }
        // word2vec-style shrunk window.
        std::size_t reduced =
            static_cast<std::size_t>(cfg.window) -
            static_cast<std::size_t>(rng.below(
                static_cast<std::uint64_t>(cfg.window)));
        std::size_t lo = pos >= reduced ? pos - reduced : 0;
        std::size_t hi = std::min(doc.size() - 1, pos + reduced);
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          ex.input = doc[pos];
          ex.outputs.clear();
          ex.outputs.emplace_back(doc[c], 1);
          for (int nk = 0; nk < cfg.negative_samples; ++nk) {
            std::size_t neg = sample_negative();
            if (neg == doc[c]) continue;  // skip, do not resample
            ex.outputs.emplace_back(neg, 0);
          }
          sgns::step(syn0, syn1, ex, lr);
        }
      }
    }
  }

  std::vector<std::vector<double>> vectors(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i)
    vectors[i].assign(syn0.row(i), syn0.row(i) + dim);
  return EmbeddingModel(std::move(vocab), std::move(vectors), min_count);
}

}  // namespace uclean
