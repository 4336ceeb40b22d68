#pragma once

// Attention-pooled transformer classifier mapping an instruction text to its
// problem kind. Double precision throughout, hand-written backward pass.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "accord/problem.hpp"
#include "accord/rng.hpp"

namespace accord {

// Tokens are a letter run, one digit, or one other character, each optionally
// carrying the single space before it. Decoding concatenates pieces, so
// decode(encode(t)) == t whenever every piece of t is in the vocabulary.
// Out-of-vocabulary words fall back to characters, then to the unknown id.
class Tokenizer {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;

  Tokenizer();
  static Tokenizer build(const std::vector<std::string>& corpus);
  static Tokenizer from_pieces(std::vector<std::string> pieces);

  std::vector<int> encode(std::string_view text) const;
  std::string decode(const std::vector<int>& ids) const;
  std::size_t size() const { return pieces_.size(); }
  const std::vector<std::string>& pieces() const { return pieces_; }

 private:
  void add(const std::string& piece);
  std::optional<int> find(const std::string& piece) const;

  std::vector<std::string> pieces_;
  std::unordered_map<std::string, int> index_;
};

struct RouterConfig {
  int vocab_size = 0;  // 0: taken from the tokenizer at training time
  int embed_dim = 32;
  int hidden_dim = 32;
  int heads = 4;
  int max_len = 0;     // 0: longest training text plus 16
  int classes = 6;
  double dropout = 0.1;
  std::uint64_t seed = 1;
  int epochs = 3;
  int batch_size = 16;
  double learning_rate = 2e-3;
};

nlohmann::json config_to_json(const RouterConfig& config);
RouterConfig config_from_json(const nlohmann::json& j);

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;
using MatMap = Eigen::Map<Mat>;
using ConstMatMap = Eigen::Map<const Mat>;

enum class Mode { Train, Infer };

// Scores s_i = w . tanh(W_a h_i); softmax over positions with keep[i] true.
// H is n x d, W_a d x d, w length d. Returns r = sum a_i h_i.
Vec attention_pool(const Mat& H, const Mat& W_a, const Vec& w, const std::vector<bool>& keep,
                   Vec* weights = nullptr);

class RouterModel {
 public:
  explicit RouterModel(const RouterConfig& config);

  const RouterConfig& config() const { return config_; }

  // Flat parameter vector; tensors are contiguous row-major slices of it.
  std::vector<double>& parameters() { return theta_; }
  const std::vector<double>& parameters() const { return theta_; }
  std::vector<std::string> tensor_names() const;
  MatMap tensor(std::string_view name);
  ConstMatMap tensor(std::string_view name) const;
  // Offset of tensor `name` in the flat vector, and its shape.
  std::size_t offset(std::string_view name) const;
  std::pair<int, int> shape(std::string_view name) const;

  // Token positions holding Tokenizer::kPad are masked from attention keys
  // and pooling. Throws SequenceTooLong above max_len and InvalidInstance for
  // an empty or all-padding input.
  Mat embed_sequence(const std::vector<int>& tokens, Mode mode, Rng* dropout_rng = nullptr) const;
  Vec forward(const std::vector<int>& tokens, Mode mode = Mode::Infer, Rng* dropout_rng = nullptr) const;

  // Cross-entropy loss; adds d loss / d theta into `grad` (same size as theta).
  double loss_and_gradient(const std::vector<int>& tokens, int label, std::vector<double>& grad, Mode mode = Mode::Infer,
                           Rng* dropout_rng = nullptr) const;
  double loss(const std::vector<int>& tokens, int label) const;

 private:
  struct Slot {
    std::string name;
    int rows, cols;
    std::size_t offset;
  };
  struct AttnCache;
  struct Cache;
  const Slot& slot(std::string_view name) const;
  ConstMatMap view(int tensor) const;
  Vec run(const std::vector<int>& tokens, Mode mode, Rng* dropout_rng, Cache& cache) const;
  Mat attend(const Mat& X, int base, const std::vector<bool>& keep, AttnCache& cache) const;
  void backprop(const Cache& cache, int label, std::vector<double>& grad) const;
  Mat attend_back(const Mat& dM, int base, const AttnCache& cache, std::vector<double>& grad) const;

  RouterConfig config_;
  std::vector<Slot> slots_;
  std::vector<double> theta_;
};

struct Classification {
  ProblemKind kind = ProblemKind::Tsp;
  double confidence = 0.0;
  Vec probabilities;
};

class Router {
 public:
  Router(Tokenizer tokenizer, RouterModel model) : tokenizer_(std::move(tokenizer)), model_(std::move(model)) {}

  Classification classify(std::string_view instruction) const;
  const Tokenizer& tokenizer() const { return tokenizer_; }
  const RouterModel& model() const { return model_; }
  RouterModel& model() { return model_; }

  // JSON checkpoint: {"format", "version", "config", "vocabulary", "tensors": {name: {shape, data}}}.
  nlohmann::json to_json() const;
  static Router from_json(const nlohmann::json& j);
  void save(const std::string& path) const;
  static Router load(const std::string& path);

 private:
  Tokenizer tokenizer_;
  RouterModel model_;
};

struct LabeledText {
  std::string text;
  ProblemKind kind;
};

struct TrainResult {
  Router router;
  std::vector<double> curve;  // mean training loss per mini-batch
};

// Adam on mini-batches, shuffled per epoch; deterministic given config.seed.
// Throws MissingClass when some kind has no example.
TrainResult train_router(RouterConfig config, const std::vector<LabeledText>& corpus,
                         const std::function<void(const std::string&)>& log = {});

double accuracy(const Router& router, const std::vector<LabeledText>& data);

// Relative error ||analytic - numeric|| / max(||analytic||, ||numeric||) over
// `samples` randomly drawn parameter coordinates; numeric gradients are central
// differences with the given step. Dropout is off.
double gradient_check(RouterModel& model, const std::vector<int>& tokens, int label, std::size_t samples,
                      std::uint64_t seed, double step = 1e-3);

// Instructions for `per_class` random instances of every kind.
std::vector<LabeledText> instruction_corpus(std::size_t per_class, std::uint64_t seed);

}  // namespace accord
