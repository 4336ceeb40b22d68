#include "accord/router.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "accord/dataset.hpp"
#include "accord/generate.hpp"

namespace accord {

namespace {

constexpr double kNormEps = 1e-5;
constexpr int kCheckpointVersion = 1;
constexpr const char* kCheckpointFormat = "accord-router";

// Tensor ids. Each attention block is ten consecutive ids, offsets below.
enum Tensor : int {
  TokEmb, PosEmb, EmbGain, EmbBias, ProjW, ProjB,
  Attn1,
  FfnInW = Attn1 + 10, FfnInB, FfnOutW, FfnOutB, FfnGain, FfnBias,
  Attn3,
  PoolW = Attn3 + 10, PoolQuery,
  HidW, HidB, HeadGain, HeadBias, OutW, OutB,
  TensorCount
};
constexpr int Qw = 0, Qb = 1, Kw = 2, Kb = 3, Vw = 4, Vb = 5, Ow = 6, Ob = 7, NormGain = 8, NormBias = 9;

const char* const kAttnPartNames[] = {"q.weight", "q.bias", "k.weight", "k.bias", "v.weight",
                                      "v.bias", "o.weight", "o.bias", "norm.gain", "norm.bias"};

std::vector<std::string> tensor_name_table() {
  std::vector<std::string> names = {"token_embedding", "position_embedding", "embed_norm.gain", "embed_norm.bias",
                                    "proj.weight", "proj.bias"};
  for (const auto* part : kAttnPartNames) names.push_back(std::string("layer1.attn.") + part);
  for (const auto* n : {"layer2.ffn.in.weight", "layer2.ffn.in.bias", "layer2.ffn.out.weight", "layer2.ffn.out.bias",
                        "layer2.norm.gain", "layer2.norm.bias"})
    names.push_back(n);
  for (const auto* part : kAttnPartNames) names.push_back(std::string("layer3.attn.") + part);
  for (const auto* n : {"pool.weight", "pool.query", "head.hidden.weight", "head.hidden.bias", "head.norm.gain",
                        "head.norm.bias", "head.out.weight", "head.out.bias"})
    names.push_back(n);
  return names;
}

double gelu(double x) { return 0.5 * x * (1.0 + std::erf(x / std::numbers::sqrt2)); }
double gelu_grad(double x) {
  return 0.5 * (1.0 + std::erf(x / std::numbers::sqrt2)) + x * std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

struct NormCache {
  Mat xhat;
  Vec inv_std;
};

Mat layer_norm(const Mat& X, const ConstMatMap& gain, const ConstMatMap& bias, NormCache& c) {
  const Vec mean = X.rowwise().mean();
  const Mat centered = X.colwise() - mean;
  const Vec var = centered.rowwise().squaredNorm() / static_cast<double>(X.cols());
  c.inv_std = (var.array() + kNormEps).rsqrt().matrix();
  c.xhat = centered.array().colwise() * c.inv_std.array();
  return (c.xhat.array().rowwise() * gain.row(0).array()).rowwise() + bias.row(0).array();
}

Mat layer_norm_back(const Mat& dY, const NormCache& c, const ConstMatMap& gain, MatMap dgain, MatMap dbias) {
  dgain.row(0) += (dY.array() * c.xhat.array()).colwise().sum().matrix();
  dbias.row(0) += dY.colwise().sum();
  const Mat dxhat = dY.array().rowwise() * gain.row(0).array();
  const double d = static_cast<double>(dY.cols());
  const Vec m1 = dxhat.rowwise().mean();
  const Vec m2 = (dxhat.array() * c.xhat.array()).rowwise().sum() / d;
  const Mat inner = (dxhat.colwise() - m1) - Mat(c.xhat.array().colwise() * m2.array());
  return inner.array().colwise() * c.inv_std.array();
}

// Softmax over kept entries; dropped entries get probability 0.
Vec masked_softmax(const Vec& s, const std::vector<bool>& keep) {
  double top = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (keep[static_cast<std::size_t>(i)]) top = std::max(top, s[i]);
  Vec p = Vec::Zero(s.size());
  double total = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (keep[static_cast<std::size_t>(i)]) total += p[i] = std::exp(s[i] - top);
  return p / total;
}

Vec softmax(const Vec& y) { return masked_softmax(y, std::vector<bool>(static_cast<std::size_t>(y.size()), true)); }

Mat add_row(Mat X, const ConstMatMap& bias) {
  X.rowwise() += bias.row(0);
  return X;
}

MatMap grad_view(std::vector<double>& grad, std::size_t offset, int rows, int cols) {
  return MatMap(grad.data() + offset, rows, cols);
}

bool is_letter(unsigned char c) { return std::isalpha(c) != 0; }

// Splits text into pieces: [space] (letter run | any single byte).
std::vector<std::string> segment(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::string piece;
    if (text[i] == ' ' && i + 1 < text.size() && !std::isspace(static_cast<unsigned char>(text[i + 1]))) {
      piece = " ";
      ++i;
    }
    if (is_letter(static_cast<unsigned char>(text[i]))) {
      const auto start = i;
      while (i < text.size() && is_letter(static_cast<unsigned char>(text[i]))) ++i;
      piece.append(text.substr(start, i - start));
    } else {
      piece.push_back(text[i++]);
    }
    out.push_back(std::move(piece));
  }
  return out;
}

}  // namespace

// ---- tokenizer ----

Tokenizer::Tokenizer() {
  add("<pad>");
  add("<unk>");
}

void Tokenizer::add(const std::string& piece) {
  if (index_.count(piece)) return;
  index_.emplace(piece, static_cast<int>(pieces_.size()));
  pieces_.push_back(piece);
}

std::optional<int> Tokenizer::find(const std::string& piece) const {
  const auto it = index_.find(piece);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Tokenizer Tokenizer::build(const std::vector<std::string>& corpus) {
  std::set<std::string> pieces;
  for (const auto& text : corpus) {
    for (const auto& piece : segment(text)) {
      pieces.insert(piece);
      const bool spaced = piece.size() > 1 && piece[0] == ' ';
      for (std::size_t k = spaced ? 1 : 0; k < piece.size(); ++k) pieces.insert(std::string(1, piece[k]));
      if (spaced) pieces.insert(piece.substr(0, 2));
    }
  }
  Tokenizer t;
  for (const auto& p : pieces) t.add(p);
  return t;
}

Tokenizer Tokenizer::from_pieces(std::vector<std::string> pieces) {
  if (pieces.size() < 2 || pieces[kPad] != "<pad>" || pieces[kUnk] != "<unk>")
    throw Error(ErrorCode::Malformed, "vocabulary must start with <pad>, <unk>");
  Tokenizer t;
  for (std::size_t i = 2; i < pieces.size(); ++i) {
    if (t.find(pieces[i])) throw Error(ErrorCode::Malformed, "duplicate vocabulary entry '" + pieces[i] + "'");
    t.add(pieces[i]);
  }
  return t;
}

std::vector<int> Tokenizer::encode(std::string_view text) const {
  std::vector<int> ids;
  for (const auto& piece : segment(text)) {
    if (const auto id = find(piece)) {
      ids.push_back(*id);
      continue;
    }
    const bool spaced = piece.size() > 1 && piece[0] == ' ';
    std::size_t k = 0;
    if (spaced) {
      if (const auto id = find(piece.substr(0, 2))) {
        ids.push_back(*id);
        k = 2;
      } else {
        ids.push_back(find(" ").value_or(kUnk));
        k = 1;
      }
    }
    for (; k < piece.size(); ++k) ids.push_back(find(std::string(1, piece[k])).value_or(kUnk));
  }
  return ids;
}

std::string Tokenizer::decode(const std::vector<int>& ids) const {
  std::string out;
  for (const int id : ids) {
    if (id == kPad) continue;
    out += id >= 0 && static_cast<std::size_t>(id) < pieces_.size() ? pieces_[static_cast<std::size_t>(id)] : "<unk>";
  }
  return out;
}

// ---- config ----

nlohmann::json config_to_json(const RouterConfig& c) {
  return {{"vocab_size", c.vocab_size}, {"embed_dim", c.embed_dim}, {"hidden_dim", c.hidden_dim},
          {"heads", c.heads},           {"max_len", c.max_len},     {"classes", c.classes},
          {"dropout", c.dropout},       {"seed", c.seed},           {"epochs", c.epochs},
          {"batch_size", c.batch_size}, {"learning_rate", c.learning_rate}};
}

RouterConfig config_from_json(const nlohmann::json& j) {
  RouterConfig c;
  try {
    c.vocab_size = j.at("vocab_size");
    c.embed_dim = j.at("embed_dim");
    c.hidden_dim = j.at("hidden_dim");
    c.heads = j.at("heads");
    c.max_len = j.at("max_len");
    c.classes = j.at("classes");
    c.dropout = j.at("dropout");
    c.seed = j.at("seed");
    c.epochs = j.value("epochs", c.epochs);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("router config: ") + e.what());
  }
  return c;
}

// ---- attention pooling ----

Vec attention_pool(const Mat& H, const Mat& W_a, const Vec& w, const std::vector<bool>& keep, Vec* weights) {
  if (H.rows() == 0) throw Error(ErrorCode::InvalidInstance, "attention pooling needs at least one state");
  const Mat T = (H * W_a).array().tanh();
  const Vec a = masked_softmax(T * w, keep);
  if (weights) *weights = a;
  return H.transpose() * a;
}

// ---- model ----

struct RouterModel::AttnCache {
  Mat X, Q, K, V, O;
  std::vector<Mat> A;
};

struct RouterModel::Cache {
  std::vector<int> tokens;
  std::vector<bool> keep;
  NormCache n0;
  Mat drop;  // dropout multipliers; empty when inactive
  Mat D;
  AttnCache at1;
  NormCache n1;
  Mat H1, U, G;
  NormCache n2;
  Mat H2;
  AttnCache at3;
  NormCache n3;
  Mat H3, T;
  Vec a;
  Mat r, z1, g1;
  NormCache nh;
  Mat l;
  Vec y;
};

RouterModel::RouterModel(const RouterConfig& config) : config_(config) {
  const int V = config.vocab_size, L = config.max_len, d = config.embed_dim, h = config.hidden_dim,
            c = config.classes;
  if (V < 2 || L < 1 || d < 1 || h < 1 || c < 2 || config.heads < 1 || h % config.heads != 0)
    throw Error(ErrorCode::InvalidInstance, "router config: need vocab >= 2, max_len >= 1, hidden divisible by heads");
  if (config.dropout < 0.0 || config.dropout >= 1.0) throw Error(ErrorCode::InvalidInstance, "dropout must be in [0, 1)");
  const auto names = tensor_name_table();
  std::vector<std::pair<int, int>> shapes = {{V, d}, {L, d}, {1, d}, {1, d}, {d, h}, {1, h}};
  const auto attn_shapes = [&] {
    for (int k = 0; k < 4; ++k) {
      shapes.push_back({h, h});
      shapes.push_back({1, h});
    }
    shapes.push_back({1, h});
    shapes.push_back({1, h});
  };
  attn_shapes();
  for (auto s : std::initializer_list<std::pair<int, int>>{{h, 4 * h}, {1, 4 * h}, {4 * h, h}, {1, h}, {1, h}, {1, h}})
    shapes.push_back(s);
  attn_shapes();
  for (auto s : std::initializer_list<std::pair<int, int>>{{h, h}, {1, h}, {h, h}, {1, h}, {1, h}, {1, h}, {h, c}, {1, c}})
    shapes.push_back(s);

  std::size_t offset = 0;
  for (int t = 0; t < TensorCount; ++t) {
    slots_.push_back({names[static_cast<std::size_t>(t)], shapes[static_cast<std::size_t>(t)].first,
                      shapes[static_cast<std::size_t>(t)].second, offset});
    offset += static_cast<std::size_t>(shapes[static_cast<std::size_t>(t)].first) *
              static_cast<std::size_t>(shapes[static_cast<std::size_t>(t)].second);
  }
  theta_.assign(offset, 0.0);

  Rng rng(derive_seed(config.seed, 0x726f75746572ULL));
  const auto fill = [&](int t, auto&& draw) {
    const auto& s = slots_[static_cast<std::size_t>(t)];
    for (std::size_t i = 0; i < static_cast<std::size_t>(s.rows) * static_cast<std::size_t>(s.cols); ++i)
      theta_[s.offset + i] = draw();
  };
  const auto xavier = [&](int t) {
    const auto& s = slots_[static_cast<std::size_t>(t)];
    const double bound = std::sqrt(6.0 / (s.rows + s.cols));
    fill(t, [&] { return (2.0 * rng.uniform01() - 1.0) * bound; });
  };
  const auto ones = [&](int t) { fill(t, [] { return 1.0; }); };
  fill(TokEmb, [&] { return rng.normal(0.0, 0.5); });
  fill(PosEmb, [&] { return rng.normal(0.0, 0.5); });
  ones(EmbGain);
  xavier(ProjW);
  for (int base : {int(Attn1), int(Attn3)}) {
    for (int part : {Qw, Kw, Vw, Ow}) xavier(base + part);
    ones(base + NormGain);
  }
  xavier(FfnInW);
  xavier(FfnOutW);
  ones(FfnGain);
  xavier(PoolW);
  fill(PoolQuery, [&] { return rng.normal(0.0, 1.0 / std::sqrt(static_cast<double>(h))); });
  xavier(HidW);
  ones(HeadGain);
  xavier(OutW);
}

const RouterModel::Slot& RouterModel::slot(std::string_view name) const {
  for (const auto& s : slots_)
    if (s.name == name) return s;
  throw Error(ErrorCode::InvalidInstance, "no router tensor named '" + std::string(name) + "'");
}

std::vector<std::string> RouterModel::tensor_names() const {
  std::vector<std::string> out;
  for (const auto& s : slots_) out.push_back(s.name);
  return out;
}

MatMap RouterModel::tensor(std::string_view name) {
  const auto& s = slot(name);
  return MatMap(theta_.data() + s.offset, s.rows, s.cols);
}

ConstMatMap RouterModel::tensor(std::string_view name) const {
  const auto& s = slot(name);
  return ConstMatMap(theta_.data() + s.offset, s.rows, s.cols);
}

std::size_t RouterModel::offset(std::string_view name) const { return slot(name).offset; }
std::pair<int, int> RouterModel::shape(std::string_view name) const {
  const auto& s = slot(name);
  return {s.rows, s.cols};
}

ConstMatMap RouterModel::view(int t) const {
  const auto& s = slots_[static_cast<std::size_t>(t)];
  return ConstMatMap(theta_.data() + s.offset, s.rows, s.cols);
}

Mat RouterModel::attend(const Mat& X, int base, const std::vector<bool>& keep, AttnCache& c) const {
  const int h = config_.hidden_dim, heads = config_.heads, dk = h / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dk));
  c.X = X;
  c.Q = add_row(X * view(base + Qw), view(base + Qb));
  c.K = add_row(X * view(base + Kw), view(base + Kb));
  c.V = add_row(X * view(base + Vw), view(base + Vb));
  c.O.resize(X.rows(), h);
  c.A.assign(static_cast<std::size_t>(heads), Mat());
  for (int k = 0; k < heads; ++k) {
    const Mat S = c.Q.middleCols(k * dk, dk) * c.K.middleCols(k * dk, dk).transpose() * scale;
    Mat& A = c.A[static_cast<std::size_t>(k)];
    A.resize(S.rows(), S.cols());
    for (Eigen::Index i = 0; i < S.rows(); ++i) A.row(i) = masked_softmax(S.row(i).transpose(), keep).transpose();
    c.O.middleCols(k * dk, dk) = A * c.V.middleCols(k * dk, dk);
  }
  return add_row(c.O * view(base + Ow), view(base + Ob));
}

Mat RouterModel::attend_back(const Mat& dM, int base, const AttnCache& c, std::vector<double>& grad) const {
  const int h = config_.hidden_dim, heads = config_.heads, dk = h / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dk));
  const auto g = [&](int part) {
    const auto& s = slots_[static_cast<std::size_t>(base + part)];
    return grad_view(grad, s.offset, s.rows, s.cols);
  };
  g(Ow) += c.O.transpose() * dM;
  g(Ob) += dM.colwise().sum();
  const Mat dO = dM * view(base + Ow).transpose();
  Mat dQ(c.Q.rows(), h), dK(c.K.rows(), h), dV(c.V.rows(), h);
  for (int k = 0; k < heads; ++k) {
    const Mat& A = c.A[static_cast<std::size_t>(k)];
    const auto dOk = dO.middleCols(k * dk, dk);
    const Mat dA = dOk * c.V.middleCols(k * dk, dk).transpose();
    dV.middleCols(k * dk, dk) = A.transpose() * dOk;
    const Vec rowdot = (dA.array() * A.array()).rowwise().sum();
    const Mat dS = A.array() * (dA.colwise() - rowdot).array();
    dQ.middleCols(k * dk, dk) = dS * c.K.middleCols(k * dk, dk) * scale;
    dK.middleCols(k * dk, dk) = dS.transpose() * c.Q.middleCols(k * dk, dk) * scale;
  }
  g(Qw) += c.X.transpose() * dQ;
  g(Qb) += dQ.colwise().sum();
  g(Kw) += c.X.transpose() * dK;
  g(Kb) += dK.colwise().sum();
  g(Vw) += c.X.transpose() * dV;
  g(Vb) += dV.colwise().sum();
  return dQ * view(base + Qw).transpose() + dK * view(base + Kw).transpose() + dV * view(base + Vw).transpose();
}

Vec RouterModel::run(const std::vector<int>& tokens, Mode mode, Rng* dropout_rng, Cache& c) const {
  const auto n = tokens.size();
  if (n == 0) throw Error(ErrorCode::InvalidInstance, "router input is empty");
  if (n > static_cast<std::size_t>(config_.max_len))
    throw Error(ErrorCode::SequenceTooLong,
                std::to_string(n) + " tokens exceed the maximum of " + std::to_string(config_.max_len));
  c.tokens = tokens;
  c.keep.assign(n, false);
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (tokens[i] < 0 || tokens[i] >= config_.vocab_size)
      throw Error(ErrorCode::InvalidInstance, "token id " + std::to_string(tokens[i]) + " outside the vocabulary");
    c.keep[i] = tokens[i] != Tokenizer::kPad;
    any = any || c.keep[i];
  }
  if (!any) throw Error(ErrorCode::InvalidInstance, "router input is all padding");

  const auto tok = view(TokEmb), pos = view(PosEmb);
  Mat E(static_cast<Eigen::Index>(n), config_.embed_dim);
  for (std::size_t i = 0; i < n; ++i)
    E.row(static_cast<Eigen::Index>(i)) = tok.row(tokens[i]) + pos.row(static_cast<Eigen::Index>(i));
  c.D = layer_norm(E, view(EmbGain), view(EmbBias), c.n0);
  c.drop.resize(0, 0);
  if (mode == Mode::Train && config_.dropout > 0.0) {
    if (!dropout_rng) throw Error(ErrorCode::InvalidInstance, "training mode needs a dropout generator");
    const double keep_scale = 1.0 / (1.0 - config_.dropout);
    c.drop.resize(E.rows(), E.cols());
    for (Eigen::Index i = 0; i < c.drop.size(); ++i)
      c.drop.data()[i] = dropout_rng->uniform01() >= config_.dropout ? keep_scale : 0.0;
    c.D.array() *= c.drop.array();
  }

  const Mat H0 = add_row(c.D * view(ProjW), view(ProjB));
  c.H1 = layer_norm(H0 + attend(H0, Attn1, c.keep, c.at1), view(Attn1 + NormGain), view(Attn1 + NormBias), c.n1);
  c.U = add_row(c.H1 * view(FfnInW), view(FfnInB));
  c.G = c.U.unaryExpr([](double x) { return gelu(x); });
  const Mat F = add_row(c.G * view(FfnOutW), view(FfnOutB));
  c.H2 = layer_norm(c.H1 + F, view(FfnGain), view(FfnBias), c.n2);
  c.H3 = layer_norm(c.H2 + attend(c.H2, Attn3, c.keep, c.at3), view(Attn3 + NormGain), view(Attn3 + NormBias), c.n3);

  c.T = (c.H3 * view(PoolW)).array().tanh();
  c.a = masked_softmax(c.T * view(PoolQuery).row(0).transpose(), c.keep);
  c.r = (c.H3.transpose() * c.a).transpose();
  c.z1 = add_row(c.r * view(HidW), view(HidB));
  c.g1 = c.z1.unaryExpr([](double x) { return gelu(x); });
  c.l = layer_norm(c.g1, view(HeadGain), view(HeadBias), c.nh);
  c.y = add_row(c.l * view(OutW), view(OutB)).row(0).transpose();
  return c.y;
}

void RouterModel::backprop(const Cache& c, int label, std::vector<double>& grad) const {
  const auto g = [&](int t) {
    const auto& s = slots_[static_cast<std::size_t>(t)];
    return grad_view(grad, s.offset, s.rows, s.cols);
  };
  Vec p = softmax(c.y);
  p[label] -= 1.0;
  const Mat dy = p.transpose();
  g(OutW) += c.l.transpose() * dy;
  g(OutB) += dy;
  const Mat dl = dy * view(OutW).transpose();
  const Mat dg1 = layer_norm_back(dl, c.nh, view(HeadGain), g(HeadGain), g(HeadBias));
  const Mat dz1 = dg1.array() * c.z1.unaryExpr([](double x) { return gelu_grad(x); }).array();
  g(HidW) += c.r.transpose() * dz1;
  g(HidB) += dz1;
  const Mat dr = dz1 * view(HidW).transpose();

  Mat dH3 = c.a * dr;
  const Vec da = c.H3 * dr.transpose();
  const double mean_da = c.a.dot(da);
  Vec ds = Vec::Zero(c.a.size());
  for (Eigen::Index i = 0; i < ds.size(); ++i)
    if (c.keep[static_cast<std::size_t>(i)]) ds[i] = c.a[i] * (da[i] - mean_da);
  g(PoolQuery) += (ds.transpose() * c.T);
  const Mat dT = ds * view(PoolQuery);
  const Mat dP = dT.array() * (1.0 - c.T.array().square());
  g(PoolW) += c.H3.transpose() * dP;
  dH3 += dP * view(PoolW).transpose();

  const Mat dX3 = layer_norm_back(dH3, c.n3, view(Attn3 + NormGain), g(Attn3 + NormGain), g(Attn3 + NormBias));
  const Mat dH2 = dX3 + attend_back(dX3, Attn3, c.at3, grad);
  const Mat dX2 = layer_norm_back(dH2, c.n2, view(FfnGain), g(FfnGain), g(FfnBias));
  g(FfnOutW) += c.G.transpose() * dX2;
  g(FfnOutB) += dX2.colwise().sum();
  const Mat dU = (dX2 * view(FfnOutW).transpose()).array() * c.U.unaryExpr([](double x) { return gelu_grad(x); }).array();
  g(FfnInW) += c.H1.transpose() * dU;
  g(FfnInB) += dU.colwise().sum();
  const Mat dH1 = dX2 + dU * view(FfnInW).transpose();
  const Mat dX1 = layer_norm_back(dH1, c.n1, view(Attn1 + NormGain), g(Attn1 + NormGain), g(Attn1 + NormBias));
  const Mat dH0 = dX1 + attend_back(dX1, Attn1, c.at1, grad);
  g(ProjW) += c.D.transpose() * dH0;
  g(ProjB) += dH0.colwise().sum();
  Mat dZ0 = dH0 * view(ProjW).transpose();
  if (c.drop.size()) dZ0.array() *= c.drop.array();
  const Mat dE = layer_norm_back(dZ0, c.n0, view(EmbGain), g(EmbGain), g(EmbBias));
  auto dtok = g(TokEmb);
  auto dpos = g(PosEmb);
  for (std::size_t i = 0; i < c.tokens.size(); ++i) {
    dtok.row(c.tokens[i]) += dE.row(static_cast<Eigen::Index>(i));
    dpos.row(static_cast<Eigen::Index>(i)) += dE.row(static_cast<Eigen::Index>(i));
  }
}

Mat RouterModel::embed_sequence(const std::vector<int>& tokens, Mode mode, Rng* dropout_rng) const {
  Cache c;
  run(tokens, mode, dropout_rng, c);
  return c.D;
}

Vec RouterModel::forward(const std::vector<int>& tokens, Mode mode, Rng* dropout_rng) const {
  Cache c;
  return run(tokens, mode, dropout_rng, c);
}

double RouterModel::loss_and_gradient(const std::vector<int>& tokens, int label, std::vector<double>& grad, Mode mode,
                                      Rng* dropout_rng) const {
  if (label < 0 || label >= config_.classes) throw Error(ErrorCode::InvalidInstance, "label out of range");
  if (grad.size() != theta_.size()) grad.assign(theta_.size(), 0.0);
  Cache c;
  run(tokens, mode, dropout_rng, c);
  backprop(c, label, grad);
  return -std::log(softmax(c.y)[label]);
}

double RouterModel::loss(const std::vector<int>& tokens, int label) const {
  return -std::log(softmax(forward(tokens))[label]);
}

// ---- router ----

Classification Router::classify(std::string_view instruction) const {
  const auto p = softmax(model_.forward(tokenizer_.encode(instruction)));
  Eigen::Index best = 0;
  p.maxCoeff(&best);
  return {kAllKinds[best], p[best], p};
}

nlohmann::json Router::to_json() const {
  nlohmann::json tensors = nlohmann::json::object();
  for (const auto& name : model_.tensor_names()) {
    const auto t = model_.tensor(name);
    tensors[name] = {{"shape", {t.rows(), t.cols()}}, {"data", std::vector<double>(t.data(), t.data() + t.size())}};
  }
  return {{"format", kCheckpointFormat},
          {"version", kCheckpointVersion},
          {"config", config_to_json(model_.config())},
          {"classes", [] {
             std::vector<std::string> names;
             for (auto k : kAllKinds) names.emplace_back(kind_name(k));
             return names;
           }()},
          {"vocabulary", tokenizer_.pieces()},
          {"tensors", tensors}};
}

Router Router::from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != kCheckpointFormat) throw Error(ErrorCode::Malformed, "not a router checkpoint");
    if (j.at("version") != kCheckpointVersion)
      throw Error(ErrorCode::Malformed, "unsupported checkpoint version " + j.at("version").dump());
    auto tokenizer = Tokenizer::from_pieces(j.at("vocabulary").get<std::vector<std::string>>());
    const auto config = config_from_json(j.at("config"));
    if (static_cast<std::size_t>(config.vocab_size) != tokenizer.size())
      throw Error(ErrorCode::Malformed, "vocabulary size does not match the config");
    RouterModel model(config);
    for (const auto& name : model.tensor_names()) {
      const auto& entry = j.at("tensors").at(name);
      auto t = model.tensor(name);
      const auto shape = entry.at("shape").get<std::vector<long>>();
      const auto data = entry.at("data").get<std::vector<double>>();
      if (shape.size() != 2 || shape[0] != t.rows() || shape[1] != t.cols() ||
          data.size() != static_cast<std::size_t>(t.size()))
        throw Error(ErrorCode::Malformed, "tensor '" + name + "' has the wrong shape");
      std::copy(data.begin(), data.end(), t.data());
    }
    return Router(std::move(tokenizer), std::move(model));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("router checkpoint: ") + e.what());
  }
}

void Router::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << to_json().dump() << "\n";
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path);
}

Router Router::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Malformed, path + ": " + e.what());
  }
}

// ---- training ----

TrainResult train_router(RouterConfig config, const std::vector<LabeledText>& corpus,
                         const std::function<void(const std::string&)>& log) {
  std::vector<std::size_t> per_class(std::size(kAllKinds), 0);
  for (const auto& ex : corpus) ++per_class[static_cast<std::size_t>(ex.kind)];
  for (std::size_t k = 0; k < per_class.size(); ++k)
    if (per_class[k] == 0)
      throw Error(ErrorCode::MissingClass, "no training example for " + std::string(kind_name(kAllKinds[k])));

  std::vector<std::string> texts;
  for (const auto& ex : corpus) texts.push_back(ex.text);
  auto tokenizer = Tokenizer::build(texts);
  std::vector<std::vector<int>> encoded;
  std::size_t longest = 0;
  for (const auto& t : texts) {
    encoded.push_back(tokenizer.encode(t));
    longest = std::max(longest, encoded.back().size());
  }
  if (config.vocab_size == 0) config.vocab_size = static_cast<int>(tokenizer.size());
  if (static_cast<std::size_t>(config.vocab_size) != tokenizer.size())
    throw Error(ErrorCode::InvalidInstance, "vocab_size does not match the corpus vocabulary");
  if (config.max_len == 0) config.max_len = static_cast<int>(longest) + 16;
  if (static_cast<std::size_t>(config.max_len) < longest)
    throw Error(ErrorCode::SequenceTooLong, "max_len is shorter than the longest training text");
  if (config.batch_size < 1 || config.epochs < 0) throw Error(ErrorCode::InvalidInstance, "bad batch size or epochs");

  RouterModel model(config);
  auto& theta = model.parameters();
  std::vector<double> grad(theta.size()), m(theta.size(), 0.0), v(theta.size(), 0.0);
  constexpr double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8, clip = 1.0;
  Rng order_rng(derive_seed(config.seed, 1)), dropout_rng(derive_seed(config.seed, 2));
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  std::vector<double> curve;
  long step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    order_rng.shuffle(order);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(config.batch_size)) {
      const auto stop = std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      std::fill(grad.begin(), grad.end(), 0.0);
      double batch_loss = 0.0;
      for (std::size_t b = start; b < stop; ++b) {
        const auto i = order[b];
        batch_loss += model.loss_and_gradient(encoded[i], static_cast<int>(corpus[i].kind), grad, Mode::Train,
                                              &dropout_rng);
      }
      const double scale = 1.0 / static_cast<double>(stop - start);
      double norm = 0.0;
      for (auto& gi : grad) {
        gi *= scale;
        norm += gi * gi;
      }
      norm = std::sqrt(norm);
      const double shrink = norm > clip ? clip / norm : 1.0;
      ++step;
      const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
      for (std::size_t k = 0; k < theta.size(); ++k) {
        const double gk = grad[k] * shrink;
        m[k] = beta1 * m[k] + (1 - beta1) * gk;
        v[k] = beta2 * v[k] + (1 - beta2) * gk * gk;
        theta[k] -= config.learning_rate * (m[k] / c1) / (std::sqrt(v[k] / c2) + adam_eps);
      }
      curve.push_back(batch_loss * scale);
      epoch_loss += batch_loss;
    }
    if (log) {
      std::ostringstream msg;
      msg << "epoch " << epoch + 1 << "/" << config.epochs << " mean loss "
          << epoch_loss / static_cast<double>(std::max<std::size_t>(1, corpus.size()));
      log(msg.str());
    }
  }
  return {Router(std::move(tokenizer), std::move(model)), std::move(curve)};
}

double accuracy(const Router& router, const std::vector<LabeledText>& data) {
  if (data.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& ex : data) hits += router.classify(ex.text).kind == ex.kind;
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

double gradient_check(RouterModel& model, const std::vector<int>& tokens, int label, std::size_t samples,
                      std::uint64_t seed, double step) {
  std::vector<double> grad;
  model.loss_and_gradient(tokens, label, grad);
  auto& theta = model.parameters();
  Rng rng(seed);
  double diff = 0.0, analytic = 0.0, numeric = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto k = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(theta.size()) - 1));
    const double saved = theta[k];
    theta[k] = saved + step;
    const double up = model.loss(tokens, label);
    theta[k] = saved - step;
    const double down = model.loss(tokens, label);
    theta[k] = saved;
    const double fd = (up - down) / (2.0 * step);
    diff += (grad[k] - fd) * (grad[k] - fd);
    analytic += grad[k] * grad[k];
    numeric += fd * fd;
  }
  const double scale = std::sqrt(std::max(analytic, numeric));
  return scale == 0.0 ? 0.0 : std::sqrt(diff) / scale;
}

std::vector<LabeledText> instruction_corpus(std::size_t per_class, std::uint64_t seed) {
  std::vector<LabeledText> out;
  out.reserve(per_class * std::size(kAllKinds));
  for (const auto kind : kAllKinds) {
    for (std::size_t i = 0; i < per_class; ++i) {
      const auto s = derive_seed(seed, static_cast<std::uint64_t>(kind) * per_class + i);
      Rng rng(s);
      const int n = static_cast<int>(rng.uniform_int(5, 30));
      ProblemInstance inst{KnapsackInstance{}};
      switch (kind) {
        case ProblemKind::Tsp: inst = ProblemInstance{gen_routing(n, 1, s)}; break;
        case ProblemKind::Vrp: inst = ProblemInstance{gen_routing(n, static_cast<int>(rng.uniform_int(2, 9)), s)}; break;
        case ProblemKind::Knapsack:
          inst = ProblemInstance{gen_knapsack(n, static_cast<Difficulty>(rng.uniform_int(0, 2)), s)};
          break;
        case ProblemKind::BinPacking:
          inst = ProblemInstance{gen_binpack(n, rng.uniform_int(20, 100), static_cast<int>(rng.uniform_int(1, std::min(n, 10))), s)};
          break;
        case ProblemKind::Jssp:
        case ProblemKind::Fssp:
          inst = ProblemInstance{gen_shop(kind, static_cast<int>(rng.uniform_int(2, 20)),
                                          static_cast<int>(rng.uniform_int(2, 20)), s)};
          break;
      }
      out.push_back({instruction_text(inst, rng), kind});
    }
  }
  return out;
}

}  // namespace accord
