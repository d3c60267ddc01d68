#include <cmath>

#include "readiness/error.hpp"
#include "readiness/regression.hpp"
#include "readiness/text.hpp"

namespace readiness {

void ModelParams::validate() const {
  if (!(svr.c > 0.0)) throw Error(ErrorCode::ConfigError, "svr.c must be > 0");
  if (!(svr.epsilon >= 0.0)) throw Error(ErrorCode::ConfigError, "svr.epsilon must be >= 0");
  if (svr.gamma && !(*svr.gamma > 0.0)) throw Error(ErrorCode::ConfigError, "svr.gamma must be > 0");
  if (!(svr.tolerance > 0.0)) throw Error(ErrorCode::ConfigError, "svr.tolerance must be > 0");
  if (forest.n_trees < 1) throw Error(ErrorCode::ConfigError, "forest.n_trees must be >= 1");
  if (forest.min_samples_split < 2)
    throw Error(ErrorCode::ConfigError, "forest.min_samples_split must be >= 2");
  if (!(linear.ridge_lambda >= 0.0))
    throw Error(ErrorCode::ConfigError, "linear.ridge_lambda must be >= 0");
}

const char* model_kind_name(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Linear: return "linear";
    case ModelKind::Svr: return "svr";
    case ModelKind::Forest: return "forest";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) noexcept {
  if (name == "linear") return ModelKind::Linear;
  if (name == "svr") return ModelKind::Svr;
  if (name == "forest") return ModelKind::Forest;
  return std::nullopt;
}

ModelKind kind_of(const Model& model) noexcept { return static_cast<ModelKind>(model.index()); }

const std::vector<std::string>& feature_labels(const Model& model) noexcept {
  return std::visit([](const auto& m) -> const std::vector<std::string>& { return m.feature_labels; },
                    model);
}

Model fit_model(ModelKind kind, const Matrix& x, std::span<const double> y,
                const ModelParams& params, std::vector<std::string> labels) {
  params.validate();
  switch (kind) {
    case ModelKind::Linear: return fit_linear(x, y, params.linear.ridge_lambda, std::move(labels));
    case ModelKind::Svr: return fit_svr(x, y, params.svr, std::move(labels));
    case ModelKind::Forest: return fit_forest(x, y, params.forest, params.seed, std::move(labels));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown model kind");
}

double predict(const Model& model, std::span<const double> x) {
  return std::visit([&](const auto& m) { return predict(m, x); }, model);
}

std::vector<double> predict_rows(const Model& model, const Matrix& x) {
  std::vector<double> out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) out[r] = predict(model, x.row(r));
  return out;
}

namespace {

const char* kernel_name(KernelKind k) { return k == KernelKind::Rbf ? "rbf" : "linear"; }

std::string bool_text(bool b) { return b ? "true" : "false"; }

void write_body(Document& doc, const LinearModel& m) {
  doc.section("linear");
  doc.add("intercept", m.intercept);
  doc.add("coefficients", std::span<const double>(m.coefficients));
}

void write_body(Document& doc, const SvrModel& m) {
  doc.section("svr");
  doc.add("c", m.c);
  doc.add("epsilon", m.epsilon);
  doc.add("kernel", kernel_name(m.kernel));
  doc.add("gamma", m.gamma);
  doc.add("bias", m.bias);
  doc.add("converged", bool_text(m.converged));
  doc.add("iterations", std::to_string(m.iterations));
  doc.add("kkt_violation", m.kkt_violation);
  doc.add("dual_objective", m.dual_objective);
  doc.add("support_count", std::to_string(m.dual_weights.size()));
  doc.section("support");
  std::vector<double> line;
  for (std::size_t i = 0; i < m.dual_weights.size(); ++i) {
    line.assign(1, m.dual_weights[i]);
    const auto sv = m.support_vectors.row(i);
    line.insert(line.end(), sv.begin(), sv.end());
    doc.add("sv", std::span<const double>(line));
  }
}

void write_body(Document& doc, const ForestModel& m) {
  doc.section("forest");
  doc.add("n_trees", std::to_string(m.trees.size()));
  doc.add("max_depth", m.params.max_depth ? std::to_string(*m.params.max_depth) : "none");
  doc.add("min_samples_split", std::to_string(m.params.min_samples_split));
  doc.add("bootstrap", bool_text(m.params.bootstrap));
  doc.add("max_features", std::to_string(m.params.max_features));
  doc.add("seed", std::to_string(m.seed));
  for (const auto& tree : m.trees) {
    doc.section("tree");
    doc.add("nodes", std::to_string(tree.nodes.size()));
    for (const auto& node : tree.nodes)
      doc.add("node", std::to_string(node.feature) + ' ' + format_exact(node.threshold) + ' ' +
                          std::to_string(node.left) + ' ' + std::to_string(node.right) + ' ' +
                          format_exact(node.value));
  }
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedDocument, what);
}

const std::string& require(const Document& doc, std::string_view section, std::string_view key) {
  const auto* e = doc.find(section, key);
  if (!e) malformed("missing " + std::string(section) + "." + std::string(key));
  return e->value;
}

double number(std::string_view text, std::string_view what) {
  auto v = parse_double(text);
  if (!v) malformed("'" + std::string(text) + "' is not a number (" + std::string(what) + ")");
  return *v;
}

std::uint64_t count(std::string_view text, std::string_view what) {
  auto v = parse_unsigned(text);
  if (!v) malformed("'" + std::string(text) + "' is not a count (" + std::string(what) + ")");
  return *v;
}

bool boolean(std::string_view text, std::string_view what) {
  if (text == "true") return true;
  if (text == "false") return false;
  malformed("'" + std::string(text) + "' is not a boolean (" + std::string(what) + ")");
}

std::vector<double> numbers(std::string_view text, std::string_view what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start < text.size()) {
    while (start < text.size() && text[start] == ' ') ++start;
    if (start >= text.size()) break;
    auto end = text.find(' ', start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(number(text.substr(start, end - start), what));
    start = end;
  }
  return out;
}

LinearModel read_linear(const Document& doc, std::vector<std::string> labels) {
  LinearModel m;
  m.intercept = number(require(doc, "linear", "intercept"), "intercept");
  m.coefficients = numbers(require(doc, "linear", "coefficients"), "coefficients");
  if (m.coefficients.size() != labels.size()) malformed("coefficient count differs from labels");
  m.feature_labels = std::move(labels);
  return m;
}

SvrModel read_svr(const Document& doc, std::vector<std::string> labels) {
  SvrModel m;
  m.c = number(require(doc, "svr", "c"), "c");
  m.epsilon = number(require(doc, "svr", "epsilon"), "epsilon");
  const auto& kernel = require(doc, "svr", "kernel");
  if (kernel == "rbf") m.kernel = KernelKind::Rbf;
  else if (kernel == "linear") m.kernel = KernelKind::Linear;
  else malformed("unknown kernel '" + kernel + "'");
  m.gamma = number(require(doc, "svr", "gamma"), "gamma");
  m.bias = number(require(doc, "svr", "bias"), "bias");
  m.converged = boolean(require(doc, "svr", "converged"), "converged");
  m.iterations = count(require(doc, "svr", "iterations"), "iterations");
  m.kkt_violation = number(require(doc, "svr", "kkt_violation"), "kkt_violation");
  m.dual_objective = number(require(doc, "svr", "dual_objective"), "dual_objective");
  const auto k = count(require(doc, "svr", "support_count"), "support_count");
  const auto rows = doc.find_all("support", "sv");
  if (rows.size() != k) malformed("support_count differs from the number of sv lines");
  m.support_vectors = Matrix(k, labels.size());
  for (std::size_t i = 0; i < k; ++i) {
    auto values = numbers(rows[i]->value, "sv");
    if (values.size() != labels.size() + 1) malformed("sv line has the wrong width");
    m.dual_weights.push_back(values[0]);
    for (std::size_t j = 0; j < labels.size(); ++j) m.support_vectors(i, j) = values[j + 1];
  }
  m.feature_labels = std::move(labels);
  return m;
}

ForestModel read_forest(const Document& doc, std::vector<std::string> labels) {
  ForestModel m;
  const auto n_trees = count(require(doc, "forest", "n_trees"), "n_trees");
  const auto& depth = require(doc, "forest", "max_depth");
  if (depth != "none") m.params.max_depth = count(depth, "max_depth");
  m.params.n_trees = n_trees;
  m.params.min_samples_split = count(require(doc, "forest", "min_samples_split"), "min_samples_split");
  m.params.bootstrap = boolean(require(doc, "forest", "bootstrap"), "bootstrap");
  m.params.max_features = count(require(doc, "forest", "max_features"), "max_features");
  m.seed = count(require(doc, "forest", "seed"), "seed");

  std::size_t expected = 0;
  for (const auto& e : doc.entries()) {
    if (e.section != "tree") continue;
    if (e.key == "nodes") {
      if (!m.trees.empty() && m.trees.back().nodes.size() != expected)
        malformed("tree node count mismatch");
      m.trees.emplace_back();
      expected = count(e.value, "nodes");
    } else if (e.key == "node") {
      if (m.trees.empty()) malformed("node line before a tree header");
      auto parts = split(e.value, ' ');
      if (parts.size() != 5) malformed("node line needs 5 fields at line " + std::to_string(e.line));
      TreeNode node;
      node.feature = static_cast<int>(number(parts[0], "feature"));
      node.threshold = number(parts[1], "threshold");
      node.left = static_cast<std::uint32_t>(count(parts[2], "left"));
      node.right = static_cast<std::uint32_t>(count(parts[3], "right"));
      node.value = number(parts[4], "value");
      m.trees.back().nodes.push_back(node);
    }
  }
  if (!m.trees.empty() && m.trees.back().nodes.size() != expected)
    malformed("tree node count mismatch");
  if (m.trees.size() != n_trees) malformed("n_trees differs from the number of trees");
  for (const auto& t : m.trees) {
    if (t.nodes.empty()) malformed("empty tree");
    for (const auto& node : t.nodes) {
      if (node.feature >= static_cast<int>(labels.size())) malformed("split feature out of range");
      if (node.feature >= 0 && (node.left >= t.nodes.size() || node.right >= t.nodes.size()))
        malformed("child index out of range");
    }
  }
  m.feature_labels = std::move(labels);
  return m;
}

}  // namespace

std::string save_model(const Model& model) {
  Document doc;
  doc.section("model");
  doc.add("format_version", std::to_string(kModelFormatVersion));
  doc.add("model_kind", model_kind_name(kind_of(model)));
  doc.add("feature_labels", join(feature_labels(model), ","));
  std::visit([&](const auto& m) { write_body(doc, m); }, model);
  return doc.str();
}

Model load_model(std::string_view document) {
  const auto doc = Document::parse(document);
  const auto* version = doc.find("model", "format_version");
  if (!version) malformed("missing model.format_version");
  if (version->value != std::to_string(kModelFormatVersion))
    throw Error(ErrorCode::UnknownVersion, "model format_version '" + version->value +
                                               "' (supported: " +
                                               std::to_string(kModelFormatVersion) + ")");
  const auto& kind_text = require(doc, "model", "model_kind");
  const auto kind = parse_model_kind(kind_text);
  if (!kind) malformed("unknown model_kind '" + kind_text + "'");
  auto labels = split(require(doc, "model", "feature_labels"), ',');
  if (labels.empty() || labels.front().empty()) malformed("model has no feature labels");

  switch (*kind) {
    case ModelKind::Linear: return read_linear(doc, std::move(labels));
    case ModelKind::Svr: return read_svr(doc, std::move(labels));
    case ModelKind::Forest: return read_forest(doc, std::move(labels));
  }
  malformed("unreachable model kind");
}

}  // namespace readiness
