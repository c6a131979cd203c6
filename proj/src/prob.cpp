#include "agency/prob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "agency/error.hpp"

namespace agency {

namespace {

void check_unique(const Labels& labels, ErrorCode code, std::string_view what) {
  std::set<std::string_view> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw Error(code, std::string(what) + " has duplicate label '" + l + "'");
    }
  }
}

// Clamps round-off negatives to zero and renormalizes a row in place.
// Returns false if the row is not a distribution within tolerance.
bool sanitize_distribution(std::span<double> p) {
  double total = 0.0;
  for (double& x : p) {
    if (!std::isfinite(x)) return false;
    if (x < 0.0) {
      if (x < -kNormTolerance) return false;
      x = 0.0;
    }
    total += x;
  }
  if (std::abs(total - 1.0) > kNormTolerance) return false;
  for (double& x : p) x /= total;
  return true;
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw Error(ErrorCode::ModelShapeMismatch,
                  "ragged matrix: row " + std::to_string(r) + " has " +
                      std::to_string(rows[r].size()) + " entries, expected " +
                      std::to_string(cols));
    }
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r].assign(row(r).begin(), row(r).end());
  return out;
}

Categorical::Categorical(Labels labels, std::vector<double> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
  if (labels_.size() != probs_.size()) {
    throw Error(ErrorCode::InvalidDistribution,
                std::to_string(labels_.size()) + " labels for " + std::to_string(probs_.size()) +
                    " probabilities");
  }
  if (probs_.empty()) throw Error(ErrorCode::InvalidDistribution, "empty distribution");
  check_unique(labels_, ErrorCode::InvalidDistribution, "distribution");
  if (!sanitize_distribution(probs_)) {
    throw Error(ErrorCode::InvalidDistribution,
                "probabilities must be non-negative and sum to 1");
  }
}

Categorical Categorical::uniform(Labels labels) {
  const std::size_t n = labels.size();
  return Categorical(std::move(labels), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Categorical Categorical::delta(Labels labels, std::size_t index) {
  if (index >= labels.size()) {
    throw Error(ErrorCode::OutOfRange, "delta index " + std::to_string(index) + " out of range");
  }
  std::vector<double> p(labels.size(), 0.0);
  p[index] = 1.0;
  return Categorical(std::move(labels), std::move(p));
}

Categorical Categorical::delta(Labels labels, std::string_view label) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw Error(ErrorCode::UnknownLabel, std::string(label));
  const auto index = static_cast<std::size_t>(it - labels.begin());
  return delta(std::move(labels), index);
}

std::size_t Categorical::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error(ErrorCode::UnknownLabel, std::string(label));
  return static_cast<std::size_t>(it - labels_.begin());
}

double Categorical::prob(std::string_view label) const { return probs_[index_of(label)]; }

std::size_t Categorical::mode() const {
  return static_cast<std::size_t>(std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
}

Categorical normalize(std::span<const double> weights, Labels labels) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidDistribution, "weights must be finite and non-negative");
    }
    total += w;
  }
  if (total <= 0.0) throw Error(ErrorCode::AllZeroWeights, "every weight is zero");
  std::vector<double> p(weights.begin(), weights.end());
  for (double& x : p) x /= total;
  // Division can leave the sum a few ulps off; renormalize once more.
  const double again = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= again;
  return Categorical(std::move(labels), std::move(p));
}

double entropy_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) h -= xlog2x(p);
  return std::max(h, 0.0);
}

double entropy_bits(const Categorical& d) { return entropy_bits(d.probs()); }

double kl_bits(std::span<const double> p, std::span<const double> q) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return std::max(d, 0.0);
}

double kl_bits(const Categorical& p, const Categorical& q) {
  if (p.labels() != q.labels()) {
    throw Error(ErrorCode::LabelMismatch, "KL divergence needs identical label sets");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0 && q[i] <= 0.0) {
      throw Error(ErrorCode::SupportMismatch,
                  "p places mass on '" + p.labels()[i] + "' where q has none");
    }
  }
  return kl_bits(p.probs(), q.probs());
}

Labels product_labels(const ModalityFactorization& modalities) {
  Labels out{""};
  bool first = true;
  for (const auto& m : modalities) {
    Labels next;
    next.reserve(out.size() * m.labels.size());
    for (const auto& prefix : out) {
      for (const auto& l : m.labels) {
        next.push_back(first ? l : prefix + std::string(kModalitySeparator) + l);
      }
    }
    out = std::move(next);
    first = false;
  }
  return modalities.empty() ? Labels{} : out;
}

Channel::Channel(Labels input_labels, Labels output_labels, Matrix rows,
                 std::optional<ModalityFactorization> output_modalities)
    : input_labels_(std::move(input_labels)),
      output_labels_(std::move(output_labels)),
      rows_(std::move(rows)),
      output_modalities_(std::move(output_modalities)) {
  if (rows_.rows() != input_labels_.size() || rows_.cols() != output_labels_.size()) {
    throw Error(ErrorCode::InvalidChannel,
                "matrix is " + std::to_string(rows_.rows()) + "x" + std::to_string(rows_.cols()) +
                    " but labels are " + std::to_string(input_labels_.size()) + "x" +
                    std::to_string(output_labels_.size()));
  }
  if (input_labels_.empty() || output_labels_.empty()) {
    throw Error(ErrorCode::InvalidChannel, "channel needs at least one input and one output");
  }
  check_unique(input_labels_, ErrorCode::InvalidChannel, "channel inputs");
  check_unique(output_labels_, ErrorCode::InvalidChannel, "channel outputs");
  for (std::size_t r = 0; r < rows_.rows(); ++r) {
    if (!sanitize_distribution(rows_.row(r))) {
      throw Error(ErrorCode::InvalidChannel,
                  "row '" + input_labels_[r] + "' is not a probability distribution");
    }
  }
  if (output_modalities_ && product_labels(*output_modalities_) != output_labels_) {
    throw Error(ErrorCode::InvalidChannel,
                "output labels do not match the declared modality product");
  }
}

Categorical Channel::row_distribution(std::size_t i) const {
  return Categorical(output_labels_, std::vector<double>(row(i).begin(), row(i).end()));
}

std::vector<double> Channel::output_marginal(std::span<const double> input) const {
  std::vector<double> q(num_outputs(), 0.0);
  for (std::size_t a = 0; a < num_inputs(); ++a) {
    if (input[a] == 0.0) continue;
    const auto r = row(a);
    for (std::size_t o = 0; o < q.size(); ++o) q[o] += input[a] * r[o];
  }
  return q;
}

double mutual_information_bits(std::span<const double> input, const Channel& ch) {
  const auto q = ch.output_marginal(input);
  double mi = 0.0;
  for (std::size_t a = 0; a < ch.num_inputs(); ++a) {
    if (input[a] <= 0.0) continue;
    const auto r = ch.row(a);
    for (std::size_t o = 0; o < q.size(); ++o) {
      if (r[o] > 0.0) mi += input[a] * r[o] * std::log2(r[o] / q[o]);
    }
  }
  return std::max(mi, 0.0);
}

double mutual_information_bits(const Categorical& input, const Channel& ch) {
  if (input.labels() != ch.input_labels()) {
    throw Error(ErrorCode::LabelMismatch, "input distribution labels differ from channel inputs");
  }
  return mutual_information_bits(input.probs(), ch);
}

}  // namespace agency
