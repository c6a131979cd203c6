#pragma once

// Finite categorical probability arithmetic. Every information quantity
// exposed here is in bits.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace agency {

using Labels = std::vector<std::string>;

/// Absolute tolerance on sum-to-one checks.
inline constexpr double kNormTolerance = 1e-12;

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Throws ModelShapeMismatch on ragged input.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<std::vector<double>> to_rows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Normalized probability vector over an ordered set of unique labels.
class Categorical {
 public:
  Categorical() = default;

  /// Validates non-negativity and sum-to-one (within kNormTolerance), then
  /// renormalizes to remove residual drift.
  Categorical(Labels labels, std::vector<double> probs);

  static Categorical uniform(Labels labels);
  static Categorical delta(Labels labels, std::size_t index);
  static Categorical delta(Labels labels, std::string_view label);

  const Labels& labels() const noexcept { return labels_; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  /// Probability of a label; throws UnknownLabel.
  double prob(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;

  /// Index of the largest probability (first on ties).
  std::size_t mode() const;

  friend bool operator==(const Categorical&, const Categorical&) = default;

 private:
  Labels labels_;
  std::vector<double> probs_;
};

/// normalize(weights) -> weights / sum. Throws AllZeroWeights if the total is 0.
Categorical normalize(std::span<const double> weights, Labels labels);

double entropy_bits(const Categorical& d);
/// Entropy of a raw probability vector (0 log 0 = 0).
double entropy_bits(std::span<const double> probs);

/// KL divergence D(p || q) in bits. Throws LabelMismatch or SupportMismatch.
double kl_bits(const Categorical& p, const Categorical& q);
/// Unchecked raw form; +inf if p has mass where q has none.
double kl_bits(std::span<const double> p, std::span<const double> q);

/// One factor of a product-structured label space.
struct Modality {
  std::string name;
  Labels labels;

  friend bool operator==(const Modality&, const Modality&) = default;
};

/// Ordered list of modalities; the product label set is enumerated
/// row-major (first modality varies slowest) and each product label is the
/// coordinate labels joined by '|'.
using ModalityFactorization = std::vector<Modality>;

inline constexpr std::string_view kModalitySeparator = "|";

Labels product_labels(const ModalityFactorization& modalities);

/// Conditional distribution p(output | input) as a row-stochastic matrix.
class Channel {
 public:
  Channel() = default;

  /// Throws InvalidChannel on shape mismatch, negative entries, or rows that
  /// do not sum to one within kNormTolerance. Rows are renormalized.
  Channel(Labels input_labels, Labels output_labels, Matrix rows,
          std::optional<ModalityFactorization> output_modalities = std::nullopt);

  const Labels& input_labels() const noexcept { return input_labels_; }
  const Labels& output_labels() const noexcept { return output_labels_; }
  const Matrix& matrix() const noexcept { return rows_; }
  const std::optional<ModalityFactorization>& output_modalities() const noexcept {
    return output_modalities_;
  }

  std::size_t num_inputs() const noexcept { return rows_.rows(); }
  std::size_t num_outputs() const noexcept { return rows_.cols(); }
  std::span<const double> row(std::size_t i) const { return rows_.row(i); }
  Categorical row_distribution(std::size_t i) const;

  /// Marginal output distribution under an input distribution.
  std::vector<double> output_marginal(std::span<const double> input) const;

  friend bool operator==(const Channel&, const Channel&) = default;

 private:
  Labels input_labels_;
  Labels output_labels_;
  Matrix rows_;
  std::optional<ModalityFactorization> output_modalities_;
};

/// I(A;O) in bits for input distribution p(a) through channel p(o|a).
/// Throws LabelMismatch if the input labels differ from the channel's.
double mutual_information_bits(const Categorical& input, const Channel& ch);
/// Unchecked raw form.
double mutual_information_bits(std::span<const double> input, const Channel& ch);

}  // namespace agency
