#pragma once

// Finite-alphabet probability objects. Every object is validated on
// construction and immutable afterwards.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "renyikit/errors.hpp"

namespace renyikit {

using Labels = std::vector<std::string>;

/// Absolute tolerance on |sum - 1| accepted by validation.
inline constexpr double kNormalizationTolerance = 1e-12;

/// Default cell cap for products.
inline constexpr std::size_t kDefaultCellCap = 10'000'000;

/// Labels "0", "1", ..., "k-1".
Labels default_labels(std::size_t k);

/// Index set {i : p_i > 0}, by exact comparison with zero.
struct Support {
  std::vector<std::size_t> indices;

  bool contains(std::size_t i) const;
  std::size_t size() const { return indices.size(); }
};

Support support_of(std::span<const double> probs);

class Pmf {
 public:
  /// Validates and builds. Throws NegativeMass, NotNormalized, DuplicateLabel.
  static Pmf make(Labels alphabet, std::vector<double> probs);
  static Pmf make(std::vector<double> probs);
  static Pmf uniform(std::size_t k);
  static Pmf point_mass(std::size_t k, std::size_t at);

  const Labels& alphabet() const { return alphabet_; }
  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  Support support() const { return support_of(probs_); }

 private:
  Pmf(Labels alphabet, std::vector<double> probs)
      : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {}

  Labels alphabet_;
  std::vector<double> probs_;
};

/// Joint distribution P_XY stored row-major as an |X| x |Y| matrix.
class JointPmf {
 public:
  static JointPmf make(Labels alphabet_x, Labels alphabet_y,
                       std::vector<double> row_major);
  static JointPmf make(std::size_t nx, std::size_t ny,
                       std::vector<double> row_major);
  static JointPmf make(const std::vector<std::vector<double>>& rows);

  const Labels& alphabet_x() const { return alphabet_x_; }
  const Labels& alphabet_y() const { return alphabet_y_; }
  std::size_t nx() const { return alphabet_x_.size(); }
  std::size_t ny() const { return alphabet_y_.size(); }
  std::size_t cells() const { return probs_.size(); }

  double operator()(std::size_t x, std::size_t y) const {
    return probs_[x * ny() + y];
  }
  std::span<const double> row(std::size_t x) const {
    return std::span<const double>(probs_).subspan(x * ny(), ny());
  }
  std::span<const double> probs() const { return probs_; }

  /// Swap the roles of X and Y.
  JointPmf transposed() const;

 private:
  JointPmf(Labels ax, Labels ay, std::vector<double> probs)
      : alphabet_x_(std::move(ax)),
        alphabet_y_(std::move(ay)),
        probs_(std::move(probs)) {}

  Labels alphabet_x_;
  Labels alphabet_y_;
  std::vector<double> probs_;
};

/// Conditional distribution: one row per conditioning symbol. Rows of
/// zero-probability conditioning symbols may be absent.
class CondPmf {
 public:
  /// Every present row must be a valid pmf over `alphabet_out`.
  static CondPmf make(Labels alphabet_cond, Labels alphabet_out,
                      std::vector<std::optional<std::vector<double>>> rows);
  /// Channel with every row present.
  static CondPmf make(const std::vector<std::vector<double>>& rows);

  const Labels& alphabet_cond() const { return alphabet_cond_; }
  const Labels& alphabet_out() const { return alphabet_out_; }
  std::size_t n_cond() const { return alphabet_cond_.size(); }
  std::size_t n_out() const { return alphabet_out_.size(); }

  bool has_row(std::size_t c) const { return rows_[c].has_value(); }
  /// Row for conditioning symbol c; throws std::out_of_range if absent.
  std::span<const double> row(std::size_t c) const;
  bool total() const;

 private:
  CondPmf(Labels ac, Labels ao,
          std::vector<std::optional<std::vector<double>>> rows)
      : alphabet_cond_(std::move(ac)),
        alphabet_out_(std::move(ao)),
        rows_(std::move(rows)) {}

  Labels alphabet_cond_;
  Labels alphabet_out_;
  std::vector<std::optional<std::vector<double>>> rows_;
};

Pmf marginal_x(const JointPmf& joint);
Pmf marginal_y(const JointPmf& joint);

struct ConditionedOnY {
  Pmf py;
  CondPmf x_given_y;  // conditioning alphabet Y, output alphabet X
};
struct ConditionedOnX {
  Pmf px;
  CondPmf y_given_x;  // conditioning alphabet X, output alphabet Y
};

ConditionedOnY condition_on_y(const JointPmf& joint);
ConditionedOnX condition_on_x(const JointPmf& joint);

/// P_X . P_{Y|X}. Rows of the channel for P_X(x) = 0 may be absent.
JointPmf joint_from_channel(const Pmf& px, const CondPmf& channel);

/// Product joint on (X x X') x (Y x Y'); entry (x x', y y') = p(x,y) q(x',y').
/// Product symbols are indexed x * |X'| + x' and labelled "x,x'".
JointPmf product(const JointPmf& p, const JointPmf& q,
                 std::size_t cell_cap = kDefaultCellCap);

/// n-fold product p^{x n}; n >= 1.
JointPmf power(const JointPmf& p, std::size_t n,
               std::size_t cell_cap = kDefaultCellCap);

Pmf product(const Pmf& p, const Pmf& q, std::size_t cell_cap = kDefaultCellCap);
Pmf power(const Pmf& p, std::size_t n, std::size_t cell_cap = kDefaultCellCap);

/// Independent joint p x q with X ~ p, Y ~ q.
JointPmf independent(const Pmf& px, const Pmf& py);

// JSON, schema {"alphabet":[...], "pmf":[...]} and
// {"alphabet_x":[...], "alphabet_y":[...], "pmf":[[...], ...]}.
std::string to_json(const Pmf& pmf);
std::string to_json(const JointPmf& joint);
Pmf pmf_from_json(std::string_view text);
JointPmf joint_from_json(std::string_view text);
JointPmf read_joint_file(const std::string& path);
Pmf read_pmf_file(const std::string& path);

}  // namespace renyikit
