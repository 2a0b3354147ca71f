#include "renyikit/dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "renyikit/numerics.hpp"

namespace renyikit {

NegativeMass::NegativeMass(std::size_t index, double value)
    : Error("entry " + std::to_string(index) + " has invalid mass " +
            std::to_string(value)),
      index_(index),
      value_(value) {}

NotNormalized::NotNormalized(double deviation)
    : Error([&] {
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "masses sum to 1%+.3e (tolerance %.0e)", deviation,
                      kNormalizationTolerance);
        return std::string(buf);
      }()),
      deviation_(deviation) {}

namespace {

void check_masses(std::span<const double> probs) {
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0) || !std::isfinite(probs[i])) {
      throw NegativeMass(i, probs[i]);
    }
  }
  const double deviation = compensated_sum(probs) - 1.0;
  if (!(std::abs(deviation) <= kNormalizationTolerance)) {
    throw NotNormalized(deviation);
  }
}

void check_labels(const Labels& labels) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw DuplicateLabel(l);
  }
}

Labels product_labels(const Labels& a, const Labels& b) {
  Labels out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(x + "," + y);
  }
  return out;
}

void check_cells(std::size_t a, std::size_t b, std::size_t cap) {
  if (a != 0 && b > cap / a) throw SizeOverflow(cap + 1, cap);
  if (a * b > cap) throw SizeOverflow(a * b, cap);
}

}  // namespace

Labels default_labels(std::size_t k) {
  Labels out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(std::to_string(i));
  return out;
}

bool Support::contains(std::size_t i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

Support support_of(std::span<const double> probs) {
  Support s;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) s.indices.push_back(i);
  }
  return s;
}

// ---------------------------------------------------------------- Pmf

Pmf Pmf::make(Labels alphabet, std::vector<double> probs) {
  if (alphabet.size() != probs.size()) {
    throw ShapeMismatch("alphabet has " + std::to_string(alphabet.size()) +
                        " labels but pmf has " + std::to_string(probs.size()) +
                        " entries");
  }
  if (probs.empty()) throw ShapeMismatch("empty pmf");
  check_labels(alphabet);
  check_masses(probs);
  return Pmf(std::move(alphabet), std::move(probs));
}

Pmf Pmf::make(std::vector<double> probs) {
  auto labels = default_labels(probs.size());
  return make(std::move(labels), std::move(probs));
}

Pmf Pmf::uniform(std::size_t k) {
  return make(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

Pmf Pmf::point_mass(std::size_t k, std::size_t at) {
  std::vector<double> p(k, 0.0);
  p.at(at) = 1.0;
  return make(std::move(p));
}

// ---------------------------------------------------------------- JointPmf

JointPmf JointPmf::make(Labels alphabet_x, Labels alphabet_y,
                        std::vector<double> row_major) {
  if (alphabet_x.empty() || alphabet_y.empty()) {
    throw ShapeMismatch("joint alphabets must be non-empty");
  }
  if (alphabet_x.size() * alphabet_y.size() != row_major.size()) {
    throw ShapeMismatch("joint of shape " + std::to_string(alphabet_x.size()) +
                        "x" + std::to_string(alphabet_y.size()) + " given " +
                        std::to_string(row_major.size()) + " entries");
  }
  check_labels(alphabet_x);
  check_labels(alphabet_y);
  check_masses(row_major);
  return JointPmf(std::move(alphabet_x), std::move(alphabet_y),
                  std::move(row_major));
}

JointPmf JointPmf::make(std::size_t nx, std::size_t ny,
                        std::vector<double> row_major) {
  return make(default_labels(nx), default_labels(ny), std::move(row_major));
}

JointPmf JointPmf::make(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ShapeMismatch("joint needs at least one row");
  const std::size_t ny = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * ny);
  for (const auto& r : rows) {
    if (r.size() != ny) throw ShapeMismatch("ragged joint rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return make(rows.size(), ny, std::move(flat));
}

JointPmf JointPmf::transposed() const {
  std::vector<double> t(cells());
  for (std::size_t x = 0; x < nx(); ++x) {
    for (std::size_t y = 0; y < ny(); ++y) t[y * nx() + x] = (*this)(x, y);
  }
  return JointPmf(alphabet_y_, alphabet_x_, std::move(t));
}

// ---------------------------------------------------------------- CondPmf

CondPmf CondPmf::make(Labels alphabet_cond, Labels alphabet_out,
                      std::vector<std::optional<std::vector<double>>> rows) {
  if (rows.size() != alphabet_cond.size()) {
    throw ShapeMismatch("conditional has " + std::to_string(rows.size()) +
                        " rows for " + std::to_string(alphabet_cond.size()) +
                        " conditioning symbols");
  }
  check_labels(alphabet_cond);
  check_labels(alphabet_out);
  for (const auto& r : rows) {
    if (!r) continue;
    if (r->size() != alphabet_out.size()) {
      throw ShapeMismatch("conditional row length mismatch");
    }
    check_masses(*r);
  }
  return CondPmf(std::move(alphabet_cond), std::move(alphabet_out),
                 std::move(rows));
}

CondPmf CondPmf::make(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw ShapeMismatch("channel needs at least one row");
  std::vector<std::optional<std::vector<double>>> opt(rows.begin(), rows.end());
  return make(default_labels(rows.size()), default_labels(rows.front().size()),
              std::move(opt));
}

std::span<const double> CondPmf::row(std::size_t c) const {
  const auto& r = rows_.at(c);
  if (!r) {
    throw std::out_of_range("conditional row for '" + alphabet_cond_[c] +
                            "' is absent");
  }
  return *r;
}

bool CondPmf::total() const {
  return std::all_of(rows_.begin(), rows_.end(),
                     [](const auto& r) { return r.has_value(); });
}

// ---------------------------------------------------------------- operations

Pmf marginal_x(const JointPmf& joint) {
  std::vector<double> px(joint.nx());
  for (std::size_t x = 0; x < joint.nx(); ++x) {
    px[x] = compensated_sum(joint.row(x));
  }
  return Pmf::make(joint.alphabet_x(), std::move(px));
}

Pmf marginal_y(const JointPmf& joint) {
  std::vector<double> py(joint.ny(), 0.0);
  std::vector<double> column(joint.nx());
  for (std::size_t y = 0; y < joint.ny(); ++y) {
    for (std::size_t x = 0; x < joint.nx(); ++x) column[x] = joint(x, y);
    py[y] = compensated_sum(column);
  }
  return Pmf::make(joint.alphabet_y(), std::move(py));
}

ConditionedOnY condition_on_y(const JointPmf& joint) {
  Pmf py = marginal_y(joint);
  std::vector<std::optional<std::vector<double>>> rows(joint.ny());
  for (std::size_t y = 0; y < joint.ny(); ++y) {
    if (!(py[y] > 0.0)) continue;
    std::vector<double> r(joint.nx());
    for (std::size_t x = 0; x < joint.nx(); ++x) r[x] = joint(x, y) / py[y];
    // Division can leave the row a few ulps off 1; renormalize the
    // quotient, never the input.
    const double s = compensated_sum(r);
    for (double& v : r) v /= s;
    rows[y] = std::move(r);
  }
  auto cond = CondPmf::make(joint.alphabet_y(), joint.alphabet_x(),
                            std::move(rows));
  return {std::move(py), std::move(cond)};
}

ConditionedOnX condition_on_x(const JointPmf& joint) {
  auto t = condition_on_y(joint.transposed());
  return {std::move(t.py), std::move(t.x_given_y)};
}

JointPmf joint_from_channel(const Pmf& px, const CondPmf& channel) {
  if (px.size() != channel.n_cond()) {
    throw AlphabetMismatch("input distribution and channel disagree on |X|");
  }
  std::vector<double> flat(px.size() * channel.n_out(), 0.0);
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (!(px[x] > 0.0)) continue;
    auto r = channel.row(x);
    for (std::size_t y = 0; y < r.size(); ++y) {
      flat[x * channel.n_out() + y] = px[x] * r[y];
    }
  }
  return JointPmf::make(px.alphabet(), channel.alphabet_out(), std::move(flat));
}

JointPmf product(const JointPmf& p, const JointPmf& q, std::size_t cell_cap) {
  const std::size_t nx = p.nx() * q.nx();
  const std::size_t ny = p.ny() * q.ny();
  check_cells(p.cells(), q.cells(), cell_cap);
  std::vector<double> flat(nx * ny);
  for (std::size_t x = 0; x < p.nx(); ++x) {
    for (std::size_t x2 = 0; x2 < q.nx(); ++x2) {
      const std::size_t row = x * q.nx() + x2;
      for (std::size_t y = 0; y < p.ny(); ++y) {
        for (std::size_t y2 = 0; y2 < q.ny(); ++y2) {
          flat[row * ny + y * q.ny() + y2] = p(x, y) * q(x2, y2);
        }
      }
    }
  }
  return JointPmf::make(product_labels(p.alphabet_x(), q.alphabet_x()),
                        product_labels(p.alphabet_y(), q.alphabet_y()),
                        std::move(flat));
}

JointPmf power(const JointPmf& p, std::size_t n, std::size_t cell_cap) {
  if (n == 0) throw ShapeMismatch("power needs n >= 1");
  JointPmf out = p;
  for (std::size_t i = 1; i < n; ++i) out = product(out, p, cell_cap);
  return out;
}

Pmf product(const Pmf& p, const Pmf& q, std::size_t cell_cap) {
  check_cells(p.size(), q.size(), cell_cap);
  std::vector<double> flat;
  flat.reserve(p.size() * q.size());
  for (double a : p.probs()) {
    for (double b : q.probs()) flat.push_back(a * b);
  }
  return Pmf::make(product_labels(p.alphabet(), q.alphabet()), std::move(flat));
}

Pmf power(const Pmf& p, std::size_t n, std::size_t cell_cap) {
  if (n == 0) throw ShapeMismatch("power needs n >= 1");
  Pmf out = p;
  for (std::size_t i = 1; i < n; ++i) out = product(out, p, cell_cap);
  return out;
}

JointPmf independent(const Pmf& px, const Pmf& py) {
  std::vector<double> flat;
  flat.reserve(px.size() * py.size());
  for (double a : px.probs()) {
    for (double b : py.probs()) flat.push_back(a * b);
  }
  return JointPmf::make(px.alphabet(), py.alphabet(), std::move(flat));
}

}  // namespace renyikit
