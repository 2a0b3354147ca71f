#include "renyikit/classic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "joint_view.hpp"
#include "renyikit/numerics.hpp"

namespace renyikit {

using detail::JointView;

const char* to_string(Branch b) {
  switch (b) {
    case Branch::generic: return "generic";
    case Branch::alpha_one: return "alpha_one";
    case Branch::alpha_zero: return "alpha_zero";
    case Branch::alpha_inf: return "alpha_inf";
  }
  return "?";
}

Branch branch_of(const ExtOrder& a) {
  switch (a.tag()) {
    case OrderTag::zero: return Branch::alpha_zero;
    case OrderTag::one: return Branch::alpha_one;
    case OrderTag::infinity: return Branch::alpha_inf;
    case OrderTag::finite: break;
  }
  return Branch::generic;
}

const char* to_string(CondEntropyVariant v) {
  switch (v) {
    case CondEntropyVariant::H: return "H";
    case CondEntropyVariant::Hstar: return "Hstar";
    case CondEntropyVariant::Hbar: return "Hbar";
    case CondEntropyVariant::HbarStar: return "HbarStar";
  }
  return "?";
}

const char* to_string(MutualInfoVariant v) {
  switch (v) {
    case MutualInfoVariant::I: return "I";
    case MutualInfoVariant::Istar: return "Istar";
    case MutualInfoVariant::Ibar: return "Ibar";
    case MutualInfoVariant::IbarStar: return "IbarStar";
  }
  return "?";
}

double relative_entropy(std::span<const double> p, std::span<const double> q) {
  std::vector<double> terms;
  terms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0)) continue;
    if (!(q[i] > 0.0)) return kInf;
    terms.push_back(p[i] * std::log2(p[i] / q[i]));
  }
  return compensated_sum(terms);
}

double shannon_entropy(std::span<const double> p) {
  std::vector<double> terms;
  terms.reserve(p.size());
  for (double v : p) terms.push_back(-xlog2x(v));
  return compensated_sum(terms);
}

MeasureResult renyi_divergence_raw(std::span<const double> p,
                                   std::span<const double> q,
                                   const ExtOrder& a) {
  const Branch branch = branch_of(a);
  switch (a.tag()) {
    case OrderTag::one:
      return {relative_entropy(p, q), branch};
    case OrderTag::zero: {
      std::vector<double> mass;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) mass.push_back(q[i]);
      }
      const double s = compensated_sum(mass);
      return {s > 0.0 ? -std::log2(s) : kInf, branch};
    }
    case OrderTag::infinity: {
      double best = -kInf;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] > 0.0)) continue;
        if (!(q[i] > 0.0)) return {kInf, branch};
        best = std::max(best, std::log2(p[i]) - std::log2(q[i]));
      }
      return {best, branch};
    }
    case OrderTag::finite:
      break;
  }
  const double alpha = a.value();
  std::vector<double> exps;
  exps.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0)) continue;
    if (!(q[i] > 0.0)) {
      if (alpha > 1.0) return {kInf, branch};
      continue;
    }
    exps.push_back(alpha * std::log2(p[i]) + (1.0 - alpha) * std::log2(q[i]));
  }
  const double l = log2_sum_exp2(exps);
  if (l == -kInf) return {kInf, branch};
  return {l / (alpha - 1.0), branch};
}

MeasureResult renyi_divergence(const Pmf& p, const Pmf& q, const ExtOrder& a) {
  if (p.alphabet() != q.alphabet()) {
    throw AlphabetMismatch("renyi_divergence: alphabets differ");
  }
  return renyi_divergence_raw(p.probs(), q.probs(), a);
}

MeasureResult cond_renyi_divergence(const CondPmf& pyx, const CondPmf& qyx,
                                    const Pmf& px, const ExtOrder& a) {
  if (pyx.alphabet_cond() != qyx.alphabet_cond() ||
      pyx.alphabet_out() != qyx.alphabet_out() ||
      px.alphabet() != pyx.alphabet_cond()) {
    throw AlphabetMismatch("cond_renyi_divergence: alphabets differ");
  }
  const std::size_t ny = pyx.n_out();
  std::vector<double> p(px.size() * ny, 0.0);
  std::vector<double> q(px.size() * ny, 0.0);
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (!(px[x] > 0.0)) continue;
    if (!pyx.has_row(x) || !qyx.has_row(x)) {
      throw AlphabetMismatch("conditional row missing for input '" +
                             px.alphabet()[x] + "' with positive mass");
    }
    auto pr = pyx.row(x);
    auto qr = qyx.row(x);
    for (std::size_t y = 0; y < ny; ++y) {
      p[x * ny + y] = px[x] * pr[y];
      q[x * ny + y] = px[x] * qr[y];
    }
  }
  return renyi_divergence_raw(p, q, a);
}

MeasureResult renyi_entropy_raw(std::span<const double> p, const ExtOrder& a) {
  const Branch branch = branch_of(a);
  switch (a.tag()) {
    case OrderTag::one:
      return {shannon_entropy(p), branch};
    case OrderTag::zero:
      return {std::log2(static_cast<double>(support_of(p).size())), branch};
    case OrderTag::infinity:
      return {-std::log2(*std::max_element(p.begin(), p.end())), branch};
    case OrderTag::finite:
      break;
  }
  const double alpha = a.value();
  std::vector<double> exps;
  exps.reserve(p.size());
  for (double v : p) {
    if (v > 0.0) exps.push_back(alpha * std::log2(v));
  }
  return {log2_sum_exp2(exps) / (1.0 - alpha), branch};
}

MeasureResult renyi_entropy(const Pmf& p, const ExtOrder& a) {
  return renyi_entropy_raw(p.probs(), a);
}

double shannon_cond_entropy(const JointPmf& joint) {
  const JointView v(joint);
  std::vector<double> terms;
  for (std::size_t x = 0; x < v.nx; ++x) {
    for (std::size_t y = 0; y < v.ny; ++y) {
      const double pxy = v.p(x, y);
      if (pxy > 0.0) terms.push_back(-pxy * std::log2(pxy / v.py[y]));
    }
  }
  return compensated_sum(terms);
}

double shannon_mutual_info(const JointPmf& joint) {
  const JointView v(joint);
  std::vector<double> terms;
  for (std::size_t x = 0; x < v.nx; ++x) {
    for (std::size_t y = 0; y < v.ny; ++y) {
      const double pxy = v.p(x, y);
      if (pxy > 0.0) {
        terms.push_back(pxy * std::log2(pxy / (v.px[x] * v.py[y])));
      }
    }
  }
  return compensated_sum(terms);
}

namespace {

bool below_one(const ExtOrder& a) {
  return a.is_zero() || (a.tag() == OrderTag::finite && a.value() < 1.0);
}

double arimoto(const JointView& v, const ExtOrder& a) {
  switch (a.tag()) {
    case OrderTag::one:
      return shannon_cond_entropy(v.joint);
    case OrderTag::zero: {
      double best = -kInf;
      for (std::size_t y = 0; y < v.ny; ++y) {
        if (!(v.py[y] > 0.0)) continue;
        best = std::max(best, std::log2(static_cast<double>(
                                  support_of(v.cond_row(y)).size())));
      }
      return best;
    }
    case OrderTag::infinity: {
      std::vector<double> peaks;
      for (std::size_t y = 0; y < v.ny; ++y) {
        double m = 0.0;
        for (std::size_t x = 0; x < v.nx; ++x) m = std::max(m, v.p(x, y));
        peaks.push_back(m);
      }
      return -std::log2(compensated_sum(peaks));
    }
    case OrderTag::finite:
      break;
  }
  const double alpha = a.value();
  std::vector<double> outer;
  std::vector<double> inner;
  for (std::size_t y = 0; y < v.ny; ++y) {
    inner.clear();
    for (std::size_t x = 0; x < v.nx; ++x) {
      if (v.p(x, y) > 0.0) inner.push_back(alpha * std::log2(v.p(x, y)));
    }
    if (inner.empty()) continue;
    outer.push_back(log2_sum_exp2(inner) / alpha);
  }
  return alpha / (1.0 - alpha) * log2_sum_exp2(outer);
}

double sibson(const JointView& v, const ExtOrder& a) {
  switch (a.tag()) {
    case OrderTag::one:
      return shannon_mutual_info(v.joint);
    case OrderTag::zero: {
      double best = 0.0;
      std::vector<double> mass;
      for (std::size_t y = 0; y < v.ny; ++y) {
        mass.clear();
        for (std::size_t x = 0; x < v.nx; ++x) {
          if (v.p(x, y) > 0.0) mass.push_back(v.px[x]);
        }
        best = std::max(best, compensated_sum(mass));
      }
      return -std::log2(best);
    }
    case OrderTag::infinity: {
      std::vector<double> peaks;
      for (std::size_t y = 0; y < v.ny; ++y) {
        double m = 0.0;
        for (std::size_t x = 0; x < v.nx; ++x) {
          if (v.px[x] > 0.0) m = std::max(m, v.p(x, y) / v.px[x]);
        }
        peaks.push_back(m);
      }
      return std::log2(compensated_sum(peaks));
    }
    case OrderTag::finite:
      break;
  }
  const double alpha = a.value();
  std::vector<double> outer;
  std::vector<double> inner;
  for (std::size_t y = 0; y < v.ny; ++y) {
    inner.clear();
    for (std::size_t x = 0; x < v.nx; ++x) {
      if (v.p(x, y) > 0.0) {
        inner.push_back((1.0 - alpha) * std::log2(v.px[x]) +
                        alpha * std::log2(v.p(x, y)));
      }
    }
    if (inner.empty()) continue;
    outer.push_back(log2_sum_exp2(inner) / alpha);
  }
  return alpha / (alpha - 1.0) * log2_sum_exp2(outer);
}

}  // namespace

MeasureResult cond_entropy_variant(CondEntropyVariant variant,
                                   const JointPmf& joint, const ExtOrder& a) {
  const JointView v(joint);
  const Branch branch = branch_of(a);
  switch (variant) {
    case CondEntropyVariant::H: {
      std::vector<double> ref(joint.cells());
      for (std::size_t x = 0; x < v.nx; ++x) {
        for (std::size_t y = 0; y < v.ny; ++y) ref[x * v.ny + y] = v.py[y];
      }
      return {-renyi_divergence_raw(joint.probs(), ref, a).value, branch};
    }
    case CondEntropyVariant::Hstar:
      return {arimoto(v, a), branch};
    case CondEntropyVariant::Hbar: {
      std::vector<double> terms;
      for (std::size_t y = 0; y < v.ny; ++y) {
        if (!(v.py[y] > 0.0)) continue;
        terms.push_back(v.py[y] * renyi_entropy_raw(v.cond_row(y), a).value);
      }
      return {compensated_sum(terms), branch};
    }
    case CondEntropyVariant::HbarStar: {
      if (a.is_one()) return {shannon_cond_entropy(joint), branch};
      const bool take_max = below_one(a);
      double best = take_max ? -kInf : kInf;
      for (std::size_t y = 0; y < v.ny; ++y) {
        if (!(v.py[y] > 0.0)) continue;
        const double h = renyi_entropy_raw(v.cond_row(y), a).value;
        best = take_max ? std::max(best, h) : std::min(best, h);
      }
      return {best, branch};
    }
  }
  return {0.0, branch};
}

MeasureResult mutual_info_variant(MutualInfoVariant variant,
                                  const JointPmf& joint, const ExtOrder& a) {
  const JointView v(joint);
  const Branch branch = branch_of(a);
  switch (variant) {
    case MutualInfoVariant::I: {
      std::vector<double> ref(joint.cells());
      for (std::size_t x = 0; x < v.nx; ++x) {
        for (std::size_t y = 0; y < v.ny; ++y) {
          ref[x * v.ny + y] = v.px[x] * v.py[y];
        }
      }
      return {renyi_divergence_raw(joint.probs(), ref, a).value, branch};
    }
    case MutualInfoVariant::Istar:
      return {sibson(v, a), branch};
    case MutualInfoVariant::Ibar: {
      std::vector<double> terms;
      for (std::size_t y = 0; y < v.ny; ++y) {
        if (!(v.py[y] > 0.0)) continue;
        terms.push_back(v.py[y] *
                        renyi_divergence_raw(v.cond_row(y), v.px, a).value);
      }
      return {compensated_sum(terms), branch};
    }
    case MutualInfoVariant::IbarStar: {
      if (a.is_one()) return {shannon_mutual_info(joint), branch};
      const bool take_min = below_one(a);
      double best = take_min ? kInf : -kInf;
      for (std::size_t y = 0; y < v.ny; ++y) {
        if (!(v.py[y] > 0.0)) continue;
        const double d = renyi_divergence_raw(v.cond_row(y), v.px, a).value;
        best = take_min ? std::min(best, d) : std::max(best, d);
      }
      return {best, branch};
    }
  }
  return {0.0, branch};
}

}  // namespace renyikit
