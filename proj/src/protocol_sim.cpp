#include "renyikit/protocol_sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <thread>

#include "renyikit/classic.hpp"
#include "renyikit/exponents.hpp"
#include "renyikit/numerics.hpp"
#include "renyikit/order.hpp"
#include "renyikit/random.hpp"
#include "renyikit/two_param.hpp"

namespace renyikit {

EnumerationCap::EnumerationCap(double requested, std::size_t cap)
    : Error([&] {
        char buf[128];
        std::snprintf(buf, sizeof buf, "enumeration of %.6g objects exceeds cap %zu",
                      requested, cap);
        return std::string(buf);
      }()),
      cap_(cap) {}

const char* to_string(HashFamily f) {
  switch (f) {
    case HashFamily::table: return "table";
    case HashFamily::exhaustive: return "exhaustive";
    case HashFamily::affine_bits: return "affine-over-bits";
  }
  return "?";
}

HashSpec identity_hash(std::size_t domain) {
  HashSpec h{domain, domain, std::vector<std::size_t>(domain), HashFamily::table};
  for (std::size_t x = 0; x < domain; ++x) h.table[x] = x;
  return h;
}

HashSpec constant_hash(std::size_t domain, std::size_t range, std::size_t value) {
  if (value >= range) throw DomainMismatch("constant hash value outside the range");
  return {domain, range, std::vector<std::size_t>(domain, value), HashFamily::table};
}

HashSpec affine_hash(unsigned domain_bits, const std::vector<std::uint64_t>& rows,
                     std::uint64_t offset) {
  if (domain_bits >= 63 || rows.size() >= 63) {
    throw InvalidParameter("affine hash supports fewer than 63 bits");
  }
  const std::size_t domain = std::size_t{1} << domain_bits;
  const std::size_t range = std::size_t{1} << rows.size();
  HashSpec h{domain, range, std::vector<std::size_t>(domain), HashFamily::affine_bits};
  for (std::size_t x = 0; x < domain; ++x) {
    std::uint64_t z = 0;
    for (std::uint64_t row : rows) {
      z = (z << 1) | static_cast<std::uint64_t>(std::popcount(row & x) & 1);
    }
    h.table[x] = static_cast<std::size_t>((z ^ offset) & (range - 1));
  }
  return h;
}

namespace {

void check_hash(const JointPmf& joint, const HashSpec& h) {
  if (h.range == 0) throw DomainMismatch("hash range is empty");
  if (h.domain != joint.nx() || h.table.size() != joint.nx()) {
    throw DomainMismatch("hash is defined on " + std::to_string(h.table.size()) +
                         " symbols, the joint has " + std::to_string(joint.nx()));
  }
  for (std::size_t x = 0; x < h.table.size(); ++x) {
    if (h.table[x] >= h.range) {
      throw DomainMismatch("hash maps symbol " + std::to_string(x) + " to " +
                           std::to_string(h.table[x]) + ", outside range " +
                           std::to_string(h.range));
    }
  }
}

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw InvalidOrder("beta must be finite and positive, got " + format_double(beta));
  }
}

void push_forward(const JointPmf& joint, const std::vector<std::size_t>& table,
                  std::size_t range, std::vector<double>& out) {
  const std::size_t ny = joint.ny();
  out.assign(range * ny, 0.0);
  for (std::size_t x = 0; x < joint.nx(); ++x) {
    double* dst = out.data() + table[x] * ny;
    const auto row = joint.row(x);
    for (std::size_t y = 0; y < ny; ++y) dst[y] += row[y];
  }
}

// uniform_Z x P_Y on the hashed grid
std::vector<double> ideal_reference(const JointPmf& joint, std::size_t range) {
  const Pmf py = marginal_y(joint);
  std::vector<double> q(range * joint.ny());
  for (std::size_t z = 0; z < range; ++z) {
    for (std::size_t y = 0; y < joint.ny(); ++y) {
      q[z * joint.ny() + y] = py[y] / static_cast<double>(range);
    }
  }
  return q;
}

double enumeration_count(std::size_t base, std::size_t exponent) {
  return std::pow(static_cast<double>(base), static_cast<double>(exponent));
}

struct Jackknife {
  double estimate;
  double stderr_bits;
};

// Estimate f(mean v) with leave-one-out standard error.
template <class F>
Jackknife jackknife(const std::vector<double>& v, F f) {
  const double n = static_cast<double>(v.size());
  const double total = compensated_sum(v);
  const double est = f(total / n);
  if (v.size() < 2) return {est, kInf};
  std::vector<double> loo(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) loo[i] = f((total - v[i]) / (n - 1.0));
  const double mean = compensated_sum(loo) / n;
  double ss = 0.0;
  for (double t : loo) ss += (t - mean) * (t - mean);
  return {est, std::sqrt((n - 1.0) / n * ss)};
}

std::string rate_free_note(std::size_t M) { return "M=" + std::to_string(M) + " given"; }

}  // namespace

JointPmf pa_apply_hash(const JointPmf& joint, const HashSpec& h) {
  check_hash(joint, h);
  std::vector<double> out;
  push_forward(joint, h.table, h.range, out);
  return JointPmf::make(default_labels(h.range), joint.alphabet_y(), std::move(out));
}

double pa_divergence(const JointPmf& joint, const HashSpec& h, double beta) {
  check_hash(joint, h);
  check_beta(beta);
  std::vector<double> hashed;
  push_forward(joint, h.table, h.range, hashed);
  return renyi_divergence_raw(hashed, ideal_reference(joint, h.range),
                              ExtOrder::from_value(beta))
      .value;
}

void for_each_hash(std::size_t domain, std::size_t range,
                   const std::function<void(const HashSpec&)>& visit, std::size_t cap) {
  if (range == 0) throw InvalidParameter("hash range must be at least 1");
  const double count = enumeration_count(range, domain);
  if (count > static_cast<double>(cap)) throw EnumerationCap(count, cap);
  HashSpec h{domain, range, std::vector<std::size_t>(domain, 0), HashFamily::exhaustive};
  while (true) {
    visit(h);
    std::size_t k = domain;
    while (k > 0) {
      --k;
      if (++h.table[k] < range) break;
      h.table[k] = 0;
      if (k == 0) return;
    }
    if (domain == 0) return;
  }
}

HashSearchResult pa_min_divergence_exhaustive(const JointPmf& joint, std::size_t range,
                                              double beta, std::size_t cap) {
  check_beta(beta);
  const auto q = ideal_reference(joint, range);
  const ExtOrder order = ExtOrder::from_value(beta);
  std::vector<double> hashed;
  HashSearchResult best{kInf, HashSpec{}, 0};
  for_each_hash(
      joint.nx(), range,
      [&](const HashSpec& h) {
        push_forward(joint, h.table, range, hashed);
        const double v = renyi_divergence_raw(hashed, q, order).value;
        ++best.enumerated;
        if (v < best.value || best.enumerated == 1) {
          best.value = v;
          best.argmin = h;
        }
      },
      cap);
  return best;
}

PaBoundCheck check_one_shot_pa_bound(const JointPmf& joint, std::size_t range, double beta,
                                     const std::vector<double>& alphas, std::size_t cap,
                                     double tol) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw InvalidOrder("the one-shot hashing bound needs beta in (0, 1)");
  }
  const double log_m = std::log2(static_cast<double>(range));
  std::vector<double> source_bound(alphas.size());
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (!(alphas[k] >= beta) || !(alphas[k] < 1.0)) {
      throw InvalidOrder("alpha must lie in [beta, 1), got " + format_double(alphas[k]));
    }
    source_bound[k] = alpha_weight(alphas[k], beta) *
                      (log_m - h_tilde(joint, alphas[k], beta).value);
  }
  const auto q = ideal_reference(joint, range);
  const ExtOrder order = ExtOrder::from_value(beta);
  PaBoundCheck out;
  std::vector<double> hashed;
  for_each_hash(
      joint.nx(), range,
      [&](const HashSpec& h) {
        push_forward(joint, h.table, range, hashed);
        const double lhs = renyi_divergence_raw(hashed, q, order).value;
        const JointPmf rh =
            JointPmf::make(default_labels(range), joint.alphabet_y(), hashed);
        ++out.hashes;
        for (std::size_t k = 0; k < alphas.size(); ++k) {
          const double b1 = one_shot_pa_lower_bound(rh, beta, alphas[k]);
          for (double b : {b1, source_bound[k]}) {
            ++out.comparisons;
            const double margin = lhs - b;
            if (margin < out.worst_margin) {
              out.worst_margin = margin;
              out.worst_table = h.table;
              out.worst_alpha = alphas[k];
            }
          }
        }
      },
      cap);
  out.pass = out.worst_margin >= -tol;
  return out;
}

RoundedSize round_codebook_size(std::size_t n, double rate_bits) {
  const Rate r(rate_bits);
  const double target = std::exp2(static_cast<double>(n) * r.bits());
  if (!(target < 0x1.0p62)) {
    throw InvalidParameter("2^(n*R) = " + format_double(target) + " is too large");
  }
  const auto M = static_cast<std::size_t>(std::max(1LL, std::llround(target)));
  return {M, "M=max(1,round(2^(n*R)))=" + std::to_string(M) + " from 2^(" +
                 std::to_string(n) + "*" + format_double(r.bits()) +
                 ")=" + format_double(target)};
}

FamilyResult pa_universal_family_divergence(const JointPmf& joint, std::size_t range,
                                            double beta, std::uint64_t seed,
                                            std::size_t samples, std::size_t n) {
  if (!(beta >= 1.0) || !(beta <= 2.0)) {
    throw BetaOutOfFamilyRange("the affine family is 2-universal; beta must lie in [1, 2], got " +
                               format_double(beta));
  }
  if (!std::has_single_bit(joint.nx())) {
    throw NonPowerOfTwoAlphabet("|X| = " + std::to_string(joint.nx()) +
                                " is not a power of two");
  }
  if (range == 0 || !std::has_single_bit(range)) {
    throw NonPowerOfTwoAlphabet("M = " + std::to_string(range) + " is not a power of two");
  }
  if (samples == 0) throw InvalidParameter("need at least one sampled hash");
  const auto kbits = static_cast<unsigned>(std::countr_zero(joint.nx()));
  const auto mbits = static_cast<std::size_t>(std::countr_zero(range));
  const std::uint64_t xmask = (std::uint64_t{1} << kbits) - 1;

  const auto q = ideal_reference(joint, range);
  const ExtOrder order = ExtOrder::from_value(beta);
  std::vector<double> hashed;
  std::vector<double> values(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(derive_seed(seed, i));
    std::vector<std::uint64_t> rows(mbits);
    for (auto& r : rows) r = rng.bits() & xmask;
    const std::uint64_t offset = rng.bits() & (range - 1);
    const HashSpec h = affine_hash(kbits, rows, offset);
    push_forward(joint, h.table, range, hashed);
    values[i] = renyi_divergence_raw(hashed, q, order).value;
  }

  const double best = *std::min_element(values.begin(), values.end());
  const std::string tag = "(N=" + std::to_string(samples) + ")";
  FamilyResult out;
  out.best = SimRecord{n, range, beta, "affine-best" + tag, best, std::nullopt, seed,
                       rate_free_note(range),
                       "smallest sampled divergence; some family member lies at or "
                       "below the family average"};
  Jackknife ens;
  if (beta == 1.0) {
    ens = jackknife(values, [](double m) { return m; });
  } else {
    std::vector<double> moments(samples);
    for (std::size_t i = 0; i < samples; ++i) moments[i] = std::exp2((beta - 1.0) * values[i]);
    ens = jackknife(moments, [beta](double m) { return std::log2(m) / (beta - 1.0); });
  }
  out.ensemble = SimRecord{n, range, beta, "affine-ensemble" + tag, ens.estimate,
                           ens.stderr_bits, seed, rate_free_note(range),
                           "sample average over the family; log taken after averaging"};
  return out;
}

std::vector<double> channel_power(const CondPmf& channel, std::size_t n,
                                  std::size_t cell_cap) {
  if (n == 0) throw InvalidParameter("block length n must be at least 1");
  const std::size_t kx = channel.n_cond(), ky = channel.n_out();
  const double cells = enumeration_count(kx * ky, n);
  if (cells > static_cast<double>(cell_cap)) {
    throw SizeOverflow(static_cast<std::size_t>(std::min(cells, 1e19)), cell_cap);
  }
  std::vector<double> cur{1.0};
  std::size_t rows = 1, cols = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> next(rows * kx * cols * ky, 0.0);
    const std::size_t ncols = cols * ky;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t x = 0; x < kx; ++x) {
        if (!channel.has_row(x)) continue;
        const auto w = channel.row(x);
        for (std::size_t c = 0; c < cols; ++c) {
          const double a = cur[r * cols + c];
          if (a == 0.0) continue;
          for (std::size_t y = 0; y < ky; ++y) {
            next[(r * kx + x) * ncols + c * ky + y] = a * w[y];
          }
        }
      }
    }
    cur = std::move(next);
    rows *= kx;
    cols *= ky;
  }
  return cur;
}

namespace {

struct ScSetup {
  std::vector<double> px;  // P_X^n
  std::vector<double> w;   // W^n, |X^n| x |Y^n|
  std::vector<double> py;  // P_Y^n
  std::size_t nx;
  std::size_t ny;
};

ScSetup sc_setup(const Pmf& px, const CondPmf& channel, std::size_t n) {
  if (px.size() != channel.n_cond()) {
    throw AlphabetMismatch("P_X has " + std::to_string(px.size()) +
                           " symbols, the channel input alphabet has " +
                           std::to_string(channel.n_cond()));
  }
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (px[x] > 0.0 && !channel.has_row(x)) {
      throw ShapeMismatch("channel row missing for input symbol with positive mass");
    }
  }
  ScSetup s;
  const Pmf pxn = power(px, n);
  s.px.assign(pxn.probs().begin(), pxn.probs().end());
  s.w = channel_power(channel, n);
  s.nx = s.px.size();
  s.ny = s.w.size() / s.nx;
  s.py.assign(s.ny, 0.0);
  for (std::size_t y = 0; y < s.ny; ++y) {
    std::vector<double> terms(s.nx);
    for (std::size_t x = 0; x < s.nx; ++x) terms[x] = s.px[x] * s.w[x * s.ny + y];
    s.py[y] = compensated_sum(terms);
  }
  return s;
}

// Per-codebook statistic: sum_y P_{Y|C}^beta P_Y^{1-beta}, or D(P_{Y|C}||P_Y) at beta = 1.
double codebook_statistic(const ScSetup& s, std::span<const std::size_t> words, double beta,
                          std::vector<double>& out) {
  out.assign(s.ny, 0.0);
  for (std::size_t c : words) {
    const double* row = s.w.data() + c * s.ny;
    for (std::size_t y = 0; y < s.ny; ++y) out[y] += row[y];
  }
  const double inv = 1.0 / static_cast<double>(words.size());
  double acc = 0.0;
  for (std::size_t y = 0; y < s.ny; ++y) {
    const double p = out[y] * inv;
    if (p == 0.0) continue;
    if (beta == 1.0) {
      acc += p * std::log2(p / s.py[y]);
    } else {
      acc += std::exp2(beta * std::log2(p) + (1.0 - beta) * std::log2(s.py[y]));
    }
  }
  return acc;
}

void check_sc_args(std::size_t n, std::size_t M, double beta) {
  if (n == 0) throw InvalidParameter("block length n must be at least 1");
  if (M == 0) throw InvalidParameter("codebook size M must be at least 1");
  check_beta(beta);
}

}  // namespace

SimRecord sc_expected_divergence_exact(const Pmf& px, const CondPmf& channel,
                                       std::size_t n, std::size_t M, double beta,
                                       std::size_t cap) {
  check_sc_args(n, M, beta);
  const double count = enumeration_count(px.size(), n * M);
  if (count > static_cast<double>(cap)) throw EnumerationCap(count, cap);
  const ScSetup s = sc_setup(px, channel, n);

  std::vector<std::size_t> support;
  for (std::size_t x = 0; x < s.nx; ++x) {
    if (s.px[x] > 0.0) support.push_back(x);
  }
  std::vector<std::size_t> digit(M, 0), words(M);
  std::vector<double> terms, scratch;
  while (true) {
    double weight = 1.0;
    for (std::size_t m = 0; m < M; ++m) {
      words[m] = support[digit[m]];
      weight *= s.px[words[m]];
    }
    terms.push_back(weight * codebook_statistic(s, words, beta, scratch));
    std::size_t k = M;
    bool done = true;
    while (k > 0) {
      --k;
      if (++digit[k] < support.size()) {
        done = false;
        break;
      }
      digit[k] = 0;
    }
    if (done) break;
  }
  const double e = compensated_sum(terms);
  const double value = beta == 1.0 ? e : std::log2(e) / (beta - 1.0);
  return SimRecord{n, M, beta, "exact-enumeration", value, std::nullopt, std::nullopt,
                   rate_free_note(M), ""};
}

SimRecord sc_expected_divergence_mc(const Pmf& px, const CondPmf& channel, std::size_t n,
                                    std::size_t M, double beta, std::size_t samples,
                                    std::uint64_t seed, std::size_t threads) {
  check_sc_args(n, M, beta);
  if (samples < 1000) {
    throw InvalidParameter("Monte Carlo needs at least 1000 codebooks, got " +
                           std::to_string(samples));
  }
  const ScSetup s = sc_setup(px, channel, n);
  std::vector<double> cdf(px.size());
  std::size_t last_support = 0;
  {
    double acc = 0.0;
    for (std::size_t x = 0; x < px.size(); ++x) {
      acc += px[x];
      cdf[x] = acc;
      if (px[x] > 0.0) last_support = x;
    }
  }
  auto draw_symbol = [&](Rng& rng) {
    const double u = rng.uniform01();
    for (std::size_t x = 0; x < cdf.size(); ++x) {
      if (u < cdf[x] && px[x] > 0.0) return x;
    }
    return last_support;
  };

  std::vector<double> values(samples);
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> words(M);
    std::vector<double> scratch;
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng(derive_seed(seed, i));
      for (auto& w : words) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < n; ++k) idx = idx * px.size() + draw_symbol(rng);
        w = idx;
      }
      values[i] = codebook_statistic(s, words, beta, scratch);
    }
  };
  threads = std::clamp<std::size_t>(threads, 1, samples);
  if (threads == 1) {
    work(0, samples);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (samples + threads - 1) / threads;
    for (std::size_t b = 0; b < samples; b += chunk) {
      pool.emplace_back(work, b, std::min(samples, b + chunk));
    }
    for (auto& t : pool) t.join();
  }

  const Jackknife jk = beta == 1.0
                           ? jackknife(values, [](double m) { return m; })
                           : jackknife(values, [beta](double m) {
                               return std::log2(m) / (beta - 1.0);
                             });
  return SimRecord{n, M, beta,
                   "monte-carlo(N=" + std::to_string(samples) +
                       ",seed=" + std::to_string(seed) + ")",
                   jk.estimate, jk.stderr_bits, seed, rate_free_note(M),
                   beta == 1.0 ? ""
                               : "log of the sample mean; finite-N bias not corrected"};
}

BoundCheck check_one_shot_sc_bound(const Pmf& px, const CondPmf& channel, std::size_t n,
                                   std::size_t M, double beta, const SimRecord& record,
                                   double tol) {
  check_sc_args(n, M, beta);
  if (record.estimator != "exact-enumeration") {
    throw InvalidParameter("the one-shot check needs an exact-enumeration record");
  }
  if (record.n != n || record.M != M || record.beta != beta) {
    throw InvalidParameter("record parameters do not match (n, M, beta)");
  }
  const JointPmf joint = joint_from_channel(px, channel);
  const double rate = std::log2(static_cast<double>(M)) / static_cast<double>(n);
  const double bound = static_cast<double>(n) * sc_exponent(joint, beta, Rate(rate)).value;
  const double margin = record.value_bits - bound;
  return {margin >= -tol, margin, bound};
}

}  // namespace renyikit
