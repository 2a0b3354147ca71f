// Acceptance run: one [PASS]/[FAIL] line per criterion, with details below it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "../../tools/cli/commands.hpp"
#include "renyikit/classic.hpp"
#include "renyikit/exponents.hpp"
#include "renyikit/numerics.hpp"
#include "renyikit/protocol_sim.hpp"
#include "renyikit/random.hpp"
#include "renyikit/two_param.hpp"
#include "renyikit/verify.hpp"

using namespace renyikit;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void note(const std::string& line) { details.push_back(line); }
  void require(bool ok, const std::string& line) {
    if (!ok) pass = false;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void add_verification(Outcome& o, const VerifyReport& r) {
  for (const auto& p : r.results) {
    o.require(p.passed, p.id + ": " + std::to_string(p.violations) + "/" +
                            std::to_string(p.checks) + " violations, worst excess " +
                            fmt("%.3g", p.worst_excess) + ", " + fmt("%.2f s", p.seconds));
    if (p.counterexample) o.note("     counterexample " + *p.counterexample);
  }
}

VerifyReport verify(std::vector<std::string> props, std::size_t samples = 200) {
  VerifyConfig cfg;
  cfg.samples = samples;
  cfg.props = std::move(props);
  return run_verification(cfg);
}

Outcome ac1_collapse() {
  Outcome o;
  const auto t0 = Clock::now();
  add_verification(o, verify({"collapse"}));
  const double t = seconds_since(t0);
  o.require(t < 30.0, "runtime " + fmt("%.2f s", t) + " < 30 s");
  return o;
}

Outcome ac2_structure() {
  Outcome o;
  const auto t0 = Clock::now();
  add_verification(o, verify({"mono-alpha", "mono-beta", "additivity", "dpi", "discard", "nonneg",
                              "concavity", "alpha-concavity"}));
  const double t = seconds_since(t0);
  o.require(t < 300.0, "runtime " + fmt("%.2f s", t) + " < 300 s");
  return o;
}

Outcome ac3_variational() {
  Outcome o;
  const auto t0 = Clock::now();
  add_verification(o, verify({"variational"}));
  const double t = seconds_since(t0);
  o.require(t < 600.0, "runtime " + fmt("%.2f s", t) + " < 600 s");
  return o;
}

Outcome ac4_duality() {
  Outcome o;
  const auto t0 = Clock::now();
  add_verification(o, verify({"exponent-duality"}));
  const double t = seconds_since(t0);
  o.require(t < 900.0, "runtime " + fmt("%.2f s", t) + " < 900 s");
  return o;
}

Outcome ac5_closed_forms() {
  Outcome o;
  Rng rng(505);
  double worst = 0.0;
  std::size_t checks = 0;
  for (int s = 0; s < 100; ++s) {
    const auto j = random_joint(rng, 2 + rng.below(4), 2 + rng.below(4), s % 3 == 2 ? 0.3 : 0.0);
    const double h2 = cond_entropy_variant(CondEntropyVariant::H, j, ExtOrder::finite(2)).value;
    const double i2 = mutual_info_variant(MutualInfoVariant::I, j, ExtOrder::finite(2)).value;
    for (double r : {0.0, 0.1, 0.5, 1.0, 1.7, 2.5}) {
      worst = std::max(worst, std::abs(pa_exponent(j, 2.0, Rate(r)).value - pos_part(r - h2)));
      worst = std::max(worst, std::abs(sc_exponent(j, 2.0, Rate(r)).value - pos_part(i2 - r)));
      checks += 2;
    }
  }
  o.require(worst <= 1e-12, std::to_string(checks) + " checks, worst |diff| " +
                                fmt("%.3g", worst) + " <= 1e-12");
  return o;
}

Outcome ac6_one_shot() {
  Outcome o;
  Rng rng(606);
  double sc_worst = kInf, eq_worst = 0.0;
  std::size_t sc_instances = 0;
  for (int s = 0; s < 12; ++s) {
    const std::size_t nx = 2 + rng.below(2), ny = 2 + rng.below(2);
    const auto px = random_pmf(rng, nx);
    const auto w = random_channel(rng, nx, ny);
    for (std::size_t n : {1, 2}) {
      for (std::size_t M : {1, 2, 3}) {
        if (std::pow(double(nx), double(n * M)) > 1e5) continue;
        for (double b : {0.3, 0.5, 0.8, 1.0, 2.0}) {
          const auto rec = sc_expected_divergence_exact(px, w, n, M, b);
          const auto chk = check_one_shot_sc_bound(px, w, n, M, b, rec);
          sc_worst = std::min(sc_worst, chk.margin);
          if (M == 1 && b >= 1.0) eq_worst = std::max(eq_worst, std::abs(chk.margin));
          ++sc_instances;
        }
      }
    }
  }
  o.require(sc_worst >= -1e-10, "soft covering: " + std::to_string(sc_instances) +
                                    " exact instances, worst margin " + fmt("%.3g", sc_worst));
  o.require(eq_worst <= 1e-10,
            "soft covering M = 1 equality cases: worst |margin| " + fmt("%.3g", eq_worst));

  std::size_t hashes = 0, comparisons = 0, instances = 0;
  double pa_worst = kInf;
  for (int s = 0; s < 6; ++s) {
    const std::size_t nx = 2 + rng.below(2), ny = 2 + rng.below(2);
    const auto base = random_joint(rng, nx, ny);
    for (std::size_t n : {1, 2, 3}) {
      const double domain = std::pow(double(nx), double(n));
      for (std::size_t M : {2, 3, 4}) {
        if (std::pow(double(M), domain) > 1e5 || domain > 27) continue;
        const auto j = power(base, n);
        for (double b : {0.3, 0.7}) {
          std::vector<double> alphas;
          for (double a = b; a < 1.0; a += 0.1) alphas.push_back(a);
          const auto chk = check_one_shot_pa_bound(j, M, b, alphas);
          pa_worst = std::min(pa_worst, chk.worst_margin);
          hashes += chk.hashes;
          comparisons += chk.comparisons;
          ++instances;
        }
      }
    }
  }
  o.require(pa_worst >= -1e-10, "privacy amplification: " + std::to_string(instances) +
                                    " instances, " + std::to_string(hashes) + " hashes, " +
                                    std::to_string(comparisons) + " comparisons, worst margin " +
                                    fmt("%.3g", pa_worst));
  return o;
}

Outcome ac7_limits() {
  Outcome o;
  // full-support joints up to 5 x 5
  Rng rng(derive_seed(20240611, 707));
  const double tol = 1e-3;
  struct Worst {
    double excess = 0.0;
    std::size_t checks = 0;
  };
  Worst one, big_a, small_a, big_b, small_b;
  auto eq = [&](Worst& w, double got, double want) {
    w.excess = std::max(w.excess, std::abs(got - want));
    ++w.checks;
  };
  for (int s = 0; s < 200; ++s) {
    const auto j = random_joint(rng, 2 + rng.below(4), 2 + rng.below(4));
    const double h = shannon_cond_entropy(j), i = shannon_mutual_info(j);
    for (double a : {1.0 - 1e-3, 1.0 + 1e-3}) {
      for (double b : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0}) {
        eq(one, h_tilde(j, a, b).value, h);
        eq(one, i_tilde(j, a, b).value, i);
      }
    }
    for (double b : {0.5, 1.0, 2.0}) {
      const ExtOrder eb = ExtOrder::from_value(b);
      eq(big_a, h_tilde(j, 1e3, b).value, h_tilde(j, {ExtOrder::infinity(), eb}).value);
      eq(big_a, i_tilde(j, 1e3, b).value, i_tilde(j, {ExtOrder::infinity(), eb}).value);
      eq(small_a, h_tilde(j, 1e-3, b).value, h_tilde(j, {ExtOrder::zero(), eb}).value);
      eq(small_a, i_tilde(j, 1e-3, b).value, i_tilde(j, {ExtOrder::zero(), eb}).value);
    }
    for (double a : {0.5, 2.0, 4.0}) {
      const ExtOrder ea = ExtOrder::finite(a);
      eq(big_b, h_tilde(j, a, 1e3).value, h_tilde(j, {ea, ExtOrder::infinity()}).value);
      eq(big_b, i_tilde(j, a, 1e3).value, i_tilde(j, {ea, ExtOrder::infinity()}).value);
      eq(small_b, h_tilde(j, a, 1e-3).value, h_tilde(j, {ea, ExtOrder::zero()}).value);
      eq(small_b, i_tilde(j, a, 1e-3).value, i_tilde(j, {ea, ExtOrder::zero()}).value);
    }
  }
  auto report = [&](const Worst& w, const std::string& what) {
    o.require(w.excess <= tol, what + ": " + std::to_string(w.checks) + " checks, worst |diff| " +
                                   fmt("%.3g", w.excess) + " <= 1e-3");
  };
  report(one, "alpha = 1 +- 1e-3 vs Shannon");
  report(big_a, "alpha = 1e3 vs alpha = inf");
  report(small_a, "alpha = 1e-3 vs alpha = 0");
  report(big_b, "beta = 1e3 vs beta = inf");
  report(small_b, "beta = 1e-3 vs beta = 0");
  return o;
}

Outcome ac8_reproducibility() {
  Outcome o;
  const std::string path = "acceptance_joint.json";
  {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    std::fputs("{\"pmf\": [[0.3, 0.1], [0.15, 0.45]]}\n", f);
    std::fclose(f);
  }
  auto run = [&] {
    std::ostringstream out, err;
    const int code = cli::run_cli({"simulate", "sc", "--input", path, "--beta", "0.5,2", "--M",
                                   "2,3", "--n", "1,2", "--method", "both", "--samples", "2000",
                                   "--seed", "42"},
                                  out, err);
    return std::make_pair(code, out.str());
  };
  const auto a = run(), b = run();
  std::remove(path.c_str());
  o.require(a.first == 0 && b.first == 0 && a.second == b.second && !a.second.empty(),
            "simulate with a fixed seed: two runs byte-identical (" +
                std::to_string(a.second.size()) + " bytes)");

  Rng rng(808);
  std::size_t agree = 0;
  const std::size_t instances = 10;
  for (std::size_t k = 0; k < instances; ++k) {
    const std::size_t nx = 2 + rng.below(2), ny = 2 + rng.below(2);
    const auto px = random_pmf(rng, nx);
    const auto w = random_channel(rng, nx, ny);
    const std::size_t n = 1 + k % 2, M = 2 + k % 3;
    const double beta = std::vector<double>{0.5, 1.0, 2.0}[k % 3];
    if (std::pow(double(nx), double(n * M)) > 1e6) continue;
    const auto ex = sc_expected_divergence_exact(px, w, n, M, beta);
    const auto mc = sc_expected_divergence_mc(px, w, n, M, beta, 4000, 1000 + k);
    const double z = std::abs(mc.value_bits - ex.value_bits) / *mc.stderr_bits;
    const bool ok = z <= 3.0;
    agree += ok;
    o.note(std::string(ok ? "ok   " : "FAIL ") + "n=" + std::to_string(n) +
           " M=" + std::to_string(M) + " beta=" + fmt("%g", beta) + " exact " +
           fmt("%.6f", ex.value_bits) + " mc " + fmt("%.6f", mc.value_bits) + " se " +
           fmt("%.2g", *mc.stderr_bits) + " |z| " + fmt("%.2f", z));
  }
  o.require(agree == instances, "Monte Carlo within 3 standard errors of exact: " +
                                    std::to_string(agree) + "/" + std::to_string(instances));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1 special-case collapse", ac1_collapse},
      {"AC2 structural properties", ac2_structure},
      {"AC3 variational certification", ac3_variational},
      {"AC4 primal-dual exponent agreement", ac4_duality},
      {"AC5 closed forms at beta = 2", ac5_closed_forms},
      {"AC6 one-shot converses", ac6_one_shot},
      {"AC7 limit-branch continuity", ac7_limits},
      {"AC8 reproducibility", ac8_reproducibility},
  };
  // optional arguments select criteria by id, e.g. "AC3"
  std::vector<std::string> only(argv + 1, argv + argc);
  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    const std::string name = c.name;
    if (!only.empty() && std::find_if(only.begin(), only.end(), [&](const std::string& id) {
          return name.rfind(id + " ", 0) == 0;
        }) == only.end()) {
      continue;
    }
    ++ran;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("[%s] %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.name, seconds_since(t0));
    for (const auto& d : o.details) std::printf("       %s\n", d.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion matches the arguments\n");
    return 2;
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
