#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "renyikit/classic.hpp"
#include "renyikit/csv.hpp"
#include "renyikit/exponents.hpp"
#include "renyikit/numerics.hpp"
#include "renyikit/parallel.hpp"
#include "renyikit/protocol_sim.hpp"
#include "renyikit/simplex_opt.hpp"
#include "renyikit/two_param.hpp"
#include "renyikit/verify.hpp"
#include "renyikit/version.hpp"

namespace renyikit::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double parse_number(const std::string& token, const std::string& what, bool allow_inf) {
  std::string lower = token;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "inf" || lower == "infinity") {
    if (!allow_inf) throw InvalidParameter(what + ": infinity is not allowed here");
    return kInf;
  }
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
    throw InvalidParameter(what + ": cannot read '" + token + "' as a number");
  }
  return v;
}

std::vector<std::size_t> parse_sizes(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  for (double v : parse_grid(text, what, false)) {
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e15) {
      throw InvalidParameter(what + ": expected positive integers, got " + format_double(v));
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text, const std::string& what,
                               bool allow_inf) {
  std::vector<double> out;
  for (const auto& token : split(text, ',')) {
    if (token.find(':') == std::string::npos) {
      out.push_back(parse_number(token, what, allow_inf));
      continue;
    }
    const auto parts = split(token, ':');
    if (parts.size() != 3) {
      throw InvalidParameter(what + ": range '" + token + "' must be start:stop:step");
    }
    const double a = parse_number(parts[0], what, false);
    const double b = parse_number(parts[1], what, false);
    const double step = parse_number(parts[2], what, false);
    if (!(step > 0.0) || b < a) {
      throw InvalidParameter(what + ": range '" + token + "' needs start <= stop and step > 0");
    }
    const double count = std::floor((b - a) / step + 1e-9) + 1.0;
    if (count > 1e6) throw InvalidParameter(what + ": range '" + token + "' is too long");
    for (std::size_t k = 0; k < static_cast<std::size_t>(count); ++k) {
      out.push_back(a + static_cast<double>(k) * step);
    }
  }
  if (out.empty()) throw InvalidParameter(what + " grid is empty");
  return out;
}

namespace {

struct Options {
  std::string kind;
  std::string input;
  std::string p_file;
  std::string q_file;
  std::string alpha;
  std::string beta;
  std::string rate;
  std::string n_list = "1";
  std::string m_list;
  std::string quantity;
  std::string method;
  std::string props;
  std::string out;
  double grid_step = 1e-3;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::size_t samples = 0;
  std::size_t threads = 1;
  std::size_t cap = kDefaultEnumerationCap;
  bool strict_corner = false;
  bool nats = false;
  bool dual = false;
};

constexpr double kLn2 = 0.693147180559945309417232121458176568;

double unit_scale(const Options& o) { return o.nats ? kLn2 : 1.0; }
const char* unit_name(const Options& o) { return o.nats ? "nats" : "bits"; }

std::string comment_line(const Options& o, std::optional<std::uint64_t> seed, double tol) {
  return csv_comment(seed, tol) + " units=" + unit_name(o);
}

std::vector<double> rates_in_bits(const Options& o) {
  if (o.rate.empty()) throw InvalidParameter("--rate grid is required");
  auto r = parse_grid(o.rate, "--rate", false);
  if (o.nats) {
    for (double& v : r) v /= kLn2;
  }
  for (double v : r) (void)Rate(v);
  return r;
}

JointPmf need_joint(const Options& o) {
  if (o.input.empty()) throw InvalidParameter("--input is required");
  return read_joint_file(o.input);
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InvalidParameter("cannot write '" + o.out + "'");
  f << text;
}

// ---- measure / sweep

const std::vector<std::string> kJointQuantities = {
    "H", "Hstar", "Hbar", "HbarStar", "I", "Istar", "Ibar", "IbarStar", "Htilde", "Itilde"};

struct MeasureRow {
  std::string quantity;
  std::string alpha;
  std::string beta;
  std::string value;
  std::string branch;
};

struct MeasurePoint {
  std::string quantity;
  double alpha;
  std::optional<double> beta;
};

std::vector<MeasurePoint> measure_points(const std::vector<std::string>& quantities,
                                         const std::vector<double>& alphas,
                                         const std::vector<double>& betas) {
  std::vector<MeasurePoint> pts;
  for (const auto& q : quantities) {
    for (double a : alphas) {
      if (q == "Htilde" || q == "Itilde") {
        for (double b : betas) pts.push_back({q, a, b});
      } else {
        pts.push_back({q, a, std::nullopt});
      }
    }
  }
  return pts;
}

MeasureRow measure_one(const MeasurePoint& pt, const JointPmf* joint, const Pmf* p,
                       const Pmf* q, const Options& o, std::ostream& err) {
  const double scale = unit_scale(o);
  const ExtOrder a = ExtOrder::from_value(pt.alpha);
  MeasureRow row{pt.quantity, a.str(), pt.beta ? format_double(*pt.beta) : "", "", ""};
  auto put = [&](double v, const char* branch) {
    row.value = csv_number(v * scale);
    row.branch = branch;
  };
  const auto& name = pt.quantity;
  if (name == "D") {
    const auto r = renyi_divergence(*p, *q, a);
    put(r.value, to_string(r.branch));
  } else if (name == "Hx") {
    const auto r = renyi_entropy(marginal_x(*joint), a);
    put(r.value, to_string(r.branch));
  } else if (name == "Htilde" || name == "Itilde") {
    const OrderPair op{a, ExtOrder::from_value(*pt.beta)};
    row.beta = op.beta.str();
    if (op.is_undefined_corner()) {
      row.value = "undefined";
      row.branch = "undefined_corner";
      return row;
    }
    const TwoParamOptions topt{.strict_corner = o.strict_corner};
    const auto r = name == "Htilde" ? h_tilde(*joint, op, topt) : i_tilde(*joint, op, topt);
    if (r.corner_warning) {
      err << "warning: " << name << " at (0, 0) is the beta -> 0 then alpha -> 0 limit; "
          << "other limit paths give different values\n";
    }
    put(r.value, to_string(r.branch));
  } else {
    static const std::vector<std::pair<std::string, CondEntropyVariant>> hv = {
        {"H", CondEntropyVariant::H}, {"Hstar", CondEntropyVariant::Hstar},
        {"Hbar", CondEntropyVariant::Hbar}, {"HbarStar", CondEntropyVariant::HbarStar}};
    static const std::vector<std::pair<std::string, MutualInfoVariant>> iv = {
        {"I", MutualInfoVariant::I}, {"Istar", MutualInfoVariant::Istar},
        {"Ibar", MutualInfoVariant::Ibar}, {"IbarStar", MutualInfoVariant::IbarStar}};
    for (const auto& [n, v] : hv) {
      if (n == name) {
        const auto r = cond_entropy_variant(v, *joint, a);
        put(r.value, to_string(r.branch));
        return row;
      }
    }
    for (const auto& [n, v] : iv) {
      if (n == name) {
        const auto r = mutual_info_variant(v, *joint, a);
        put(r.value, to_string(r.branch));
        return row;
      }
    }
    throw InvalidParameter("unknown quantity '" + name + "'");
  }
  return row;
}

std::vector<std::string> selected_quantities(const Options& o, bool have_joint, bool have_pq) {
  std::vector<std::string> qs;
  if (!o.quantity.empty()) {
    qs = split(o.quantity, ',');
  } else {
    if (have_pq) qs.push_back("D");
    if (have_joint) qs.insert(qs.end(), kJointQuantities.begin(), kJointQuantities.end());
  }
  if (qs.empty()) throw InvalidParameter("nothing to measure: give --input or --p and --q");
  for (const auto& q : qs) {
    const bool joint_q = q == "Hx" || std::find(kJointQuantities.begin(), kJointQuantities.end(),
                                                q) != kJointQuantities.end();
    if (q == "D" && !have_pq) throw InvalidParameter("quantity D needs --p and --q");
    if (q != "D" && !joint_q) throw InvalidParameter("unknown quantity '" + q + "'");
    if (joint_q && !have_joint) throw InvalidParameter("quantity " + q + " needs --input");
  }
  return qs;
}

int cmd_measure(const Options& o, std::ostream& out, std::ostream& err) {
  const bool have_pq = !o.p_file.empty() || !o.q_file.empty();
  std::optional<JointPmf> joint;
  std::optional<Pmf> p, q;
  if (!o.input.empty()) joint = read_joint_file(o.input);
  if (have_pq) {
    if (o.p_file.empty() || o.q_file.empty()) {
      throw InvalidParameter("--p and --q must be given together");
    }
    p = read_pmf_file(o.p_file);
    q = read_pmf_file(o.q_file);
  }
  const auto qs = selected_quantities(o, joint.has_value(), have_pq);
  const auto alphas = parse_grid(o.alpha.empty() ? "0.5,1,2" : o.alpha, "--alpha");
  const auto betas = parse_grid(o.beta.empty() ? "0.5,1,2" : o.beta, "--beta");
  for (double v : alphas) ExtOrder::from_value(v);
  for (double v : betas) ExtOrder::from_value(v);

  std::ostringstream buf;
  CsvWriter w(buf);
  w.comment(comment_line(o, std::nullopt, 0.0));
  w.row({"quantity", "alpha", "beta", "value", "branch"});
  for (const auto& pt : measure_points(qs, alphas, betas)) {
    const auto r = measure_one(pt, joint ? &*joint : nullptr, p ? &*p : nullptr,
                               q ? &*q : nullptr, o, err);
    w.row({r.quantity, r.alpha, r.beta, r.value, r.branch});
  }
  emit(o, buf.str(), out);
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.input.empty()) throw InvalidParameter("--input is required (comma-separated files)");
  const auto files = split(o.input, ',');
  std::vector<JointPmf> joints;
  for (const auto& f : files) joints.push_back(read_joint_file(f));
  const auto qs = o.quantity.empty() ? std::vector<std::string>{"Htilde", "Itilde"}
                                     : split(o.quantity, ',');
  selected_quantities(Options{.quantity = o.quantity}, true, false);
  const auto alphas = parse_grid(o.alpha.empty() ? "0.5,1,2" : o.alpha, "--alpha");
  const auto betas = parse_grid(o.beta.empty() ? "0.5,1,2" : o.beta, "--beta");
  for (double v : alphas) ExtOrder::from_value(v);
  for (double v : betas) ExtOrder::from_value(v);

  const auto pts = measure_points(qs, alphas, betas);
  std::vector<std::ostringstream> warnings(files.size() * pts.size());
  const auto rows = parallel_map(files.size() * pts.size(), o.threads, [&](std::size_t k) {
    const std::size_t f = k / pts.size();
    return measure_one(pts[k % pts.size()], &joints[f], nullptr, nullptr, o, warnings[k]);
  });
  for (const auto& wmsg : warnings) err << wmsg.str();

  std::ostringstream buf;
  CsvWriter w(buf);
  w.comment(comment_line(o, std::nullopt, 0.0));
  w.row({"input", "quantity", "alpha", "beta", "value", "branch"});
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    w.row({files[k / pts.size()], r.quantity, r.alpha, r.beta, r.value, r.branch});
  }
  emit(o, buf.str(), out);
  return kOk;
}

// ---- exponent

int cmd_exponent(const Options& o, std::ostream& out, std::ostream&) {
  const JointPmf joint = need_joint(o);
  if (o.beta.empty()) throw InvalidParameter("--beta grid is required");
  auto betas = parse_grid(o.beta, "--beta", false);
  auto rates = rates_in_bits(o);
  std::sort(betas.begin(), betas.end());
  std::sort(rates.begin(), rates.end());
  if (!(o.grid_step > 0.0) || !(o.grid_step < 1.0)) {
    throw InvalidParameter("--grid-step must lie in (0, 1)");
  }
  ExponentConfig cfg;
  cfg.alpha_grid_step = o.grid_step;
  if (o.tol) cfg.golden_tol = *o.tol;
  if (!(cfg.golden_tol > 0.0)) throw InvalidParameter("--tol must be positive");
  const bool pa = o.kind == "pa";
  for (double b : betas) {
    if (!(b > 0.0)) throw InvalidOrder("beta must be positive, got " + format_double(b));
  }

  struct Point {
    double beta, rate;
  };
  std::vector<Point> pts;
  for (double b : betas)
    for (double r : rates) pts.push_back({b, r});
  const auto results = parallel_map(pts.size(), o.threads, [&](std::size_t k) {
    ExponentConfig c = cfg;
    c.compute_dual = o.dual && pts[k].beta < 1.0;
    return pa ? pa_exponent(joint, pts[k].beta, Rate(pts[k].rate), c)
              : sc_exponent(joint, pts[k].beta, Rate(pts[k].rate), c);
  });

  const double s = unit_scale(o);
  std::ostringstream buf;
  CsvWriter w(buf);
  w.comment(comment_line(o, std::nullopt, cfg.golden_tol) +
            " grid_step=" + format_double(cfg.alpha_grid_step));
  w.row({"beta", std::string("rate_") + unit_name(o), "value", "arg_alpha", "dual_value", "gap",
         "branch"});
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& r = results[k];
    w.row({format_double(pts[k].beta), csv_number(pts[k].rate * s), csv_number(r.value * s),
           r.arg_alpha ? format_double(*r.arg_alpha) : "",
           r.dual_value ? csv_number(*r.dual_value * s) : "",
           r.dual_gap ? csv_number(*r.dual_gap * s) : "", to_string(r.branch)});
  }
  emit(o, buf.str(), out);
  return kOk;
}

// ---- variational

int cmd_variational(const Options& o, std::ostream& out, std::ostream&) {
  const JointPmf joint = need_joint(o);
  const auto alphas = parse_grid(o.alpha.empty() ? "0.5,1.5,2" : o.alpha, "--alpha", false);
  const auto betas = parse_grid(o.beta.empty() ? "0.5,1,2" : o.beta, "--beta", false);
  const double tol = o.tol.value_or(1e-4);
  if (!(tol > 0.0)) throw InvalidParameter("--tol must be positive");
  const bool h = o.kind == "h";
  struct Point {
    double alpha, beta;
  };
  std::vector<Point> pts;
  for (double a : alphas)
    for (double b : betas) {
      if (!(a > 0.0) || !(b > 0.0)) {
        throw InvalidOrder("variational forms need finite positive orders");
      }
      pts.push_back({a, b});
    }
  struct Row {
    double closed, scaled;
    OptReport rep;
  };
  const auto rows = parallel_map(pts.size(), o.threads, [&](std::size_t k) {
    const double a = pts[k].alpha, b = pts[k].beta;
    if (h) {
      const double c = h_tilde(joint, a, b).value;
      return Row{c, (a - 1.0) * c, variational_h(joint, a, b)};
    }
    const double c = i_tilde(joint, a, b).value;
    return Row{c, (1.0 - a) * c, variational_i(joint, a, b)};
  });

  const double s = unit_scale(o);
  std::ostringstream buf;
  CsvWriter w(buf);
  w.comment(comment_line(o, std::nullopt, tol));
  w.row({"measure", "alpha", "beta", "closed_form", "scaled_closed_form", "optimizer_minimum",
         "gap", "abs_diff", "agrees", "certified", "method", "iterations", "grid_points"});
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const auto& r = rows[k];
    const double diff = std::abs(r.scaled - r.rep.minimum);
    w.row({h ? "Htilde" : "Itilde", format_double(pts[k].alpha), format_double(pts[k].beta),
           csv_number(r.closed * s), csv_number(r.scaled * s), csv_number(r.rep.minimum * s),
           csv_number(r.rep.gap * s), csv_number(diff * s),
           diff <= std::max(tol, r.rep.gap) ? "true" : "false",
           r.rep.certified ? "true" : "false", to_string(r.rep.method),
           std::to_string(r.rep.iterations), std::to_string(r.rep.grid_points)});
  }
  emit(o, buf.str(), out);
  return kOk;
}

// ---- simulate

struct SizePlan {
  std::size_t n;
  std::size_t M;
  std::string note;
};

std::vector<SizePlan> size_plans(const Options& o) {
  const auto ns = parse_sizes(o.n_list, "--n");
  const bool by_rate = !o.rate.empty();
  if (by_rate == !o.m_list.empty()) {
    throw InvalidParameter("give exactly one of --rate and --M");
  }
  std::vector<SizePlan> plans;
  for (std::size_t n : ns) {
    if (by_rate) {
      for (double r : rates_in_bits(o)) {
        const auto rs = round_codebook_size(n, r);
        plans.push_back({n, rs.M, rs.note});
      }
    } else {
      for (std::size_t M : parse_sizes(o.m_list, "--M")) plans.push_back({n, M, ""});
    }
  }
  return plans;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream&) {
  const JointPmf joint = need_joint(o);
  if (o.beta.empty()) throw InvalidParameter("--beta grid is required");
  const auto betas = parse_grid(o.beta, "--beta", false);
  const auto plans = size_plans(o);
  const bool pa = o.kind == "pa";
  const std::string method = o.method.empty() ? (pa ? "exhaustive" : "exact") : o.method;
  const std::vector<std::string> allowed =
      pa ? std::vector<std::string>{"exhaustive", "affine"}
         : std::vector<std::string>{"exact", "mc", "both"};
  if (std::find(allowed.begin(), allowed.end(), method) == allowed.end()) {
    throw InvalidParameter("unknown --method '" + method + "' for simulate " + o.kind);
  }
  const std::size_t samples = o.samples ? o.samples : (pa ? 256 : 4000);

  std::vector<SimRecord> records;
  const auto cond = condition_on_x(joint);
  for (const auto& plan : plans) {
    for (double b : betas) {
      std::vector<SimRecord> got;
      if (pa) {
        const JointPmf jn = power(joint, plan.n);
        if (method == "exhaustive") {
          const auto res = pa_min_divergence_exhaustive(jn, plan.M, b, o.cap);
          got.push_back(SimRecord{plan.n, plan.M, b,
                                  "exhaustive-min(hashes=" + std::to_string(res.enumerated) + ")",
                                  res.value, std::nullopt, std::nullopt, "",
                                  "minimum over every hash table; ties resolved to the first "
                                  "table in lexicographic order"});
        } else {
          auto fam = pa_universal_family_divergence(jn, plan.M, b, o.seed, samples, plan.n);
          got.push_back(std::move(fam.best));
          got.push_back(std::move(fam.ensemble));
        }
      } else {
        if (method == "exact" || method == "both") {
          got.push_back(sc_expected_divergence_exact(cond.px, cond.y_given_x, plan.n, plan.M, b,
                                                     o.cap));
        }
        if (method == "mc" || method == "both") {
          got.push_back(sc_expected_divergence_mc(cond.px, cond.y_given_x, plan.n, plan.M, b,
                                                  samples, o.seed, o.threads));
        }
      }
      for (auto& r : got) {
        if (!plan.note.empty()) r.rounding_note = plan.note;
        records.push_back(std::move(r));
      }
    }
  }

  std::ostringstream buf;
  CsvWriter w(buf);
  w.comment(comment_line(o, o.seed, 0.0) + " cap=" + std::to_string(o.cap));
  write_sim_records(w, records, unit_scale(o), unit_name(o));
  emit(o, buf.str(), out);
  return kOk;
}

// ---- verify

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  VerifyConfig cfg;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  if (o.samples) cfg.samples = o.samples;
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw InvalidParameter("--tol must be positive");
    cfg.slack = *o.tol;
  }
  if (!o.props.empty()) cfg.props = split(o.props, ',');
  const auto report = run_verification(cfg);
  emit(o, report.to_json() + "\n", out);
  for (const auto& r : report.results) {
    if (!r.passed) {
      err << "FAILED " << r.id << ": " << r.violations << " of " << r.checks
          << " checks violated\n";
    }
  }
  return report.all_passed() ? kOk : kVerificationFailed;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--input", o.input, "Joint distribution JSON file");
  sub->add_option("--alpha", o.alpha, "Alpha grid: values, 'inf', or start:stop:step");
  sub->add_option("--beta", o.beta, "Beta grid");
  sub->add_option("--rate", o.rate, "Rate grid (bits per symbol; nats with --nats)");
  sub->add_option("--grid-step", o.grid_step, "Alpha grid step for exponents");
  sub->add_option("--tol", o.tol, "Tolerance");
  sub->add_option("--seed", o.seed, "Master seed");
  sub->add_option("--out", o.out, "Output file (default stdout)");
  sub->add_flag("--strict-corner", o.strict_corner, "Reject the (0, 0) corner");
  sub->add_option("--props", o.props, "Comma-separated property IDs");
  sub->add_flag("--nats", o.nats, "Read rates and write values in nats");
  sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1, 256));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-parameter Renyi information measures, exponents and simulations",
               "renyikit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto* measure = app.add_subcommand("measure", "Evaluate measures on a joint (CSV)");
  add_common(measure, o);
  measure->add_option("--quantity", o.quantity,
                      "Comma-separated: D, Hx, H, Hstar, Hbar, HbarStar, I, Istar, Ibar, "
                      "IbarStar, Htilde, Itilde");
  measure->add_option("--p", o.p_file, "Pmf JSON for D_alpha(p || q)");
  measure->add_option("--q", o.q_file, "Pmf JSON for D_alpha(p || q)");

  auto* exponent = app.add_subcommand("exponent", "Strong-converse exponents over (beta, R)");
  exponent->add_option("kind", o.kind, "pa or sc")->required()->check(CLI::IsMember({"pa", "sc"}));
  add_common(exponent, o);
  exponent->add_flag("--dual", o.dual, "Also solve the dual minimization (beta < 1)");

  auto* variational = app.add_subcommand("variational", "Certify the variational forms");
  variational->add_option("kind", o.kind, "h or i")->required()->check(CLI::IsMember({"h", "i"}));
  add_common(variational, o);

  auto* simulate = app.add_subcommand("simulate", "Protocol simulations (CSV of records)");
  simulate->add_option("kind", o.kind, "pa or sc")->required()->check(CLI::IsMember({"pa", "sc"}));
  add_common(simulate, o);
  simulate->add_option("--n", o.n_list, "Block lengths");
  simulate->add_option("--M", o.m_list, "Range / codebook sizes (instead of --rate)");
  simulate->add_option("--method", o.method, "pa: exhaustive|affine; sc: exact|mc|both");
  simulate->add_option("--samples", o.samples, "Sampled hashes or codebooks");
  simulate->add_option("--cap", o.cap, "Enumeration cap");

  auto* verify = app.add_subcommand("verify", "Run the property suite (JSON report)");
  add_common(verify, o);
  verify->add_option("--samples", o.samples, "Random joints per property");

  auto* sweep = app.add_subcommand("sweep", "Measures over files x alpha x beta (CSV)");
  add_common(sweep, o);
  sweep->add_option("--quantity", o.quantity, "Comma-separated quantities");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*measure) return cmd_measure(o, out, err);
    if (*exponent) return cmd_exponent(o, out, err);
    if (*variational) return cmd_variational(o, out, err);
    if (*simulate) return cmd_simulate(o, out, err);
    if (*verify) return cmd_verify(o, out, err);
    if (*sweep) return cmd_sweep(o, out, err);
  } catch (const EnumerationCap& e) {
    err << "error: " << e.what() << "\n";
    return kCapError;
  } catch (const SizeOverflow& e) {
    err << "error: " << e.what() << "\n";
    return kCapError;
  } catch (const DimensionCap& e) {
    err << "error: " << e.what() << "\n";
    return kCapError;
  } catch (const NonFiniteObjectiveEverywhere& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kConfigError;
}

}  // namespace renyikit::cli
