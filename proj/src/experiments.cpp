// SPDX-License-Identifier: Apache-2.0
#include "sharpbound/experiments.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sharpbound/eigensolver.hpp"
#include "sharpbound/extremal_family.hpp"
#include "sharpbound/field_io.hpp"
#include "sharpbound/helmholtz_green.hpp"
#include "sharpbound/quotient_maximizer.hpp"

namespace sharpbound {

using std::numbers::pi;

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Eigen: return "eigen";
    case ExperimentKind::Quotient: return "quotient";
    case ExperimentKind::Green: return "green";
    case ExperimentKind::Extremal: return "extremal";
    case ExperimentKind::Burgers: return "burgers";
    case ExperimentKind::FullChain: return "full-chain";
  }
  return "unknown";
}

ExperimentKind experiment_from_string(const std::string& name) {
  for (auto k : {ExperimentKind::Eigen, ExperimentKind::Quotient, ExperimentKind::Green,
                 ExperimentKind::Extremal, ExperimentKind::Burgers, ExperimentKind::FullChain})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

bool ReportBundle::pass() const {
  for (const auto& c : criteria)
    if (!c.pass) return false;
  return true;
}

nlohmann::json ReportBundle::summary() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : criteria)
    rows.push_back({{"criterion", c.criterion},
                    {"value", c.value},
                    {"bound", c.bound},
                    {"margin", c.margin},
                    {"pass", c.pass}});
  return {{"experiment", name}, {"pass", pass()}, {"criteria", rows}};
}

namespace {

class Csv {
 public:
  explicit Csv(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      out_ << (first ? "" : ",") << h;
      first = false;
    }
    out_ << '\n';
  }
  Csv& row(std::initializer_list<double> cells) {
    bool first = true;
    for (double v : cells) {
      out_ << (first ? "" : ",") << cell(v);
      first = false;
    }
    out_ << '\n';
    return *this;
  }
  static std::string cell(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return format_real(v);
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

// value <= bound
CriterionResult at_most(std::string name, double value, double bound) {
  return {std::move(name), value, bound, bound - value, value <= bound};
}
// value >= bound
CriterionResult at_least(std::string name, double value, double bound) {
  return {std::move(name), value, bound, value - bound, value >= bound};
}

Index3 probe_point(const ExperimentSpec& spec, const VoxelDomain& domain) {
  return spec.x0 ? *spec.x0 : domain.node(domain.deepest_node());
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ReportBundle run_eigen(const ExperimentSpec& spec, const DomainPtr& domain) {
  EigenOptions opts;
  opts.seed = spec.seed;
  const auto pairs = compute_eigenpairs(domain, spec.m, opts);
  const auto rows = check_corollary2(pairs, spec.tol);
  Csv csv{"n", "lambda", "sup", "cor2_ratio", "residual"};
  double worst_ratio = 0.0, worst_resid = 0.0;
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    const double resid = eigen_residual(pairs[n]) / pairs[n].lambda;
    csv.row({static_cast<double>(n + 1), pairs[n].lambda, rows[n].sup, rows[n].ratio, resid});
    worst_ratio = std::max(worst_ratio, rows[n].ratio);
    worst_resid = std::max(worst_resid, resid);
  }
  return {spec.name, csv.str(), {},
          {at_most("corollary2_max_ratio", worst_ratio, 1.0 + spec.tol),
           at_most("max_relative_residual", worst_resid, opts.tol_resid)}};
}

ReportBundle run_quotient(const ExperimentSpec& spec, const DomainPtr& domain) {
  EigenOptions opts;
  opts.seed = spec.seed;
  const auto pairs = compute_eigenpairs(domain, spec.m, opts);
  const Index3 x0 = probe_point(spec, *domain);
  const double sharp = sharp_quotient_bound();
  Csv csv{"m", "mu", "q_max", "closed_form", "oracle", "gap_closed_form", "gap_oracle", "gap_sharp"};
  double worst_q = 0.0, worst_closed = 0.0, worst_oracle = 0.0;
  const auto values = point_values(pairs, x0);
  for (int m = 1; m <= spec.m; ++m) {
    const std::span<const EigenPair> span(pairs.data(), static_cast<std::size_t>(m));
    if (std::all_of(values.begin(), values.begin() + m, [](double a) { return a == 0.0; })) continue;
    const QuotientResult r = maximize_over_span(span, x0);
    const double closed = closed_form_maximum(eigenvalues(span), point_values(span, x0), r.mu);
    double oracle = std::nan("");
    if (m <= 8) {
      BruteForceOptions bf;
      bf.seed = spec.seed;
      oracle = brute_force_maximize(span, x0, bf).q_max;
      worst_oracle = std::max(worst_oracle, relative_gap(r.q_max, oracle));
    }
    worst_q = std::max(worst_q, r.q_max);
    worst_closed = std::max(worst_closed, relative_gap(r.q_max, closed));
    csv.row({static_cast<double>(m), r.mu, r.q_max, closed, oracle, closed - r.q_max,
             std::isnan(oracle) ? oracle : oracle - r.q_max, sharp - r.q_max});
  }
  return {spec.name, csv.str(), {},
          {at_most("q_max_over_sharp", worst_q / sharp, 1.0 + spec.tol),
           at_most("closed_form_rel_gap", worst_closed, 1e-8),
           at_most("oracle_rel_gap", worst_oracle, 1e-6)}};
}

ReportBundle run_green(const ExperimentSpec& spec, const DomainPtr& domain) {
  const Index3 x0 = probe_point(spec, *domain);
  Csv csv{"mu", "l2_sq", "bound", "margin", "worst_pointwise_violation", "min_value"};
  ReportBundle bundle{spec.name, {}, {}, {}};
  for (double mu : spec.mu) {
    const GreenSolution g = solve_green(domain, x0, mu);
    const L2Report l2 = check_l2_bound(g, spec.tol);
    const PointwiseReport pw = check_pointwise_bound(g, spec.tol);
    csv.row({mu, l2.l2_sq, l2.bound, l2.margin, pw.worst_rel_violation, pw.min_value});
    const std::string tag = "mu=" + format_real(mu);
    bundle.criteria.push_back(at_most("l2_bound_" + tag, l2.l2_sq, (1.0 + spec.tol) * l2.bound));
    bundle.criteria.push_back(at_least("min_value_" + tag, pw.min_value, -kGreenTolNeg));
    bundle.criteria.push_back(
        at_most("pointwise_violation_" + tag, pw.worst_rel_violation, spec.tol));

    Csv radial{"r", "mean_g", "fundamental", "count"};
    for (const auto& b : radial_profile(g, domain->spacing()))
      radial.row({b.r, b.mean_g, b.fundamental, static_cast<double>(b.count)});
    bundle.extra_csv["radial_" + tag + ".csv"] = radial.str();
  }
  bundle.csv = csv.str();
  return bundle;
}

ReportBundle run_extremal(const ExperimentSpec& spec, const DomainPtr& domain) {
  const double sharp = sharp_quotient_bound();
  Csv csv{"R", "sup", "grad_sq", "lap_sq", "quotient", "embedded_quotient"};
  ReportBundle bundle{spec.name, {}, {}, {}};

  const RadialIntegrals uncut = radial_integrals(extremal_profile());
  csv.row({std::numeric_limits<double>::infinity(), uncut.sup, uncut.grad_sq, uncut.lap_sq,
           uncut.quotient(), std::nan("")});
  bundle.criteria.push_back(at_most("uncut_grad_sq_error", std::abs(uncut.grad_sq - 2 * pi), 1e-6));
  bundle.criteria.push_back(at_most("uncut_lap_sq_error", std::abs(uncut.lap_sq - 2 * pi), 1e-6));
  bundle.criteria.push_back(
      at_most("uncut_quotient_error", std::abs(uncut.quotient() - sharp), 1e-6));

  for (double R : spec.cutoff_radii) {
    const RadialProfile profile = cutoff_sequence(R);
    const RadialIntegrals ri = radial_integrals(profile);
    const ScalarField field = embed_in_domain(profile, domain);
    const double embedded = quotient(field, embedding_center(*domain));
    csv.row({R, ri.sup, ri.grad_sq, ri.lap_sq, ri.quotient(), embedded});
    const std::string tag = "R=" + format_real(R);
    bundle.criteria.push_back(at_most("embedded_over_sharp_" + tag, embedded / sharp, 1.0 + spec.tol));
    bundle.criteria.push_back(at_most("radial_over_sharp_" + tag, ri.quotient() / sharp, 1.0 + spec.tol));
    if (spec.min_sharpness > 0.0)
      bundle.criteria.push_back(
          at_least("embedded_sharpness_" + tag, embedded / sharp, spec.min_sharpness));
  }

  Csv prof{"r", "u"};
  const RadialProfile p = extremal_profile(40.0, 801);
  for (std::size_t i = 0; i < p.r_nodes.size(); ++i) prof.row({p.r_nodes[i], p.values[i]});
  bundle.extra_csv["profile.csv"] = prof.str();
  bundle.csv = csv.str();
  return bundle;
}

ReportBundle run_burgers(const ExperimentSpec& spec, const DomainPtr& domain) {
  const double y0 = spec.y0 > 0.0 ? spec.y0 : std::sqrt(256.0 * pi * pi * std::pow(spec.nu, 3) / 27.0);
  BurgersState init{make_initial_data(domain, spec.fixture, y0), 0.0, spec.nu};
  const double T = blowup_horizon(y0, spec.nu);
  BurgersRunOptions opts;
  opts.t_end = spec.tend_frac * T;
  const BurgersRun run = simulate(init, opts);
  const MonitorReport rep = monitor_bounds(run.monitor, spec.tol);

  Csv csv{"t", "y", "d", "dissipation", "energy_bound", "dissipation_bound", "sup",
          "pointwise_margin", "identity_residual"};
  double worst_q = 0.0;
  for (std::size_t i = 0; i < run.monitor.samples.size(); ++i) {
    const auto& s = run.monitor.samples[i];
    const auto& r = rep.rows[i];
    csv.row({s.t, s.y, s.d, s.dissipation, r.energy_bound, r.dissipation_bound, s.sup,
             r.pointwise_margin, s.identity_residual});
    worst_q = std::max(worst_q, run.snapshot_quotients[i]);
  }
  return {spec.name, csv.str(), {},
          {at_most("energy_ratio", rep.worst_energy_ratio, 1.0 + spec.tol),
           at_most("dissipation_ratio", rep.worst_dissipation_ratio, 1.0 + spec.tol),
           at_most("pointwise_ratio", rep.worst_pointwise_ratio, 1.0 + spec.tol),
           at_most("snapshot_quotient_over_sharp", worst_q / sharp_quotient_bound(), 1.0 + spec.tol)}};
}

ReportBundle run_full_chain(const ExperimentSpec& spec, const DomainPtr& domain) {
  EigenOptions opts;
  opts.seed = spec.seed;
  const auto pairs = compute_eigenpairs(domain, spec.m, opts);
  const Index3 x0 = probe_point(spec, *domain);
  const QuotientResult qr = maximize_over_span(pairs, x0);
  const GreenSolution g = solve_green(domain, x0, qr.mu);
  const ChainReport chain = step2_chain_check(pairs, x0, g.field, qr.mu);
  Csv csv{"m", "mu", "q_max", "eigen_sum", "green_term", "sharp", "gap_closed_form",
          "gap_parseval", "gap_sharp"};
  csv.row({static_cast<double>(spec.m), qr.mu, chain.q_max, chain.eigen_sum, chain.green_term,
           chain.sharp, chain.gap_closed_form(), chain.gap_parseval(), chain.gap_sharp()});
  return {spec.name, csv.str(), {},
          {at_least("gap_closed_form", chain.gap_closed_form(), -1e-6),
           at_least("gap_parseval", chain.gap_parseval(), -1e-6),
           at_least("gap_sharp", chain.gap_sharp(), -1e-6)}};
}

}  // namespace

ReportBundle run(const ExperimentSpec& spec) {
  if (!(spec.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const DomainPtr domain = VoxelDomain::build(spec.domain);
  ReportBundle bundle;
  switch (spec.kind) {
    case ExperimentKind::Eigen: bundle = run_eigen(spec, domain); break;
    case ExperimentKind::Quotient: bundle = run_quotient(spec, domain); break;
    case ExperimentKind::Green: bundle = run_green(spec, domain); break;
    case ExperimentKind::Extremal: bundle = run_extremal(spec, domain); break;
    case ExperimentKind::Burgers: bundle = run_burgers(spec, domain); break;
    case ExperimentKind::FullChain: bundle = run_full_chain(spec, domain); break;
  }
  if (bundle.name.empty()) bundle.name = to_string(spec.kind);
  return bundle;
}

void write_report(const ReportBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
  };
  write(dir / (bundle.name + ".csv"), bundle.csv);
  write(dir / (bundle.name + ".json"), bundle.summary().dump(2) + "\n");
  for (const auto& [suffix, text] : bundle.extra_csv)
    write(dir / (bundle.name + "_" + suffix), text);

  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  write(dir / (bundle.name + ".meta.json"),
        nlohmann::json{{"experiment", bundle.name}, {"written_at", stamp}}.dump(2) + "\n");
}

ExperimentSpec parse_experiment(const nlohmann::json& e) {
  if (!e.is_object()) throw std::invalid_argument("experiment entry must be an object");
  ExperimentSpec spec;
  spec.kind = experiment_from_string(e.at("kind").get<std::string>());
  spec.name = e.value("name", to_string(spec.kind));
  if (e.contains("domain")) {
    const auto& d = e.at("domain");
    spec.domain.shape = shape_from_string(d.value("shape", std::string("box")));
    if (d.contains("dims")) {
      const auto& dims = d.at("dims");
      if (dims.is_number_integer()) {
        const int n = dims.get<int>();
        spec.domain.dims = {n, n, n};
      } else {
        spec.domain.dims = dims.get<std::array<int, 3>>();
      }
    }
    spec.domain.h = d.value("h", 1.0 / (spec.domain.dims[0] - 1));
    if (d.contains("radius")) spec.domain.radius = d.at("radius").get<double>();
  }
  if (e.contains("x0")) {
    const auto p = e.at("x0").get<std::array<int, 3>>();
    spec.x0 = Index3{p[0], p[1], p[2]};
  }
  spec.m = e.value("m", spec.m);
  spec.mu = e.value("mu", spec.mu);
  spec.cutoff_radii = e.value("R", spec.cutoff_radii);
  spec.nu = e.value("nu", spec.nu);
  spec.tend_frac = e.value("tend_frac", spec.tend_frac);
  spec.y0 = e.value("y0", spec.y0);
  spec.tol = e.value("tol", spec.tol);
  spec.min_sharpness = e.value("min_sharpness", spec.min_sharpness);
  spec.seed = e.value("seed", spec.seed);
  if (e.contains("fixture")) {
    const auto f = e.at("fixture").get<std::string>();
    if (f == "sine") spec.fixture = BurgersFixture::SineModes;
    else if (f == "bumps") spec.fixture = BurgersFixture::ExtremalBumps;
    else if (f == "single") spec.fixture = BurgersFixture::SingleMode;
    else throw std::invalid_argument("unknown fixture '" + f + "'");
  }
  if (!(spec.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  return spec;
}

std::vector<ExperimentSpec> parse_manifest(const nlohmann::json& manifest) {
  if (!manifest.is_object() || !manifest.contains("experiments") ||
      !manifest.at("experiments").is_array() || manifest.at("experiments").empty())
    throw std::invalid_argument("manifest needs a non-empty 'experiments' array");
  std::vector<ExperimentSpec> specs;
  for (const auto& e : manifest.at("experiments")) {
    ExperimentSpec s = parse_experiment(e);
    for (const auto& other : specs)
      if (other.name == s.name) throw std::invalid_argument("duplicate experiment name '" + s.name + "'");
    specs.push_back(std::move(s));
  }
  return specs;
}

}  // namespace sharpbound
