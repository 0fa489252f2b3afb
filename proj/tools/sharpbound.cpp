// SPDX-License-Identifier: Apache-2.0
// Command-line experiment runner.
//
// Exit codes: 0 all criteria pass, 1 some criterion fails, 2 usage or
// configuration error, 3 error raised while running an experiment.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sharpbound/error.hpp"
#include "sharpbound/experiments.hpp"
#include "sharpbound/field_io.hpp"

namespace sb = sharpbound;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string domain = "box";
  std::vector<int> dims;
  double h = 0.0;
  double radius = 0.0;
  std::vector<int> x0;
  int m = 10;
  std::vector<double> mu;
  std::vector<double> R;
  double nu = 1.0;
  double tend_frac = 0.5;
  double y0 = 0.0;
  std::string fixture;
  double tol = 0.05;
  double min_sharpness = 0.0;
  std::uint64_t seed = sb::kDefaultSeed;
  std::string out;
  std::string manifest;
  std::string kind;
};

void add_common(CLI::App* app, Flags& f) {
  app->set_help_flag("--help", "print this help");  // -h is the grid spacing
  app->add_option("--domain", f.domain, "box, lshape, ball, or a domain config file");
  app->add_option("--dims", f.dims, "node counts: one value or three")->expected(1, 3);
  app->add_option("--h", f.h, "grid spacing (default 1/(dims-1))");
  app->add_option("--radius", f.radius, "ball radius");
  app->add_option("--x0", f.x0, "probe node i j k (default deepest node)")->expected(3);
  app->add_option("--m", f.m, "number of eigenpairs");
  app->add_option("--mu", f.mu, "Helmholtz parameters");
  app->add_option("--R", f.R, "cutoff radii");
  app->add_option("--nu", f.nu, "viscosity");
  app->add_option("--tend-frac", f.tend_frac, "end time as a fraction of the horizon T");
  app->add_option("--y0", f.y0, "initial Dirichlet energy (default: T = 1)");
  app->add_option("--fixture", f.fixture, "burgers initial data: sine, bumps, single");
  app->add_option("--tol", f.tol, "discretization tolerance");
  app->add_option("--min-sharpness", f.min_sharpness, "extremal: required embedded quotient * 2pi");
  app->add_option("--seed", f.seed, "RNG seed");
  app->add_option("--out", f.out, "directory for CSV/JSON reports");
}

sb::DomainSpec domain_from_flags(const Flags& f) {
  sb::DomainSpec d{sb::ShapeTag::Box, {25, 25, 25}, 0.0, std::nullopt};
  if (std::filesystem::is_regular_file(f.domain)) {
    std::ifstream in(f.domain);
    std::stringstream text;
    text << in.rdbuf();
    if (text.str().find_first_not_of(" \t\r\n") == std::string::npos)
      throw ConfigError("domain config '" + f.domain + "' is empty");
    d = sb::parse_domain_config_text(text.str());
  } else {
    d.shape = sb::shape_from_string(f.domain);
  }
  if (f.dims.size() == 1) d.dims = {f.dims[0], f.dims[0], f.dims[0]};
  if (f.dims.size() == 3) d.dims = {f.dims[0], f.dims[1], f.dims[2]};
  if (f.h > 0.0) d.h = f.h;
  else if (!f.dims.empty() || d.h <= 0.0) d.h = 1.0 / (d.dims[0] - 1);
  if (f.radius > 0.0) d.radius = f.radius;
  return d;
}

sb::ExperimentSpec spec_from_flags(const Flags& f, sb::ExperimentKind kind) {
  sb::ExperimentSpec s;
  s.kind = kind;
  s.name = sb::to_string(kind);
  s.domain = domain_from_flags(f);
  if (f.x0.size() == 3) s.x0 = sb::Index3{f.x0[0], f.x0[1], f.x0[2]};
  s.m = f.m;
  if (!f.mu.empty()) s.mu = f.mu;
  if (!f.R.empty()) s.cutoff_radii = f.R;
  s.nu = f.nu;
  s.tend_frac = f.tend_frac;
  s.y0 = f.y0;
  if (f.fixture == "sine") s.fixture = sb::BurgersFixture::SineModes;
  else if (f.fixture == "bumps") s.fixture = sb::BurgersFixture::ExtremalBumps;
  else if (f.fixture == "single") s.fixture = sb::BurgersFixture::SingleMode;
  else if (!f.fixture.empty()) throw ConfigError("unknown fixture '" + f.fixture + "'");
  if (!(f.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (f.m < 1) throw ConfigError("--m must be at least 1");
  s.tol = f.tol;
  s.min_sharpness = f.min_sharpness;
  s.seed = f.seed;
  s.out = f.out;
  return s;
}

std::vector<sb::ExperimentSpec> manifest_specs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest '" + path + "'");
  std::stringstream text;
  text << in.rdbuf();
  if (text.str().find_first_not_of(" \t\r\n") == std::string::npos)
    throw ConfigError("manifest '" + path + "' is empty");
  try {
    return sb::parse_manifest(nlohmann::json::parse(text.str()));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("manifest '" + path + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("manifest '" + path + "': " + e.what());
  }
}

int execute(const std::vector<sb::ExperimentSpec>& specs, const std::string& out_dir) {
  bool all_pass = true;
  for (const auto& spec : specs) {
    sb::ReportBundle bundle;
    try {
      bundle = sb::run(spec);
    } catch (const sb::ConvergenceError& e) {
      std::cerr << "error in '" << spec.name << "': " << e.what() << " (residual " << e.residual()
                << " after " << e.iterations() << " iterations)\n";
      return kExitRuntime;
    } catch (const std::exception& e) {
      std::cerr << "error in '" << spec.name << "': " << e.what() << "\n";
      return kExitRuntime;
    }
    if (specs.size() > 1) std::cout << "# " << bundle.name << "\n";
    std::cout << bundle.csv;
    for (const auto& c : bundle.criteria)
      std::cerr << (c.pass ? "PASS " : "FAIL ") << bundle.name << "/" << c.criterion
                << " value=" << c.value << " bound=" << c.bound << "\n";
    const std::string dir = !out_dir.empty() ? out_dir : spec.out.string();
    if (!dir.empty()) sb::write_report(bundle, dir);
    all_pass = all_pass && bundle.pass();
  }
  return all_pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharp sup-norm bound experiments on voxel domains"};
  app.require_subcommand(1);
  Flags flags;

  std::vector<std::pair<CLI::App*, sb::ExperimentKind>> kinds;
  for (auto kind : {sb::ExperimentKind::Eigen, sb::ExperimentKind::Quotient,
                    sb::ExperimentKind::Green, sb::ExperimentKind::Extremal,
                    sb::ExperimentKind::Burgers, sb::ExperimentKind::FullChain}) {
    CLI::App* sub = app.add_subcommand(sb::to_string(kind), "run the " + sb::to_string(kind) + " experiment");
    add_common(sub, flags);
    kinds.emplace_back(sub, kind);
  }
  CLI::App* run = app.add_subcommand("run", "run a named experiment or a manifest");
  add_common(run, flags);
  run->add_option("kind", flags.kind, "experiment kind");
  run->add_option("--manifest", flags.manifest, "JSON manifest of experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    std::vector<sb::ExperimentSpec> specs;
    if (run->parsed()) {
      if (!flags.manifest.empty()) {
        if (!flags.kind.empty()) throw ConfigError("give either a kind or --manifest, not both");
        specs = manifest_specs(flags.manifest);
      } else if (!flags.kind.empty()) {
        specs.push_back(spec_from_flags(flags, sb::experiment_from_string(flags.kind)));
      } else {
        throw ConfigError("run needs an experiment kind or --manifest\n" + run->help());
      }
    } else {
      for (const auto& [sub, kind] : kinds)
        if (sub->parsed()) specs.push_back(spec_from_flags(flags, kind));
    }
    return execute(specs, flags.out);
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kExitUsage;
  }
}
