// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "sharpbound/burgers_sim.hpp"
#include "sharpbound/grid_domain.hpp"

namespace sharpbound {

enum class ExperimentKind { Eigen, Quotient, Green, Extremal, Burgers, FullChain };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_from_string(const std::string& name);

inline constexpr std::uint64_t kDefaultSeed = 0xB0DE;

struct ExperimentSpec {
  std::string name;
  ExperimentKind kind = ExperimentKind::Quotient;
  DomainSpec domain{ShapeTag::Box, {25, 25, 25}, 1.0 / 24.0, std::nullopt};
  std::optional<Index3> x0;  // default: deepest interior node
  int m = 10;
  std::vector<double> mu{1.0, 4.0, 10.0};
  std::vector<double> cutoff_radii{10.0, 20.0, 40.0, 80.0};
  double nu = 1.0;
  double tend_frac = 0.5;
  /// Burgers initial Dirichlet energy; 0 picks the value giving T = 1.
  double y0 = 0.0;
  BurgersFixture fixture = BurgersFixture::SineModes;
  double tol = 0.05;
  /// Extremal runs: when positive, also require embedded quotient·2π >= this.
  double min_sharpness = 0.0;
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path out;
};

struct CriterionResult {
  std::string criterion;
  double value;
  double bound;
  double margin;
  bool pass;
};

struct ReportBundle {
  std::string name;
  std::string csv;
  /// Additional plot-ready files keyed by suffix (e.g. "radial.csv").
  std::map<std::string, std::string> extra_csv;
  std::vector<CriterionResult> criteria;

  bool pass() const;
  nlohmann::json summary() const;
};

/// Runs one experiment. Module errors propagate as exceptions.
ReportBundle run(const ExperimentSpec& spec);

/// Writes <name>.csv, <name>.json and extras into `dir`; the timestamp goes
/// to <name>.meta.json so the other files stay byte-reproducible.
void write_report(const ReportBundle& bundle, const std::filesystem::path& dir);

/// Manifest: {"experiments": [{"name": ..., "kind": ..., "domain": {...}, ...}]}.
/// Throws std::invalid_argument on a malformed manifest or duplicate names.
std::vector<ExperimentSpec> parse_manifest(const nlohmann::json& manifest);
ExperimentSpec parse_experiment(const nlohmann::json& entry);

}  // namespace sharpbound
