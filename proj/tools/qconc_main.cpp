// qconc: generalized concurrence toolkit command line.
//
// Subcommands: concurrence, schmidt, bound, roof, healthcheck, random.
// Exit codes: 0 success, 2 input/validation error, 3 kind/support violation,
// 4 resource cap exceeded, 5 numerical-integrity failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qconc/bounds.hpp"
#include "qconc/concurrence.hpp"
#include "qconc/io.hpp"
#include "qconc/projectors.hpp"
#include "qconc/states.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qconc;

namespace {

constexpr double kHealthDefectTol = 1e-10;

std::vector<std::string> expand_inputs(const std::vector<std::string>& paths) {
  std::vector<std::string> files;
  for (const auto& path : paths) {
    if (fs::is_directory(path)) {
      std::vector<std::string> batch;
      for (const auto& entry : fs::directory_iterator(path))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
          batch.push_back(entry.path().string());
      std::sort(batch.begin(), batch.end());
      files.insert(files.end(), batch.begin(), batch.end());
    } else {
      files.push_back(path);
    }
  }
  if (files.empty()) throw ValidationError("no input files");
  return files;
}

void emit(const json& report, const std::string& output_path) {
  if (output_path.empty())
    std::cout << report.dump(2) << '\n';
  else
    write_json_file(output_path, report);
}

void emit_csv(const std::string& header, const std::vector<std::string>& rows,
              const std::string& output_path) {
  std::ostringstream out;
  out << header << '\n';
  for (const auto& row : rows) out << row << '\n';
  if (output_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file(output_path);
    if (!file) throw ValidationError("cannot write file '" + output_path + "'");
    file << out.str();
  }
}

std::string join(const std::vector<double>& values, char sep) {
  std::ostringstream out;
  out.precision(17);
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out << sep;
    out << values[i];
  }
  return out.str();
}

// Runs one job per input in parallel, preserving input order in the report.
template <typename Fn>
std::vector<json> map_inputs(const std::vector<std::string>& files, Fn&& fn) {
  std::vector<std::future<json>> futures;
  futures.reserve(files.size());
  for (const auto& file : files)
    futures.push_back(std::async(std::launch::async, fn, file));
  std::vector<json> reports;
  reports.reserve(files.size());
  for (auto& f : futures) reports.push_back(f.get());
  return reports;
}

json reports_to_output(std::vector<json> reports) {
  if (reports.size() == 1) return std::move(reports.front());
  return json(std::move(reports));
}

int run_concurrence(const std::vector<std::string>& inputs, const std::string& method_name,
                    double tol, std::int64_t dense_cap, bool csv,
                    const std::string& output) {
  const EvalMethod method = eval_method_from_string(method_name);
  const auto files = expand_inputs(inputs);
  auto reports = map_inputs(files, [&](const std::string& file) {
    const PureState psi = read_pure_state(file);
    const ConcurrenceResult result = concurrence_pure(psi, method, dense_cap);
    std::vector<double> bipartitions;
    for (int s = 0; s < psi.shape.num_particles; ++s)
      bipartitions.push_back(bipartition_value(psi, s));
    return json{{"input", file},
                {"kind", to_string(psi.shape.kind)},
                {"L", psi.shape.num_particles},
                {"N", psi.shape.local_dim},
                {"concurrence", result.value},
                {"expectation", result.expectation},
                {"method", to_string(result.method) + "-path"},
                {"coherent", result.value <= tol},
                {"tolerance", tol},
                {"bipartition_values", bipartitions}};
  });
  if (csv) {
    std::vector<std::string> rows;
    for (const auto& r : reports) {
      std::ostringstream row;
      row.precision(17);
      row << r["input"].get<std::string>() << ',' << r["kind"].get<std::string>() << ','
          << r["L"].get<int>() << ',' << r["N"].get<int>() << ','
          << r["concurrence"].get<double>() << ',' << r["expectation"].get<double>() << ','
          << r["method"].get<std::string>() << ',' << (r["coherent"].get<bool>() ? 1 : 0)
          << ',' << join(r["bipartition_values"].get<std::vector<double>>(), ';');
      rows.push_back(row.str());
    }
    emit_csv("input,kind,L,N,concurrence,expectation,method,coherent,bipartition_values",
             rows, output);
  } else {
    emit(reports_to_output(std::move(reports)), output);
  }
  return 0;
}

int run_schmidt(const std::string& input, int site, const std::string& output) {
  const PureState psi = read_pure_state(input);
  if (site < 1 || site > psi.shape.num_particles)
    throw ValidationError("--site must lie in 1..L");
  const auto coeffs = schmidt_coefficients(psi, site - 1);
  emit(json{{"input", input}, {"site", site}, {"coefficients", coeffs}}, output);
  return 0;
}

int run_bound(const std::vector<std::string>& inputs, const std::string& method_name,
              std::int64_t dense_cap, bool csv, const std::string& output) {
  const EvalMethod method = eval_method_from_string(method_name);
  const auto files = expand_inputs(inputs);
  auto reports = map_inputs(files, [&](const std::string& file) {
    const MixedState rho = read_mixed_state(file);
    BoundReport report;
    switch (rho.shape.kind) {
      case ParticleKind::distinguishable: report = mb_bound(rho, method, dense_cap); break;
      case ParticleKind::boson: report = mb_bound_bosonic(rho, method, dense_cap); break;
      case ParticleKind::fermion: report = fermionic_detection(rho, method, dense_cap); break;
    }
    return json{{"input", file},
                {"kind", to_string(rho.shape.kind)},
                {"L", rho.shape.num_particles},
                {"N", rho.shape.local_dim},
                {"witness", report.witness},
                {"lower_bound", report.lower_bound},
                {"detected", report.detected},
                {"method", to_string(method)}};
  });
  if (csv) {
    std::vector<std::string> rows;
    for (const auto& r : reports) {
      std::ostringstream row;
      row.precision(17);
      row << r["input"].get<std::string>() << ',' << r["kind"].get<std::string>() << ','
          << r["L"].get<int>() << ',' << r["N"].get<int>() << ','
          << r["witness"].get<double>() << ',' << r["lower_bound"].get<double>() << ','
          << (r["detected"].get<bool>() ? 1 : 0);
      rows.push_back(row.str());
    }
    emit_csv("input,kind,L,N,witness,lower_bound,detected", rows, output);
  } else {
    emit(reports_to_output(std::move(reports)), output);
  }
  return 0;
}

RoofOptions merge_options_file(RoofOptions options, const std::string& path) {
  if (path.empty()) return options;
  const json file = load_json_file(path);
  try {
    if (file.contains("ensemble_size")) options.ensemble_size = file["ensemble_size"].get<int>();
    if (file.contains("restarts")) options.restarts = file["restarts"].get<int>();
    if (file.contains("max_iterations"))
      options.max_iterations = file["max_iterations"].get<int>();
    if (file.contains("tolerance")) options.tolerance = file["tolerance"].get<double>();
    if (file.contains("seed")) options.seed = file["seed"].get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad optimizer options file: ") + e.what());
  }
  return options;
}

int run_roof(const std::vector<std::string>& inputs, const RoofOptions& options,
             bool csv, const std::string& output) {
  const auto files = expand_inputs(inputs);
  auto reports = map_inputs(files, [&](const std::string& file) {
    const MixedState rho = read_mixed_state(file);
    const RoofEstimate estimate = convex_roof_upper(rho, options);
    json states = json::array();
    for (const auto& psi : estimate.decomposition.states)
      states.push_back(pure_state_to_json(psi));
    return json{{"input", file},
                {"value", estimate.value},
                {"restarts_used", estimate.restarts_used},
                {"converged", estimate.converged},
                {"decomposition",
                 json{{"weights", estimate.decomposition.weights}, {"states", states}}}};
  });
  if (csv) {
    std::vector<std::string> rows;
    for (const auto& r : reports) {
      std::ostringstream row;
      row.precision(17);
      row << r["input"].get<std::string>() << ',' << r["value"].get<double>() << ','
          << r["restarts_used"].get<int>() << ',' << (r["converged"].get<bool>() ? 1 : 0);
      rows.push_back(row.str());
    }
    emit_csv("input,value,restarts_used,converged", rows, output);
  } else {
    emit(reports_to_output(std::move(reports)), output);
  }
  return 0;
}

int run_healthcheck(int grid_l, int grid_n, std::int64_t dense_cap, double tol,
                    const std::string& output) {
  if ((grid_l > 0) != (grid_n > 0))
    throw ValidationError("give both --L and --N to select a single grid point");
  std::vector<std::pair<int, int>> grid;
  if (grid_l > 0 && grid_n > 0)
    grid = {{grid_l, grid_n}};
  else
    grid = {{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}};

  struct Point {
    ProjectorTag tag;
    SystemShape shape;
  };
  std::vector<Point> points;
  for (const auto& [l, n] : grid) {
    points.push_back({ProjectorTag::pd, {ParticleKind::distinguishable, l, n}});
    points.push_back({ProjectorTag::pb, {ParticleKind::boson, l, n}});
    if (n >= l) points.push_back({ProjectorTag::pf, {ParticleKind::fermion, l, n}});
  }

  std::vector<std::future<json>> futures;
  for (const auto& point : points)
    futures.push_back(std::async(std::launch::async, [point, dense_cap, tol] {
      const auto spec = ProjectorSpec::make(point.tag, point.shape);
      const HealthReport report = projector_healthcheck(spec, dense_cap);
      return json{{"tag", to_string(point.tag)},
                  {"L", point.shape.num_particles},
                  {"N", point.shape.local_dim},
                  {"alpha", spec.alpha},
                  {"idempotence", report.idempotence},
                  {"hermiticity", report.hermiticity},
                  {"highest_weight_fixation", report.highest_weight_fixation},
                  {"subspace_preservation", report.subspace_preservation},
                  {"pass", report.max_defect() <= tol}};
    }));

  json entries = json::array();
  bool all_pass = true;
  for (auto& f : futures) {
    json entry = f.get();
    all_pass = all_pass && entry["pass"].get<bool>();
    entries.push_back(std::move(entry));
  }
  emit(json{{"grid", entries}, {"all_pass", all_pass}, {"tolerance", tol}}, output);
  return all_pass ? 0 : 1;
}

int run_random(const std::string& kind_name, int num_particles, int local_dim, int rank,
               std::uint64_t seed, const std::string& output) {
  SystemShape shape{particle_kind_from_string(kind_name), num_particles, local_dim};
  shape.validate();
  if (rank < 0) throw ValidationError("--rank must be nonnegative");
  json file;
  if (rank > 0)
    file = mixed_state_to_json(random_mixed(shape, rank, seed));
  else
    file = pure_state_to_json(random_pure(shape, seed));
  emit(file, output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized concurrence toolkit for distinguishable particles, bosons and fermions"};
  app.require_subcommand(1);

  std::vector<std::string> inputs;
  std::string output;
  std::string method = "purity";
  bool csv = false;
  double tol = 1e-7;
  std::int64_t dense_cap = kDefaultDenseCap;

  auto* conc = app.add_subcommand("concurrence", "pure-state concurrence and coherence report");
  conc->add_option("inputs", inputs, "state files or directories")->required();
  conc->add_option("--method", method, "evaluation path: purity | two-copy | dense");
  conc->add_option("--tol", tol, "coherence tolerance on the concurrence");
  conc->add_option("--dense-cap", dense_cap, "largest two-copy dimension to materialize");
  conc->add_flag("--csv", csv, "emit one CSV row per input");
  conc->add_option("--output", output, "write the report to this file");

  int site = 1;
  auto* schmidt = app.add_subcommand("schmidt", "Schmidt coefficients across one site");
  schmidt->add_option("input", inputs, "state file")->required();
  schmidt->add_option("--site", site, "1-based site index")->required();
  schmidt->add_option("--output", output, "write the report to this file");

  auto* bound = app.add_subcommand("bound", "two-copy witness lower bound for a density file");
  bound->add_option("inputs", inputs, "density files or directories")->required();
  bound->add_option("--method", method, "evaluation path: purity | dense");
  bound->add_option("--dense-cap", dense_cap, "largest two-copy dimension to materialize");
  bound->add_flag("--csv", csv, "emit one CSV row per input");
  bound->add_option("--output", output, "write the report to this file");

  RoofOptions roof_options;
  auto* roof = app.add_subcommand("roof", "convex-roof upper estimate for a density file");
  roof->add_option("inputs", inputs, "density files or directories")->required();
  roof->add_option("--restarts", roof_options.restarts, "random restarts");
  roof->add_option("--max-iters", roof_options.max_iterations, "polish sweeps per restart");
  roof->add_option("--ensemble-size", roof_options.ensemble_size,
                   "decomposition size (default: twice the rank)");
  roof->add_option("--roof-tol", roof_options.tolerance, "stop when a sweep improves less");
  roof->add_option("--seed", roof_options.seed, "optimizer seed");
  std::string roof_options_file;
  roof->add_option("--options", roof_options_file,
                   "JSON file with optimizer options (flags win)");
  roof->add_flag("--csv", csv, "emit one CSV row per input");
  roof->add_option("--output", output, "write the report to this file");

  int grid_l = 0, grid_n = 0;
  double health_tol = kHealthDefectTol;
  auto* health = app.add_subcommand("healthcheck", "dense structural checks of the projectors");
  health->add_option("--L", grid_l, "restrict the grid to this particle count");
  health->add_option("--N", grid_n, "restrict the grid to this single-particle dimension");
  health->add_option("--dense-cap", dense_cap, "largest two-copy dimension to materialize");
  health->add_option("--tol", health_tol, "defect tolerance");
  health->add_option("--output", output, "write the report to this file");

  std::string kind = "distinguishable";
  int rand_l = 2, rand_n = 2, rank = 0;
  std::uint64_t seed = 1;
  auto* random = app.add_subcommand("random", "draw a random state or density file");
  random->add_option("--kind", kind, "distinguishable | boson | fermion");
  random->add_option("--L", rand_l, "particle count");
  random->add_option("--N", rand_n, "single-particle dimension");
  random->add_option("--rank", rank, "emit a density file of this rank (0: pure state)");
  random->add_option("--seed", seed, "generator seed");
  random->add_option("--output", output, "write the file here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (conc->parsed()) return run_concurrence(inputs, method, tol, dense_cap, csv, output);
    if (schmidt->parsed()) return run_schmidt(inputs.front(), site, output);
    if (bound->parsed()) return run_bound(inputs, method, dense_cap, csv, output);
    if (roof->parsed()) {
      RoofOptions merged = merge_options_file(roof_options, roof_options_file);
      for (const std::string flag : {"--restarts", "--max-iters", "--ensemble-size",
                                     "--roof-tol", "--seed"})
        if (roof->count(flag)) {
          if (flag == "--restarts") merged.restarts = roof_options.restarts;
          if (flag == "--max-iters") merged.max_iterations = roof_options.max_iterations;
          if (flag == "--ensemble-size") merged.ensemble_size = roof_options.ensemble_size;
          if (flag == "--roof-tol") merged.tolerance = roof_options.tolerance;
          if (flag == "--seed") merged.seed = roof_options.seed;
        }
      return run_roof(inputs, merged, csv, output);
    }
    if (health->parsed()) return run_healthcheck(grid_l, grid_n, dense_cap, health_tol, output);
    if (random->parsed()) return run_random(kind, rand_l, rand_n, rank, seed, output);
    throw ValidationError("no subcommand given");
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const KindError& e) {
    std::cerr << "kind error: " << e.what() << '\n';
    return 3;
  } catch (const CapError& e) {
    std::cerr << "cap error: " << e.what() << '\n';
    return 4;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
