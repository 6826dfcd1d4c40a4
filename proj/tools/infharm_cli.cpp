// Command-line front end: load a geometry pair and a coefficient matrix, then
// check harmonicity, classify against the family catalogue, enumerate value
// grids, or audit rank and energy constancy.  All symbolic computation is
// exact; JSON output renders expressions in the canonical grammar.
//
// Exit codes: 0 success, 1 an enumeration found mismatches, 2 input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "infharm/classify.hpp"
#include "infharm/errors.hpp"
#include "infharm/matrix_io.hpp"
#include "infharm/parser.hpp"

using json = nlohmann::ordered_json;
using namespace infharm;

namespace {

MetricRef resolve_geometry(const std::string& name) {
  if (name.rfind("file:", 0) == 0) return load_metric_file(name.substr(5));
  return builtin_geometry(name);
}

// --matrix accepts a file path, an inline JSON array of rows, or the
// shorthand diag(a,b,...) with rational entries.
RatMatrix resolve_matrix(const std::string& spec) {
  if (spec.rfind("[[", 0) == 0) return read_matrix_json(spec);
  if (spec.rfind("diag(", 0) == 0) {
    if (spec.back() != ')') throw IoError("unterminated diag(...) matrix");
    std::vector<Rational> d;
    std::string body = spec.substr(5, spec.size() - 6);
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      if (comma == std::string::npos) comma = body.size();
      std::string piece = body.substr(pos, comma - pos);
      piece.erase(0, piece.find_first_not_of(" \t"));
      piece.erase(piece.find_last_not_of(" \t") + 1);
      if (piece.empty()) throw IoError("empty entry in diag(...) matrix");
      d.push_back(parse_rational(piece));
      pos = comma + 1;
    }
    return RatMatrix::diag(d);
  }
  return read_matrix_file(spec);
}

std::vector<Rational> resolve_grid(const std::string& spec) {
  std::vector<Rational> values;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    std::string piece = spec.substr(pos, comma - pos);
    piece.erase(0, piece.find_first_not_of(" \t"));
    piece.erase(piece.find_last_not_of(" \t") + 1);
    if (piece.empty()) throw IoError("empty entry in grid value list");
    values.push_back(parse_rational(piece));
    pos = comma + 1;
  }
  return values;
}

json matrix_to_json(const RatMatrix& m) {
  return json::parse(write_matrix_json(m));
}

// Largest |residual| over ten seeded random points: an independent numeric
// cross-check shipped with every symbolic answer.
double residual_max(const PolyMap& phi) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<double> p(std::size_t(phi.domain->dim));
    for (auto& x : p) x = dist(rng);
    for (double r : numeric_residual(phi, p)) worst = std::max(worst, std::abs(r));
  }
  return worst;
}

struct Job {
  std::string domain;
  std::string target;
  std::string matrix;
  std::string grid;
  std::string format = "json";
  std::string output;
};

void emit(const Job& job, const std::string& text) {
  if (job.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(job.output);
  if (!out) throw IoError("cannot write output file '" + job.output + "'");
  out << text;
}

// Family ids for the matrix, or std::nullopt when the pair has no catalogue.
std::optional<std::vector<std::string>> try_classify(const RatMatrix& m, const MetricSpec& d,
                                                     const MetricSpec& t) {
  try {
    return classify_matrix(m, d, t);
  } catch (const UnclassifiedPair&) {
    return std::nullopt;
  }
}

int run_map_command(const Job& job, bool want_isometry) {
  const MetricRef domain = resolve_geometry(job.domain);
  const MetricRef target = resolve_geometry(job.target);
  const RatMatrix m = resolve_matrix(job.matrix);
  const PolyMap phi = PolyMap::from_matrix(domain, target, m);
  const TensionReport rep = tau_infinity(phi);
  const auto families = try_classify(m, *domain, *target);

  json out;
  out["domain"] = domain->name;
  out["target"] = target->name;
  out["matrix"] = matrix_to_json(m);
  out["harmonic"] = rep.harmonic;
  out["tau"] = json::array();
  for (const auto& t : rep.tau) out["tau"].push_back(t.str());
  out["energy"] = rep.energy.str();
  out["constant_energy"] = rep.constant_energy;
  if (families) {
    out["families"] = *families;
  } else {
    out["families"] = nullptr;
  }
  out["numeric_residual_max"] = residual_max(phi);
  if (want_isometry) out["isometry"] = is_isometry(phi);

  if (job.format == "json") {
    emit(job, out.dump(2) + "\n");
  } else {
    std::string text;
    text += "domain: " + domain->name + "\ntarget: " + target->name + "\n";
    text += "matrix: " + m.str() + "\n";
    text += std::string("harmonic: ") + (rep.harmonic ? "true" : "false") + "\n";
    for (std::size_t i = 0; i < rep.tau.size(); ++i)
      text += "tau[" + std::to_string(i + 1) + "]: " + rep.tau[i].str() + "\n";
    text += "energy: " + rep.energy.str() + "\n";
    text += std::string("constant_energy: ") + (rep.constant_energy ? "true" : "false") + "\n";
    if (families) {
      text += "families:";
      if (families->empty()) text += " (none)";
      for (const auto& id : *families) text += " " + id;
      text += "\n";
    } else {
      text += "families: (pair not classified)\n";
    }
    text += "numeric_residual_max: " + std::to_string(residual_max(phi)) + "\n";
    if (want_isometry)
      text += std::string("isometry: ") + (is_isometry(phi) ? "true" : "false") + "\n";
    emit(job, text);
  }
  return 0;
}

int run_classify_command(const Job& job) {
  const MetricRef domain = resolve_geometry(job.domain);
  const MetricRef target = resolve_geometry(job.target);
  const RatMatrix m = resolve_matrix(job.matrix);
  // Unlike check, classify demands a catalogued pair.
  const auto families = classify_matrix(m, *domain, *target);
  const PolyMap phi = PolyMap::from_matrix(domain, target, m);
  const TensionReport rep = tau_infinity(phi);

  json out;
  out["domain"] = domain->name;
  out["target"] = target->name;
  out["matrix"] = matrix_to_json(m);
  out["harmonic"] = rep.harmonic;
  out["families"] = families;

  if (job.format == "json") {
    emit(job, out.dump(2) + "\n");
  } else {
    std::string text = "matrix: " + m.str() + "\nfamilies:";
    if (families.empty()) text += " (none)";
    for (const auto& id : families) text += " " + id;
    text += std::string("\nharmonic: ") + (rep.harmonic ? "true" : "false") + "\n";
    emit(job, text);
  }
  return 0;
}

int run_enumerate(const Job& job) {
  const MetricRef domain = resolve_geometry(job.domain);
  const MetricRef target = resolve_geometry(job.target);
  const auto values = resolve_grid(job.grid);
  const EquivalenceReport rep = enumerate_equivalence(*domain, *target, values);

  if (job.format == "json") {
    json out;
    out["domain"] = rep.domain;
    out["target"] = rep.target;
    out["shape"] = {rep.rows, rep.cols};
    out["values"] = json::array();
    for (const auto& v : rep.values) out["values"].push_back(v.str());
    out["matrices"] = rep.total;
    out["harmonic"] = rep.harmonic_count;
    out["classified"] = rep.classified_count;
    out["mismatches"] = json::array();
    for (const auto& mm : rep.mismatches)
      out["mismatches"].push_back({{"matrix", matrix_to_json(mm.matrix)},
                                   {"harmonic", mm.harmonic},
                                   {"classified", mm.classified}});
    emit(job, out.dump(2) + "\n");
  } else {
    emit(job, rep.to_text());
  }
  return rep.consistent() ? 0 : 1;
}

int run_audit(const Job& job) {
  const MetricRef domain = resolve_geometry(job.domain);
  const MetricRef target = resolve_geometry(job.target);
  const auto values = resolve_grid(job.grid);
  const EnergyAudit audit = energy_constancy_audit(*domain, *target, values);

  if (job.format == "json") {
    json out;
    out["domain"] = domain->name;
    out["target"] = target->name;
    out["matrices"] = audit.total;
    out["harmonic"] = audit.harmonic_count;
    out["max_rank"] = audit.max_rank;
    out["rank_counts"] = json::object();
    for (const auto& [rank, count] : audit.rank_counts)
      out["rank_counts"][std::to_string(rank)] = count;
    out["constant_energy_rank_counts"] = json::object();
    for (const auto& [rank, count] : audit.constant_rank_counts)
      out["constant_energy_rank_counts"][std::to_string(rank)] = count;
    out["rank2_constant_examples"] = json::array();
    for (const auto& m : audit.rank2_constant_examples)
      out["rank2_constant_examples"].push_back(matrix_to_json(m));
    out["rank3_constant_nonisometry_examples"] = json::array();
    for (const auto& m : audit.rank3_constant_nonisometry_examples)
      out["rank3_constant_nonisometry_examples"].push_back(matrix_to_json(m));
    emit(job, out.dump(2) + "\n");
  } else {
    emit(job, audit.to_text());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact infinity-harmonicity checks for linear maps between model geometries"};
  app.require_subcommand(1);

  Job job;
  auto add_common = [&](CLI::App* cmd, bool needs_matrix, bool needs_grid) {
    cmd->add_option("--domain", job.domain, "domain geometry: euclidean:<n>, heisenberg, nil, sol, or file:<path>")
        ->required();
    cmd->add_option("--target", job.target, "target geometry, same names as --domain")->required();
    if (needs_matrix)
      cmd->add_option("--matrix", job.matrix,
                      "matrix: JSON file path, inline [[...],...], or diag(a,b,...)")
          ->required();
    if (needs_grid)
      cmd->add_option("--grid", job.grid, "comma-separated rational entry values, e.g. -1,0,1")
          ->required();
    cmd->add_option("--format", job.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--output", job.output, "write output to this file instead of stdout");
  };

  CLI::App* check = app.add_subcommand("check", "exact harmonicity report for one matrix");
  add_common(check, true, false);
  CLI::App* classify = app.add_subcommand("classify", "family membership for one matrix");
  add_common(classify, true, false);
  CLI::App* energy = app.add_subcommand("energy", "energy density report for one matrix");
  add_common(energy, true, false);
  CLI::App* isometry = app.add_subcommand("isometry", "pullback-metric isometry test");
  add_common(isometry, true, false);
  CLI::App* enumerate = app.add_subcommand("enumerate", "grid equivalence run over entry values");
  add_common(enumerate, false, true);
  CLI::App* audit = app.add_subcommand("audit", "rank and energy-constancy survey of a grid");
  add_common(audit, false, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed() || energy->parsed()) return run_map_command(job, false);
    if (isometry->parsed()) return run_map_command(job, true);
    if (classify->parsed()) return run_classify_command(job);
    if (enumerate->parsed()) return run_enumerate(job);
    if (audit->parsed()) return run_audit(job);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
