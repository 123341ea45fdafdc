#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hexpst/chains.hpp"
#include "hexpst/error.hpp"
#include "hexpst/hamiltonian.hpp"
#include "hexpst/lattice.hpp"
#include "hexpst/lattice_io.hpp"
#include "hexpst/report.hpp"
#include "hexpst/routing.hpp"

namespace hexpst::cli {

using nlohmann::json;

namespace {

VertexKey parse_vertex(const std::string& text) {
  std::istringstream ss(text);
  VertexKey k;
  char c1 = 0, c2 = 0;
  if (!(ss >> k.plane >> c1 >> k.row >> c2 >> k.col) || c1 != ',' || c2 != ',' || !ss.eof()) {
    throw SpecError("vertex '" + text + "' is not of the form plane,row,col");
  }
  return k;
}

int require_vertex(const LatticeGraph& g, const std::string& text) {
  const VertexKey k = parse_vertex(text);
  auto v = g.find_vertex(k);
  if (!v) throw SpecError("no vertex " + k.to_string() + " in the lattice");
  return *v;
}

double default_tolerance() {
  if (const char* env = std::getenv(kToleranceEnv)) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
    throw SpecError(std::string(kToleranceEnv) + " must be a positive number, got '" + env + "'");
  }
  return 1e-9;
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << doc.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw SpecError("cannot write '" + path + "'");
  f << doc.dump(2) << '\n';
}

std::vector<bool> fault_mask(const LatticeGraph& g, const std::vector<std::string>& faults) {
  std::vector<bool> mask(g.vertex_count(), false);
  for (const std::string& f : faults) mask[require_vertex(g, f)] = true;
  return mask;
}

// ---------------------------------------------------------------- build

struct BuildArgs {
  std::string spec;
  std::string format = "table";
  std::string output;
};

int cmd_build(const BuildArgs& a, std::ostream& out, std::ostream& err) {
  const LatticeGraph g = build_lattice(read_spec_file(a.spec));
  std::ostringstream body;
  if (a.format == "triplets") {
    write_triplets(body, assemble(g));
  } else {
    write_graph(body, g);
  }
  const auto violations = validate(g);
  for (const Violation& v : violations) err << "violation: " << v.message << '\n';
  body << "# validation " << (violations.empty() ? "ok" : std::to_string(violations.size()) + " violation(s)") << '\n';

  if (a.output.empty()) {
    out << body.str();
  } else {
    std::ofstream f(a.output);
    if (!f) throw SpecError("cannot write '" + a.output + "'");
    f << body.str();
  }
  return violations.empty() ? kPass : kStructureViolation;
}

// -------------------------------------------------------- verify-blocks

struct VerifyBlocksArgs {
  std::string spec;
  bool json = false;
  std::vector<std::string> perturb;  // test hook: "row,col,value"
};

int cmd_verify_blocks(const VerifyBlocksArgs& a, std::ostream& out, std::ostream& err) {
  const LatticeGraph g = build_lattice(read_spec_file(a.spec));
  Hamiltonian h = assemble(g);
  for (const std::string& p : a.perturb) {
    std::istringstream ss(p);
    Triplet t;
    char c1 = 0, c2 = 0;
    if (!(ss >> t.row >> c1 >> t.col >> c2 >> t.value) || t.row < 0 || t.col >= h.dim || t.row >= t.col) {
      throw SpecError("--perturb expects row,col,value with row < col < dim");
    }
    h.upper.push_back(t);
  }
  try {
    const ChainInventory inv = verify_block_structure(h, xi_transform(g));
    if (a.json) {
      json doc = to_json(inv);
      doc["schema"] = kChainInventorySchema;
      out << doc.dump(2) << '\n';
    } else {
      out << "2-chains: " << inv.count(ChainKind::two_chain) << ", 3-chains: " << inv.count(ChainKind::three_chain)
          << ", isolated: " << inv.count(ChainKind::isolated) << '\n';
      out << "inter-plane 3-chains: " << inv.interplane_count() << '\n';
      out << "max off-pattern entry: " << inv.max_off_pattern << '\n';
      out << "max chain coupling error: " << inv.max_coupling_error << '\n';
    }
    return kPass;
  } catch (const StructureError& e) {
    err << "structure violation: " << e.what() << '\n';
    for (const std::string& d : e.details()) err << "  " << d << '\n';
    return kStructureViolation;
  }
}

// -------------------------------------------------------- verify-chains

struct VerifyChainsArgs {
  int max_n = 32;
  bool json = false;
};

int cmd_verify_chains(const VerifyChainsArgs& a, std::ostream& out) {
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, double value, const std::string& criterion, bool pass) {
    checks.push_back({{"check", name}, {"value", value}, {"criterion", criterion}, {"pass", pass}});
    all = all && pass;
  };

  const double m2 = std::abs(chains::transfer_amplitude(chains::uniform_chain(2), 0, 1, kT0));
  record("uniform 2-chain |amp| at t0", m2, "|1 - x| <= 1e-12", std::abs(1.0 - m2) <= 1e-12);
  const double m3 = std::abs(chains::transfer_amplitude(chains::uniform_chain(3), 0, 2, kT1));
  record("uniform 3-chain |amp| at t1", m3, "|1 - x| <= 1e-12", std::abs(1.0 - m3) <= 1e-12);

  double worst = 1.0;
  for (int n = 2; n <= a.max_n; ++n) {
    const auto eig = chains::diagonalize(chains::engineered_chain(n));
    for (int s = 0; s < n; ++s) {
      worst = std::min(worst, std::abs(chains::transfer_amplitude(eig, s, n - 1 - s, std::numbers::pi)));
    }
  }
  record("engineered chains N=2.." + std::to_string(a.max_n) + " min mirror |amp| at pi", worst, "x >= 1 - 1e-10",
         worst >= 1.0 - 1e-10);

  const auto grid = chains::max_end_to_end_modulus(chains::uniform_chain(4), 50.0, 1e-3);
  record("uniform 4-chain max end-to-end |amp| on [0,50]", grid.modulus, "x < 0.999", grid.modulus < 0.999);

  if (a.json) {
    out << json{{"checks", checks}, {"pass", all}}.dump(2) << '\n';
  } else {
    for (const json& c : checks) {
      out << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["check"].get<std::string>() << " = "
          << c["value"].get<double>() << " (" << c["criterion"].get<std::string>() << ")\n";
    }
  }
  return all ? kPass : kVerdictFail;
}

// ---------------------------------------------------------------- route

struct RouteArgs {
  std::string spec;
  std::string from, to;
  std::optional<double> tol;
  double phase_tol = 1e-8;
  std::optional<std::vector<std::string>> faults;
  std::vector<std::pair<std::size_t, std::string>> delays;
  std::string trajectory;
  int samples_per_t1 = 64;
  std::string output;
};

int cmd_route(const RouteArgs& a, std::ostream& out, std::ostream& err) {
  const LatticeSpec spec = read_spec_file(a.spec);
  const RouteSimulator sim(build_lattice(spec));
  const int v_in = require_vertex(sim.graph(), a.from);
  const int v_out = require_vertex(sim.graph(), a.to);

  SimulationOptions options;
  options.tolerance.modulus = a.tol.value_or(default_tolerance());
  options.tolerance.phase = a.phase_tol;
  if (a.faults) options.faulty = fault_mask(sim.graph(), *a.faults);
  for (const auto& [index, delay] : a.delays) {
    try {
      options.delays.emplace_back(index, ChainTime::parse(delay));
    } catch (const std::invalid_argument& e) {
      throw SpecError(std::string("--delay-pulse: ") + e.what());
    }
  }
  options.run.samples_per_t1 = a.samples_per_t1;

  std::vector<StateVector> samples;
  TransferReport report;
  try {
    report = sim.simulate(v_in, v_out, options, a.trajectory.empty() ? nullptr : &samples);
  } catch (const UnroutableError& e) {
    err << e.what() << '\n';
    return kUnroutable;
  }
  if (!a.trajectory.empty()) {
    std::ofstream f(a.trajectory);
    if (!f) throw SpecError("cannot write '" + a.trajectory + "'");
    write_trajectory_csv(f, samples, sim.hamiltonian().labels);
  }
  json doc = to_json(report);
  doc["schema"] = kTransferReportSchema;
  emit(doc, a.output, out);
  return report.pass ? kPass : kVerdictFail;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string spec;
  std::optional<double> tol;
  double phase_tol = 1e-8;
  unsigned workers = 0;
  bool single_faults = false;
  bool strict = false;
  bool unordered = false;
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  std::string output;
};

struct SweepJob {
  int v_in, v_out;
  int fault = -1;
};

struct SweepOutcome {
  std::optional<TransferReport> report;
  std::string unroutable;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const LatticeSpec spec = read_spec_file(a.spec);
  const RouteSimulator sim(build_lattice(spec));
  const LatticeGraph& g = sim.graph();
  const auto heads = g.head_vertices();

  std::vector<SweepJob> jobs;
  for (int i : heads) {
    for (int j : heads) {
      if (i == j || (a.unordered && j < i)) continue;
      if (!a.single_faults) {
        jobs.push_back({i, j});
        continue;
      }
      for (int f = 0; f < g.vertex_count(); ++f) {
        if (f != i && f != j && !g.vertices[f].faulty) jobs.push_back({i, j, f});
      }
    }
  }
  if (a.sample > 0 && a.sample < jobs.size()) {
    std::mt19937_64 rng(a.seed);
    std::shuffle(jobs.begin(), jobs.end(), rng);
    jobs.resize(a.sample);
    std::sort(jobs.begin(), jobs.end(), [](const SweepJob& x, const SweepJob& y) {
      return std::tie(x.v_in, x.v_out, x.fault) < std::tie(y.v_in, y.v_out, y.fault);
    });
  }

  SimulationOptions base;
  base.tolerance.modulus = a.tol.value_or(default_tolerance());
  base.tolerance.phase = a.phase_tol;

  std::vector<SweepOutcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const SweepJob& job = jobs[k];
      SimulationOptions options = base;
      if (job.fault >= 0) {
        std::vector<bool> mask(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v) mask[v] = g.vertices[v].faulty;
        mask[job.fault] = true;
        options.faulty = std::move(mask);
      }
      try {
        outcomes[k].report = sim.simulate(job.v_in, job.v_out, options);
      } catch (const UnroutableError& e) {
        outcomes[k].unroutable = e.what();
      }
    }
  };
  unsigned n_workers = a.workers > 0 ? a.workers : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<unsigned>(n_workers, std::max<std::size_t>(1, jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  json records = json::array();
  std::size_t passed = 0, failed = 0, unroutable = 0;
  double min_modulus = 1.0, max_phase_error = 0.0;
  std::map<int, std::pair<std::size_t, std::string>> timing;  // N -> (routes, duration)
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    json rec;
    rec["input"] = g.vertices[jobs[k].v_in].key.to_string();
    rec["output"] = g.vertices[jobs[k].v_out].key.to_string();
    rec["fault"] = jobs[k].fault >= 0 ? json(g.vertices[jobs[k].fault].key.to_string()) : json();
    if (!outcomes[k].report) {
      ++unroutable;
      rec["unroutable"] = outcomes[k].unroutable;
      records.push_back(rec);
      continue;
    }
    const TransferReport& r = *outcomes[k].report;
    r.pass ? ++passed : ++failed;
    min_modulus = std::min(min_modulus, r.fidelity_modulus);
    if (r.phase_error) max_phase_error = std::max(max_phase_error, *r.phase_error);
    auto& row = timing[r.n_three_chain_hops];
    ++row.first;
    row.second = r.total_duration.to_string();
    rec["report"] = to_json(r);
    records.push_back(rec);
  }
  json table = json::array();
  for (const auto& [n, row] : timing) {
    table.push_back({{"n_three_chain_hops", n}, {"routes", row.first}, {"total_duration", row.second},
                     {"total_seconds", ChainTime{2, n}.seconds()}});
  }

  json doc;
  doc["schema"] = kSweepReportSchema;
  doc["spec"] = spec_to_json(spec);
  doc["single_faults"] = a.single_faults;
  doc["runs"] = jobs.size();
  doc["passed"] = passed;
  doc["failed"] = failed;
  doc["unroutable"] = unroutable;
  doc["min_modulus"] = passed + failed > 0 ? json(min_modulus) : json();
  doc["max_phase_error"] = max_phase_error;
  doc["timing"] = table;
  doc["records"] = records;
  emit(doc, a.output, out);

  err << "sweep: " << jobs.size() << " runs, " << passed << " pass, " << failed << " fail, " << unroutable
      << " unroutable\n";
  if (failed > 0) return kVerdictFail;
  if (a.strict && unroutable > 0) return kUnroutable;
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perfect state transfer on hexagonal Hadamard-switch lattices", "hexpst"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* sc_build = app.add_subcommand("build", "Build a lattice and dump its site table and couplings");
  sc_build->add_option("spec", build.spec, "Lattice spec file")->required();
  sc_build->add_option("--format", build.format, "table (graph dump) or triplets (Hamiltonian)")
      ->check(CLI::IsMember({"table", "triplets"}));
  sc_build->add_option("-o,--output", build.output, "Write to file instead of stdout");

  VerifyBlocksArgs blocks;
  auto* sc_blocks = app.add_subcommand("verify-blocks", "Check the ξ-basis chain decomposition");
  sc_blocks->add_option("spec", blocks.spec, "Lattice spec file")->required();
  sc_blocks->add_flag("--json", blocks.json, "Emit the full chain inventory as JSON");
  sc_blocks->add_option("--perturb", blocks.perturb, "Add row,col,value to H before checking")->group("");

  VerifyChainsArgs vchains;
  auto* sc_chains = app.add_subcommand("verify-chains", "Run the closed-form chain transfer checks");
  sc_chains->add_option("--max-n", vchains.max_n, "Largest engineered chain length")->check(CLI::Range(2, 256));
  sc_chains->add_flag("--json", vchains.json, "Emit JSON");

  RouteArgs route;
  auto* sc_route = app.add_subcommand("route", "Plan, compile and simulate one transfer");
  sc_route->add_option("spec", route.spec, "Lattice spec file")->required();
  sc_route->add_option("--from", route.from, "Input head vertex plane,row,col")->required();
  sc_route->add_option("--to", route.to, "Output head vertex plane,row,col")->required();
  sc_route->add_option("--tol", route.tol, "Modulus tolerance")->check(CLI::PositiveNumber);
  sc_route->add_option("--phase-tol", route.phase_tol, "Phase tolerance in radians")->check(CLI::PositiveNumber);
  sc_route->add_option("--faults", route.faults, "Replace the spec's faulty switches (plane,row,col ...)")
      ->expected(0, -1);
  sc_route->add_option("--delay-pulse", route.delays, "Delay pulse K (and all later ones) by e.g. 2t1");
  sc_route->add_option("--trajectory", route.trajectory, "Write sampled amplitudes as CSV");
  sc_route->add_option("--samples-per-t1", route.samples_per_t1, "Trajectory sampling rate")
      ->check(CLI::PositiveNumber);
  sc_route->add_option("-o,--output", route.output, "Write the report to a file");

  SweepArgs sweep;
  auto* sc_sweep = app.add_subcommand("sweep", "Simulate every head pair, optionally under single faults");
  sc_sweep->add_option("spec", sweep.spec, "Lattice spec file")->required();
  sc_sweep->add_option("--tol", sweep.tol, "Modulus tolerance")->check(CLI::PositiveNumber);
  sc_sweep->add_option("--phase-tol", sweep.phase_tol, "Phase tolerance in radians")->check(CLI::PositiveNumber);
  sc_sweep->add_option("--workers", sweep.workers, "Worker threads (default: available cores)");
  sc_sweep->add_flag("--single-faults", sweep.single_faults, "Also enumerate every single faulty switch");
  sc_sweep->add_flag("--strict", sweep.strict, "Treat unroutable pairs as failures");
  sc_sweep->add_flag("--unordered", sweep.unordered, "Only one direction per head pair");
  sc_sweep->add_option("--sample", sweep.sample, "Run a random subset of this many jobs");
  sc_sweep->add_option("--seed", sweep.seed, "Seed for --sample");
  sc_sweep->add_option("-o,--output", sweep.output, "Write the report to a file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kSpecError;
  }

  try {
    if (*sc_build) return cmd_build(build, out, err);
    if (*sc_blocks) return cmd_verify_blocks(blocks, out, err);
    if (*sc_chains) return cmd_verify_chains(vchains, out);
    if (*sc_route) return cmd_route(route, out, err);
    if (*sc_sweep) return cmd_sweep(sweep, out, err);
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << '\n';
    return kSpecError;
  } catch (const ScheduleError& e) {
    err << "error: " << e.what() << '\n';
    return kSpecError;
  }
  return kSpecError;
}

}  // namespace hexpst::cli
