// Copyright 2026 The muqut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "muqut/pipeline.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "muqut/error.hpp"
#include "muqut/rng.hpp"
#include "text_util.hpp"

namespace muqut {

void validate_config(const RunConfig& config) {
  if (config.attempts < 1) throw std::invalid_argument("--attempts must be at least 1");
  if (!(config.probability > 0.0 && config.probability <= 1.0)) {
    throw std::invalid_argument("--prob must be in (0, 1]");
  }
  if (config.window_size < 1) throw std::invalid_argument("--window-size must be at least 1");
  if (config.configs < 1) throw std::invalid_argument("--configs must be at least 1");
  if (config.jobs < 1) throw std::invalid_argument("--jobs must be at least 1");
  if (config.placement_limit < 1) throw std::invalid_argument("--placement-limit must be at least 1");
  if (!(config.time_limit > 0.0)) throw std::invalid_argument("--time-limit must be positive");
  if (config.horizon && *config.horizon < 0) throw std::invalid_argument("--horizon must be non-negative");
  if (config.horizon && config.horizon_max && *config.horizon > *config.horizon_max) {
    throw std::invalid_argument("--horizon exceeds --horizon-max");
  }
}

namespace {

std::vector<PlacementCandidate> placement_candidates(const RunConfig& config,
                                                     const TopologyGraph& fp,
                                                     const TopologyGraph& device) {
  const bool grid_ok = fp.has_grid() && device.has_grid();
  bool grid = false;
  switch (config.placement_mode) {
    case PlacementMode::Grid:
      if (!grid_ok) throw std::invalid_argument("grid placement needs grid coordinates on the device");
      grid = true;
      break;
    case PlacementMode::General: grid = false; break;
    case PlacementMode::Auto: grid = grid_ok; break;
  }
  std::vector<PlacementCandidate> cands;
  if (grid) {
    cands = enumerate_placements(*extract_hgrid(fp, device), fp, device).candidates;
    if (cands.size() > config.placement_limit) cands.resize(config.placement_limit);
  } else {
    cands = enumerate_embeddings(fp, device, config.placement_limit);
  }
  PlacementCandidate self = identity_placement(fp);
  const bool has_self = std::any_of(cands.begin(), cands.end(), [&](const PlacementCandidate& c) {
    return c.assignment == self.assignment;
  });
  if (!has_self) cands.insert(cands.begin(), std::move(self));
  return cands;
}

CandidateRecord run_candidate(const RunConfig& config, const QuantumCircuit& circuit,
                              const TopologyGraph& device, const TopologyGraph& subgraph,
                              std::size_t si, std::size_t ci, std::vector<Vertex> initial,
                              const NativeGateSet& gates) {
  CandidateRecord rec;
  rec.subgraph = si;
  rec.config = ci;
  rec.initial = initial;
  SolverOptions options;
  options.horizons.initial = config.horizon;
  options.horizons.maximum = config.horizon_max;
  options.time_limit = std::chrono::duration<double>(config.time_limit);
  try {
    MappingResult mapping = map_windowed(circuit, subgraph, initial, config.window_size, options, gates);
    rec.status = CandidateStatus::Mapped;
    rec.incumbent = mapping.timed_out;
    rec.swaps = mapping.swaps;
    rec.depth = mapping.depth;
    rec.counts = mapping.counts;
    for (const WindowResult& w : mapping.windows) {
      rec.nodes += w.stats.nodes;
      rec.horizons.push_back(w.stats.horizons_tried);
    }
    const TopologyGraph fp = footprint(mapping.circuit, subgraph);
    const PlacementReport placed =
        best_placement(placement_candidates(config, fp, device), mapping.circuit, device.calibration, gates);
    const auto self = identity_placement(fp).assignment;
    for (const PlacementCandidate& c : placed.candidates) {
      if (c.assignment == self) rec.fidelity_initial = c.score;
    }
    const PlacementCandidate& best = placed.candidates[placed.best];
    rec.fidelity_best = best.score;
    rec.fidelity_min = placed.min;
    rec.fidelity_avg = placed.avg;
    rec.fidelity_max = placed.max;
    rec.placements = placed.candidates.size();
    rec.best_assignment = best.assignment;
    rec.placed = relabel(mapping.circuit, best.assignment);
    rec.mapping = std::move(mapping);
  } catch (const MappingError& e) {
    rec.status = e.kind() == MappingError::Kind::TimedOut ? CandidateStatus::TimedOut
                                                          : CandidateStatus::Infeasible;
    rec.message = e.what();
  }
  return rec;
}

const char* status_name(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::Mapped: return "mapped";
    case CandidateStatus::Infeasible: return "infeasible";
    case CandidateStatus::TimedOut: return "timeout";
  }
  return "";
}

const char* mode_name(PlacementMode m) {
  switch (m) {
    case PlacementMode::Auto: return "auto";
    case PlacementMode::Grid: return "grid";
    case PlacementMode::General: return "general";
  }
  return "";
}

}  // namespace

RunReport run_pipeline(const RunConfig& config, const QuantumCircuit& circuit,
                       const TopologyGraph& device) {
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();
  const NativeGateSet gates = native_gate_set(config.gates);
  const std::size_t n = static_cast<std::size_t>(circuit.num_qubits());
  if (n > device.size()) {
    throw std::invalid_argument("circuit needs " + std::to_string(n) + " qubits but the device has " +
                                std::to_string(device.size()));
  }

  RunReport report;
  report.config = config;
  report.qubits = circuit.num_qubits();
  report.levels = circuit.depth();
  report.gates = circuit.size();
  report.subgraphs = extract_subgraphs(device, {n, config.attempts, config.probability, config.seed});
  if (report.subgraphs.graphs.empty()) {
    throw std::invalid_argument("no connected " + std::to_string(n) + "-vertex subgraph found");
  }

  struct Task {
    std::size_t subgraph, config;
    std::vector<Vertex> initial;
  };
  std::vector<Task> tasks;
  for (std::size_t si = 0; si < report.subgraphs.graphs.size(); ++si) {
    Rng rng(derive_seed(config.seed, si + 1));
    for (std::size_t ci = 0; ci < config.configs; ++ci) {
      std::vector<Vertex> initial = report.subgraphs.graphs[si].vertices();
      shuffle(initial, rng);
      tasks.push_back({si, ci, std::move(initial)});
    }
  }

  report.candidates.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        report.candidates[i] =
            run_candidate(config, circuit, device, report.subgraphs.graphs[tasks[i].subgraph],
                          tasks[i].subgraph, tasks[i].config, tasks[i].initial, gates);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(config.jobs, tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < report.candidates.size(); ++i) {
    const CandidateRecord& c = report.candidates[i];
    if (c.status != CandidateStatus::Mapped) continue;
    if (!report.best || c.fidelity_best > report.candidates[*report.best].fidelity_best) report.best = i;
  }
  report.seconds_total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

RunReport run_pipeline(const RunConfig& config) {
  validate_config(config);
  const QuantumCircuit circuit = load_circuit(config.circuit_path);
  const TopologyGraph device = load_topology(config.topology_path);
  RunReport report = run_pipeline(config, circuit, device);
  if (!config.out_dir.empty()) write_outputs(report, config.out_dir);
  return report;
}

namespace {

using Json = nlohmann::ordered_json;

Json candidate_json(const CandidateRecord& c) {
  Json j;
  j["subgraph"] = c.subgraph;
  j["config"] = c.config;
  j["initial"] = c.initial;
  j["status"] = status_name(c.status);
  if (c.status != CandidateStatus::Mapped) {
    j["message"] = c.message;
    return j;
  }
  j["incumbent_only"] = c.incumbent;
  j["swaps"] = c.swaps;
  j["depth"] = c.depth;
  j["gates_total"] = c.counts.total;
  j["gates_noisy"] = c.counts.noisy;
  j["fidelity_initial"] = c.fidelity_initial;
  j["fidelity_best"] = c.fidelity_best;
  j["improvement"] = c.improvement();
  j["fidelity_min"] = c.fidelity_min;
  j["fidelity_avg"] = c.fidelity_avg;
  j["fidelity_max"] = c.fidelity_max;
  j["placements"] = c.placements;
  Json assignment = Json::array();
  for (const auto& [from, to] : c.best_assignment) assignment.push_back({from, to});
  j["best_assignment"] = assignment;
  j["solver"] = {{"nodes", c.nodes}, {"horizons", c.horizons}};
  return j;
}

}  // namespace

std::string report_json(const RunReport& report) {
  const RunConfig& cfg = report.config;
  Json j;
  j["schema"] = "muqut-report";
  j["schema_version"] = 1;
  j["input"] = {{"circuit", cfg.circuit_path},
                {"topology", cfg.topology_path},
                {"qubits", report.qubits},
                {"levels", report.levels},
                {"gates", report.gates}};
  Json settings;
  settings["seed"] = cfg.seed;
  settings["attempts"] = cfg.attempts;
  settings["probability"] = cfg.probability;
  settings["window_size"] = cfg.window_size;
  settings["configs"] = cfg.configs;
  settings["horizon"] = cfg.horizon ? Json(*cfg.horizon) : Json(nullptr);
  settings["horizon_max"] = cfg.horizon_max ? Json(*cfg.horizon_max) : Json(nullptr);
  settings["time_limit"] = cfg.time_limit;
  settings["placement_mode"] = mode_name(cfg.placement_mode);
  settings["placement_limit"] = cfg.placement_limit;
  settings["gates"] = cfg.gates;
  j["settings"] = settings;
  Json found = Json::array();
  for (const TopologyGraph& g : report.subgraphs.graphs) found.push_back(g.vertices());
  j["subgraphs"] = {{"found", found},
                    {"attempts", report.subgraphs.attempts},
                    {"stalled", report.subgraphs.stalled},
                    {"seed", report.subgraphs.seed}};
  Json cands = Json::array();
  for (const CandidateRecord& c : report.candidates) cands.push_back(candidate_json(c));
  j["candidates"] = cands;
  if (report.best) {
    Json best = candidate_json(report.candidates[*report.best]);
    best["candidate"] = *report.best;
    j["best"] = best;
  } else {
    j["best"] = nullptr;
  }
  if (cfg.timings) j["timings"] = {{"total_seconds", report.seconds_total}};
  return j.dump(2) + "\n";
}

std::string summary_csv(const RunReport& report) {
  using detail::format_double;
  std::string out =
      "kind,subgraph,config,window_size,gates_total,gates_noisy,swaps,depth,fidelity_initial,"
      "fidelity_best,improvement\n";
  const std::string w = std::to_string(report.config.window_size);
  std::vector<std::array<double, 7>> rows;
  for (const CandidateRecord& c : report.candidates) {
    if (c.status != CandidateStatus::Mapped) continue;
    out += "candidate," + std::to_string(c.subgraph) + ',' + std::to_string(c.config) + ',' + w + ',' +
           std::to_string(c.counts.total) + ',' + std::to_string(c.counts.noisy) + ',' +
           std::to_string(c.swaps) + ',' + std::to_string(c.depth) + ',' +
           format_double(c.fidelity_initial) + ',' + format_double(c.fidelity_best) + ',' +
           format_double(c.improvement()) + '\n';
    rows.push_back({static_cast<double>(c.counts.total), static_cast<double>(c.counts.noisy),
                    static_cast<double>(c.swaps), static_cast<double>(c.depth), c.fidelity_initial,
                    c.fidelity_best, c.improvement()});
  }
  if (rows.empty()) return out;
  std::array<double, 7> lo{}, hi{}, sum{};
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      lo[i] = std::min(lo[i], r[i]);
      hi[i] = std::max(hi[i], r[i]);
      sum[i] += r[i];
    }
  }
  auto agg = [&](const char* kind, const std::array<double, 7>& v) {
    out += std::string(kind) + ",,," + w;
    for (double x : v) out += ',' + format_double(x);
    out += '\n';
  };
  std::array<double, 7> avg{};
  for (std::size_t i = 0; i < avg.size(); ++i) avg[i] = sum[i] / static_cast<double>(rows.size());
  agg("min", lo);
  agg("avg", avg);
  agg("max", hi);
  return out;
}

void write_outputs(const RunReport& report, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  auto write = [&](const std::string& name, const std::string& text) {
    const std::filesystem::path path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + path.string());
  };
  write("report.json", report_json(report));
  write("summary.csv", summary_csv(report));
  if (report.best) write("mapped.qc", emit_circuit(report.candidates[*report.best].placed));
}

int exit_code(const RunReport& report) {
  if (!report.best) return 2;
  return report.candidates[*report.best].incumbent ? 3 : 0;
}

}  // namespace muqut
