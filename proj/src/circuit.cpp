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

#include "muqut/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "muqut/error.hpp"
#include "text_util.hpp"

namespace muqut {

Gate Gate::cx(Qubit control, Qubit target) {
  return Gate{GateKind::Cx, "cx", {}, {control, target}, false, std::nullopt};
}

Gate Gate::cz(Qubit a, Qubit b) {
  return Gate{GateKind::Cz, "cz", {}, {a, b}, false, std::nullopt};
}

Gate Gate::swap(Qubit a, Qubit b, bool routing) {
  return Gate{GateKind::Swap, routing ? "rswap" : "swap", {}, {a, b}, routing, std::nullopt};
}

Gate Gate::single(std::string label, Qubit q, std::vector<double> params) {
  return Gate{GateKind::Single, std::move(label), std::move(params), {q}, false, std::nullopt};
}

QuantumCircuit::QuantumCircuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0) throw std::invalid_argument("negative qubit count");
}

void QuantumCircuit::add(Gate gate) {
  const std::size_t arity = gate.kind == GateKind::Single ? 1 : 2;
  if (gate.operands.size() != arity) {
    throw std::invalid_argument("gate '" + gate.label + "' expects " + std::to_string(arity) +
                                " operand(s)");
  }
  for (Qubit q : gate.operands) {
    if (q < 0 || q >= num_qubits_) {
      throw std::invalid_argument("operand " + std::to_string(q) + " out of range (circuit has " +
                                  std::to_string(num_qubits_) + " qubits)");
    }
  }
  if (arity == 2 && gate.operands[0] == gate.operands[1]) {
    throw std::invalid_argument("duplicate operand " + std::to_string(gate.operands[0]));
  }
  gate.level.reset();
  gates_.push_back(std::move(gate));
  levels_.clear();
  levelized_ = false;
}

int QuantumCircuit::depth() const {
  if (levelized_) return static_cast<int>(levels_.size());
  return static_cast<int>(levelize(*this).levels_.size());
}

QuantumCircuit levelize(const QuantumCircuit& circuit) {
  QuantumCircuit out = circuit;
  std::vector<int> frontier(static_cast<std::size_t>(circuit.num_qubits()), 0);
  out.levels_.clear();
  for (std::size_t g = 0; g < out.gates_.size(); ++g) {
    Gate& gate = out.gates_[g];
    int level = 0;
    for (Qubit q : gate.operands) level = std::max(level, frontier[static_cast<std::size_t>(q)]);
    ++level;
    for (Qubit q : gate.operands) frontier[static_cast<std::size_t>(q)] = level;
    gate.level = level;
    if (static_cast<std::size_t>(level) > out.levels_.size()) {
      out.levels_.push_back(Level{level, {}});
    }
    out.levels_[static_cast<std::size_t>(level - 1)].gates.push_back(g);
  }
  out.levelized_ = true;
  return out;
}

InteractionSet interaction_of(const Level& level, const QuantumCircuit& circuit) {
  InteractionSet set;
  set.level_index = level.index;
  for (std::size_t g : level.gates) {
    const Gate& gate = circuit.gates().at(g);
    if (!gate.is_two_qubit()) continue;
    auto [a, b] = std::minmax(gate.operands[0], gate.operands[1]);
    set.pairs.emplace_back(a, b);
  }
  std::sort(set.pairs.begin(), set.pairs.end());
  return set;
}

std::vector<InteractionSet> interactions(const QuantumCircuit& circuit) {
  const QuantumCircuit leveled = circuit.is_levelized() ? circuit : levelize(circuit);
  std::vector<InteractionSet> out;
  out.reserve(leveled.levels().size());
  for (const Level& level : leveled.levels()) out.push_back(interaction_of(level, leveled));
  return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::vector<int> parse_int_list(std::string_view args, std::size_t line) {
  std::string compact;
  for (char c : args) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  std::vector<int> values;
  for (std::string_view item : detail::split(compact, ',')) {
    auto value = detail::to_int(item);
    if (!value) throw ParseError(line, "expected integer, got '" + std::string(item) + "'");
    values.push_back(*value);
  }
  return values;
}

struct ParsedGate {
  Gate gate;
  std::size_t line;
};

}  // namespace

QuantumCircuit parse_circuit(std::string_view text) {
  std::optional<int> declared;
  std::optional<std::vector<int>> layout;
  std::size_t layout_line = 0;
  std::vector<ParsedGate> parsed;
  bool seen_statement = false;

  std::size_t line_no = 0;
  for (std::string_view raw : detail::lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    auto [keyword, args] = detail::split_keyword(line);

    if (keyword == "qubits") {
      if (seen_statement) throw ParseError(line_no, "'qubits' must be the first statement");
      auto n = detail::to_int(detail::trim(args));
      if (!n || *n < 0) throw ParseError(line_no, "invalid qubit count '" + std::string(args) + "'");
      declared = *n;
      seen_statement = true;
      continue;
    }
    seen_statement = true;

    if (keyword == "layout") {
      if (layout) throw ParseError(line_no, "duplicate 'layout'");
      layout = parse_int_list(args, line_no);
      layout_line = line_no;
      continue;
    }

    if (keyword == "cx" || keyword == "cz" || keyword == "swap" || keyword == "rswap") {
      std::vector<int> ops = parse_int_list(args, line_no);
      if (ops.size() != 2) {
        throw ParseError(line_no, "'" + std::string(keyword) + "' expects two operands");
      }
      if (ops[0] == ops[1]) {
        throw ParseError(line_no, "duplicate operand " + std::to_string(ops[0]));
      }
      Gate gate = keyword == "cx"   ? Gate::cx(ops[0], ops[1])
                  : keyword == "cz" ? Gate::cz(ops[0], ops[1])
                                    : Gate::swap(ops[0], ops[1], keyword == "rswap");
      parsed.push_back({std::move(gate), line_no});
      continue;
    }

    if (!is_identifier(keyword)) {
      throw ParseError(line_no, "unrecognized statement '" + std::string(line) + "'");
    }
    std::vector<std::string_view> tokens = detail::split_ws(args);
    if (tokens.empty()) throw ParseError(line_no, "'" + std::string(keyword) + "' needs a qubit");
    if (tokens[0].find(',') != std::string_view::npos) {
      throw ParseError(line_no, "multi-qubit gate '" + std::string(keyword) + "' is not supported");
    }
    auto q = detail::to_int(tokens[0]);
    if (!q) throw ParseError(line_no, "expected qubit index, got '" + std::string(tokens[0]) + "'");
    std::vector<double> params;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      auto value = detail::to_double(tokens[i]);
      if (!value) throw ParseError(line_no, "invalid parameter '" + std::string(tokens[i]) + "'");
      params.push_back(*value);
    }
    parsed.push_back({Gate::single(std::string(keyword), *q, std::move(params)), line_no});
  }

  int num_qubits = 0;
  if (declared) {
    num_qubits = *declared;
  } else {
    for (const auto& p : parsed) {
      for (Qubit q : p.gate.operands) num_qubits = std::max(num_qubits, q + 1);
    }
  }

  QuantumCircuit circuit(num_qubits);
  for (auto& p : parsed) {
    for (Qubit q : p.gate.operands) {
      if (q < 0 || q >= num_qubits) {
        throw ParseError(p.line, "operand " + std::to_string(q) + " out of range (qubits " +
                                     std::to_string(num_qubits) + ")");
      }
    }
    circuit.add(std::move(p.gate));
  }
  if (layout) {
    // A mapped circuit may use fewer logical qubits than physical positions.
    if (layout->size() > static_cast<std::size_t>(num_qubits)) {
      throw ParseError(layout_line, "layout lists " + std::to_string(layout->size()) +
                                        " positions for " + std::to_string(num_qubits) + " qubits");
    }
    std::vector<int> sorted = *layout;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
        (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= num_qubits))) {
      throw ParseError(layout_line, "layout must list distinct positions below " +
                                        std::to_string(num_qubits));
    }
    circuit.set_layout(std::move(*layout));
  }
  return circuit;
}

QuantumCircuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot read circuit file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_circuit(buffer.str());
}

std::string emit_circuit(const QuantumCircuit& circuit) {
  std::string out = "qubits " + std::to_string(circuit.num_qubits()) + "\n";
  if (const auto& layout = circuit.layout()) {
    out += "layout ";
    for (std::size_t i = 0; i < layout->size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string((*layout)[i]);
    }
    out += '\n';
  }
  for (const Gate& gate : circuit.gates()) {
    out += gate.label;
    if (gate.is_two_qubit()) {
      out += ' ' + std::to_string(gate.operands[0]) + ',' + std::to_string(gate.operands[1]);
    } else {
      out += ' ' + std::to_string(gate.operands[0]);
      for (double p : gate.params) out += ' ' + detail::format_double(p);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Native gate sets

bool NativeGateSet::is_noisy(const Gate& gate) const {
  return noise_free_labels.count(gate.label) == 0;
}

std::size_t NativeGateSet::swap_noisy_count() const {
  return static_cast<std::size_t>(std::count_if(swap_decomposition.begin(),
                                                swap_decomposition.end(),
                                                [](const NativeStep& s) { return s.noisy; }));
}

NativeGateSet native_gate_set(std::string_view name) {
  // Virtual Z-type rotations are frame changes on both vendors.
  const std::set<std::string> virtual_z = {"id", "rz", "z", "s", "sdg", "t", "tdg", "u1"};

  if (name == "ibm") {
    NativeGateSet set{"ibm", {}, virtual_z};
    set.swap_decomposition = {
        {"cx", {0, 1}, {}, true},
        {"cx", {1, 0}, {}, true},
        {"cx", {0, 1}, {}, true},
    };
    return set;
  }
  if (name == "rigetti") {
    // SWAP(a, b) as three CZs dressed with RX/RZ, equal to SWAP up to global
    // phase: 3 CZ + 8 RX noisy, 7 RZ noise-free.
    constexpr double h = std::numbers::pi / 2;
    constexpr double pi = std::numbers::pi;
    NativeGateSet set{"rigetti", {}, virtual_z};
    set.swap_decomposition = {
        {"rz", {1}, {h}, false},  {"rx", {1}, {h}, true},  {"rz", {1}, {pi}, false},
        {"cz", {0, 1}, {}, true}, {"rx", {0}, {h}, true},  {"rz", {0}, {h}, false},
        {"rx", {0}, {h}, true},   {"rx", {1}, {h}, true},  {"rz", {1}, {pi}, false},
        {"cz", {0, 1}, {}, true}, {"rx", {0}, {h}, true},  {"rz", {0}, {h}, false},
        {"rx", {0}, {h}, true},   {"rx", {1}, {h}, true},  {"rz", {1}, {pi}, false},
        {"cz", {0, 1}, {}, true}, {"rx", {1}, {h}, true},  {"rz", {1}, {h}, false},
    };
    return set;
  }
  throw std::invalid_argument("unknown native gate set '" + std::string(name) + "'");
}

QuantumCircuit decompose_swaps(const QuantumCircuit& circuit, const NativeGateSet& gates) {
  QuantumCircuit out(circuit.num_qubits());
  if (circuit.layout()) out.set_layout(*circuit.layout());
  for (const Gate& gate : circuit.gates()) {
    if (!gate.is_swap()) {
      out.add(gate);
      continue;
    }
    const auto [lo, hi] = std::minmax(gate.operands[0], gate.operands[1]);
    const Qubit role[2] = {lo, hi};
    for (const NativeStep& step : gates.swap_decomposition) {
      if (step.operand_roles.size() == 2) {
        const Qubit a = role[step.operand_roles[0]];
        const Qubit b = role[step.operand_roles[1]];
        out.add(step.label == "cz" ? Gate::cz(a, b) : Gate::cx(a, b));
      } else {
        out.add(Gate::single(step.label, role[step.operand_roles[0]], step.params));
      }
    }
  }
  return out;
}

GateCounts count_gates(const QuantumCircuit& circuit, const NativeGateSet& gates) {
  GateCounts counts;
  for (const Gate& gate : circuit.gates()) {
    if (gate.is_swap()) {
      ++counts.swaps;
      counts.total += gates.swap_decomposition.size();
      counts.noisy += gates.swap_noisy_count();
      continue;
    }
    ++counts.total;
    if (gate.is_two_qubit()) ++counts.two_qubit;
    if (gates.is_noisy(gate)) ++counts.noisy;
  }
  return counts;
}

}  // namespace muqut
