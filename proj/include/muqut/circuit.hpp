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

/**
 * @file circuit.hpp
 * @brief Levelized quantum circuit IR.
 *
 * A circuit is an ordered gate list over qubit ids `0..num_qubits-1`. Only
 * one- and two-qubit gates exist: the mapper reasons about pairwise
 * interactions, so multi-control gates are rejected at parse time.
 *
 * Text format (one statement per line, `#` starts a comment):
 * @code
 * qubits 4
 * layout 2,0,1,3      # optional: logical qubit i sits on physical layout[i]
 * cx 2,1              # control first
 * swap 0,3            # a SWAP written by the user
 * rswap 1,2           # a routing SWAP inserted by the mapper
 * u1 0 0.5            # single-qubit gate: label, qubit, parameters
 * @endcode
 */

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace muqut {

using Qubit = int;

enum class GateKind {
  Cx,      ///< CNOT, operands {control, target}
  Cz,      ///< controlled-Z (native two-qubit gate on some devices)
  Swap,    ///< SWAP; `routing` tells whether the mapper inserted it
  Single,  ///< any single-qubit gate, identified by its label
};

struct Gate {
  GateKind kind = GateKind::Single;
  std::string label;           ///< text mnemonic ("cx", "swap", "h", "u3", ...)
  std::vector<double> params;  ///< single-qubit rotation parameters
  std::vector<Qubit> operands; ///< control(s) before target
  bool routing = false;        ///< SWAP inserted by the mapper
  std::optional<int> level;    ///< 1-based level, set by levelize()

  static Gate cx(Qubit control, Qubit target);
  static Gate cz(Qubit a, Qubit b);
  static Gate swap(Qubit a, Qubit b, bool routing = false);
  static Gate single(std::string label, Qubit q, std::vector<double> params = {});

  [[nodiscard]] bool is_two_qubit() const noexcept { return operands.size() == 2; }
  [[nodiscard]] bool is_swap() const noexcept { return kind == GateKind::Swap; }

  /// Structural equality; ignores the level annotation.
  friend bool operator==(const Gate& lhs, const Gate& rhs) {
    return lhs.kind == rhs.kind && lhs.label == rhs.label && lhs.params == rhs.params &&
           lhs.operands == rhs.operands && lhs.routing == rhs.routing;
  }
};

struct Level {
  int index = 0;                  ///< 1-based position in the circuit
  std::vector<std::size_t> gates; ///< indices into QuantumCircuit::gates()
};

/// Adjacency requirements of one level: one unordered pair per two-qubit gate.
struct InteractionSet {
  int level_index = 0;
  std::vector<std::pair<Qubit, Qubit>> pairs;  ///< normalized (min, max), sorted

  [[nodiscard]] std::size_t size() const noexcept { return pairs.size(); }
  [[nodiscard]] bool empty() const noexcept { return pairs.empty(); }
};

class QuantumCircuit {
 public:
  QuantumCircuit() = default;
  explicit QuantumCircuit(int num_qubits);

  /// Appends a gate after validating operand count, range and distinctness.
  /// Throws std::invalid_argument on violation.
  void add(Gate gate);

  [[nodiscard]] int num_qubits() const noexcept { return num_qubits_; }
  [[nodiscard]] const std::vector<Gate>& gates() const noexcept { return gates_; }
  [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
  [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }

  /// Levels; empty until levelize() has run (or the circuit has no gates).
  [[nodiscard]] const std::vector<Level>& levels() const noexcept { return levels_; }
  [[nodiscard]] bool is_levelized() const noexcept { return levelized_; }
  /// Logical depth in cycles (number of levels). Levelizes a copy if needed.
  [[nodiscard]] int depth() const;

  /// Optional physical placement of logical qubits (`layout[q]` = vertex).
  [[nodiscard]] const std::optional<std::vector<int>>& layout() const noexcept {
    return layout_;
  }
  void set_layout(std::vector<int> layout) { layout_ = std::move(layout); }

  friend bool operator==(const QuantumCircuit& lhs, const QuantumCircuit& rhs) {
    return lhs.num_qubits_ == rhs.num_qubits_ && lhs.gates_ == rhs.gates_ &&
           lhs.layout_ == rhs.layout_;
  }

 private:
  friend QuantumCircuit levelize(const QuantumCircuit& circuit);

  int num_qubits_ = 0;
  std::vector<Gate> gates_;
  std::vector<Level> levels_;
  bool levelized_ = false;
  std::optional<std::vector<int>> layout_;
};

/// Parses the line-oriented circuit format. Throws ParseError.
QuantumCircuit parse_circuit(std::string_view text);

/// Reads and parses a circuit file. Throws ParseError (also for I/O failure).
QuantumCircuit load_circuit(const std::string& path);

/// Serializes a circuit; parse_circuit(emit_circuit(c)) == c.
std::string emit_circuit(const QuantumCircuit& circuit);

/// As-soon-as-possible levelization: each gate lands one level after the
/// latest previous gate on any of its operands.
QuantumCircuit levelize(const QuantumCircuit& circuit);

/// Interaction set of `level` (which must belong to `circuit`).
InteractionSet interaction_of(const Level& level, const QuantumCircuit& circuit);

/// Interaction sets of every level, in level order. Levelizes if needed.
std::vector<InteractionSet> interactions(const QuantumCircuit& circuit);

/// One gate of a native SWAP expansion; operand 0 is the lower-indexed qubit.
struct NativeStep {
  std::string label;
  std::vector<int> operand_roles;  ///< 0 = first SWAP operand, 1 = second
  std::vector<double> params;
  bool noisy = true;
};

struct NativeGateSet {
  std::string name;
  std::vector<NativeStep> swap_decomposition;
  std::set<std::string> noise_free_labels;  ///< everything else counts as noisy

  [[nodiscard]] bool is_noisy(const Gate& gate) const;
  [[nodiscard]] std::size_t swap_noisy_count() const;
};

/// Preset lookup: "ibm" (SWAP = 3 CNOT) or "rigetti" (SWAP = 18 gates, 11 noisy).
/// Throws std::invalid_argument for unknown names.
NativeGateSet native_gate_set(std::string_view name);

/// Replaces every SWAP (user or routing) by the native sequence of `gates`,
/// operands ordered lower index first. Other gates are untouched.
QuantumCircuit decompose_swaps(const QuantumCircuit& circuit, const NativeGateSet& gates);

struct GateCounts {
  std::size_t total = 0;
  std::size_t noisy = 0;
  std::size_t swaps = 0;
  std::size_t two_qubit = 0;
};

/// Counts gates after native SWAP decomposition under `gates`.
GateCounts count_gates(const QuantumCircuit& circuit, const NativeGateSet& gates);

}  // namespace muqut
