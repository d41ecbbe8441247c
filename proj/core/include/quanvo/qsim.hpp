// Copyright 2026 The Quanvo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace quanvo::qsim {

using Amplitude = std::complex<double>;

/// Dense state vector of an n-qubit register. Qubit 0 is the least
/// significant bit of the amplitude index.
struct QuantumState {
    int n_qubits = 0;
    std::vector<Amplitude> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
    double norm() const;
};

/// Largest register the dense simulator accepts.
inline constexpr int kMaxQubits = 12;

enum class GateKind : std::uint8_t { Rx, Ry, Rz, H, T, CNOT, SWAP, CZ };

bool is_two_qubit(GateKind kind);
bool has_angle(GateKind kind);
const char* gate_name(GateKind kind);

/// One gate application. For CNOT, targets[0] is the control and
/// targets[1] the target; SWAP and CZ are symmetric in their targets.
struct GateOp {
    GateKind kind = GateKind::H;
    int targets[2] = {0, 0};
    double angle = 0.0;

    static GateOp one_qubit(GateKind kind, int target, double angle = 0.0);
    static GateOp two_qubit(GateKind kind, int a, int b);
};

/// A fixed, seeded gate sequence. Regenerating from (seed, n_qubits,
/// gates.size()) reproduces the identical list.
struct RandomCircuit {
    int n_qubits = 0;
    std::uint64_t seed = 0;
    std::vector<GateOp> gates;
};

/// |0...0> register. n_qubits outside [1, 12] is invalid-argument.
QuantumState ground_state(int n_qubits);

/// Multiplies the state by the gate's unitary embedded on its targets.
void apply_gate(QuantumState& state, const GateOp& gate);

/// Applies circuit.gates in order. Requires matching qubit counts.
void run_circuit(QuantumState& state, const RandomCircuit& circuit);

/// <Z> on one qubit: sum of |a_i|^2 * (+1 / -1) by the qubit's bit value.
double expectation_z(const QuantumState& state, int qubit);

/// Seeded random circuit with the documented draw procedure: per gate the
/// kind is uniform over the 8-member gate set (redrawn if a 2-qubit kind
/// is picked with n_qubits < 2), targets uniform without replacement, and
/// the angle uniform over [0, 2*pi) for rotation gates.
RandomCircuit random_circuit(int n_qubits, int n_gates, std::uint64_t seed);

/// Text form used for golden files: header "qubits=N seed=S", then one
/// line per gate "KIND target[,target2][;angle_radians_17sigfig]".
std::string circuit_to_text(const RandomCircuit& circuit);
RandomCircuit circuit_from_text(const std::string& text);

} // namespace quanvo::qsim
