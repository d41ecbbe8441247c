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

#include "quanvo/qsim.hpp"

#include "quanvo/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "quanvo/rng.hpp"

namespace quanvo::qsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_target(const QuantumState& state, int qubit) {
    if (qubit < 0 || qubit >= state.n_qubits) {
        throw std::invalid_argument("qubit index " + std::to_string(qubit) +
                                    " out of range for " + std::to_string(state.n_qubits) +
                                    "-qubit state");
    }
}

// In-place 2x2 unitary on one target qubit.
void apply_1q(QuantumState& state, const Amplitude m[2][2], int target) {
    const std::size_t mask = std::size_t{1} << target;
    const std::size_t lo_mask = mask - 1;
    const std::size_t hi_mask = ~lo_mask;
    const std::size_t half = state.dim() >> 1;
    auto* a = state.amplitudes.data();
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = ((i & hi_mask) << 1) | (i & lo_mask);
        const std::size_t i1 = i0 | mask;
        const Amplitude a0 = a[i0];
        const Amplitude a1 = a[i1];
        a[i0] = m[0][0] * a0 + m[0][1] * a1;
        a[i1] = m[1][0] * a0 + m[1][1] * a1;
    }
}

} // namespace

double QuantumState::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

bool is_two_qubit(GateKind kind) {
    return kind == GateKind::CNOT || kind == GateKind::SWAP || kind == GateKind::CZ;
}

bool has_angle(GateKind kind) {
    return kind == GateKind::Rx || kind == GateKind::Ry || kind == GateKind::Rz;
}

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::Rx: return "RX";
        case GateKind::Ry: return "RY";
        case GateKind::Rz: return "RZ";
        case GateKind::H: return "H";
        case GateKind::T: return "T";
        case GateKind::CNOT: return "CNOT";
        case GateKind::SWAP: return "SWAP";
        case GateKind::CZ: return "CZ";
    }
    return "?";
}

GateOp GateOp::one_qubit(GateKind kind, int target, double angle) {
    if (is_two_qubit(kind)) {
        throw std::invalid_argument("one_qubit called with a 2-qubit gate kind");
    }
    if (!std::isfinite(angle)) {
        throw std::invalid_argument("gate angle must be finite");
    }
    GateOp op;
    op.kind = kind;
    op.targets[0] = target;
    op.targets[1] = target;
    op.angle = has_angle(kind) ? angle : 0.0;
    return op;
}

GateOp GateOp::two_qubit(GateKind kind, int a, int b) {
    if (!is_two_qubit(kind)) {
        throw std::invalid_argument("two_qubit called with a 1-qubit gate kind");
    }
    if (a == b) {
        throw std::invalid_argument("2-qubit gate targets must be distinct");
    }
    GateOp op;
    op.kind = kind;
    op.targets[0] = a;
    op.targets[1] = b;
    return op;
}

QuantumState ground_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("n_qubits must be in [1, " + std::to_string(kMaxQubits) +
                                    "], got " + std::to_string(n_qubits));
    }
    QuantumState state;
    state.n_qubits = n_qubits;
    state.amplitudes.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
    state.amplitudes[0] = Amplitude{1.0, 0.0};
    return state;
}

void apply_gate(QuantumState& state, const GateOp& gate) {
    check_target(state, gate.targets[0]);
    if (is_two_qubit(gate.kind)) {
        check_target(state, gate.targets[1]);
        if (gate.targets[0] == gate.targets[1]) {
            throw std::invalid_argument("2-qubit gate targets must be distinct");
        }
    }

    const double half_angle = gate.angle * 0.5;
    const double c = std::cos(half_angle);
    const double s = std::sin(half_angle);
    auto* a = state.amplitudes.data();

    switch (gate.kind) {
        case GateKind::Rx: {
            const Amplitude m[2][2] = {{{c, 0.0}, {0.0, -s}}, {{0.0, -s}, {c, 0.0}}};
            apply_1q(state, m, gate.targets[0]);
            return;
        }
        case GateKind::Ry: {
            const Amplitude m[2][2] = {{{c, 0.0}, {-s, 0.0}}, {{s, 0.0}, {c, 0.0}}};
            apply_1q(state, m, gate.targets[0]);
            return;
        }
        case GateKind::Rz: {
            const Amplitude m[2][2] = {{{c, -s}, {0.0, 0.0}}, {{0.0, 0.0}, {c, s}}};
            apply_1q(state, m, gate.targets[0]);
            return;
        }
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            const Amplitude m[2][2] = {{{r, 0.0}, {r, 0.0}}, {{r, 0.0}, {-r, 0.0}}};
            apply_1q(state, m, gate.targets[0]);
            return;
        }
        case GateKind::T: {
            const double r = 1.0 / std::sqrt(2.0);
            const Amplitude m[2][2] = {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {r, r}}};
            apply_1q(state, m, gate.targets[0]);
            return;
        }
        case GateKind::CNOT: {
            const std::size_t control_mask = std::size_t{1} << gate.targets[0];
            const std::size_t target_mask = std::size_t{1} << gate.targets[1];
            for (std::size_t i = 0; i < state.dim(); ++i) {
                if ((i & control_mask) && (i & target_mask) == 0) {
                    std::swap(a[i], a[i | target_mask]);
                }
            }
            return;
        }
        case GateKind::SWAP: {
            const std::size_t mask_a = std::size_t{1} << gate.targets[0];
            const std::size_t mask_b = std::size_t{1} << gate.targets[1];
            for (std::size_t i = 0; i < state.dim(); ++i) {
                if ((i & mask_a) && (i & mask_b) == 0) {
                    std::swap(a[i], a[(i & ~mask_a) | mask_b]);
                }
            }
            return;
        }
        case GateKind::CZ: {
            const std::size_t both = (std::size_t{1} << gate.targets[0]) |
                                     (std::size_t{1} << gate.targets[1]);
            for (std::size_t i = 0; i < state.dim(); ++i) {
                if ((i & both) == both) {
                    a[i] = -a[i];
                }
            }
            return;
        }
    }
}

void run_circuit(QuantumState& state, const RandomCircuit& circuit) {
    if (circuit.n_qubits != state.n_qubits) {
        throw std::invalid_argument("circuit is for " + std::to_string(circuit.n_qubits) +
                                    " qubits, state has " + std::to_string(state.n_qubits));
    }
    for (const auto& gate : circuit.gates) {
        apply_gate(state, gate);
    }
}

double expectation_z(const QuantumState& state, int qubit) {
    check_target(state, qubit);
    const std::size_t mask = std::size_t{1} << qubit;
    double value = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state.amplitudes[i]);
        value += (i & mask) ? -p : p;
    }
    return value;
}

RandomCircuit random_circuit(int n_qubits, int n_gates, std::uint64_t seed) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("n_qubits must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (n_gates < 0) {
        throw std::invalid_argument("n_gates must be >= 0");
    }

    RandomCircuit circuit;
    circuit.n_qubits = n_qubits;
    circuit.seed = seed;
    circuit.gates.reserve(static_cast<std::size_t>(n_gates));

    Rng rng(seed);
    for (int g = 0; g < n_gates; ++g) {
        auto kind = static_cast<GateKind>(rng.below(8));
        // A register with a single qubit cannot host 2-qubit gates.
        while (n_qubits < 2 && is_two_qubit(kind)) {
            kind = static_cast<GateKind>(rng.below(8));
        }

        GateOp op;
        op.kind = kind;
        op.targets[0] = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_qubits)));
        op.targets[1] = op.targets[0];
        if (is_two_qubit(kind)) {
            int second = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_qubits - 1)));
            if (second >= op.targets[0]) {
                ++second;
            }
            op.targets[1] = second;
        }
        if (has_angle(kind)) {
            op.angle = 2.0 * kPi * rng.real();
        }
        circuit.gates.push_back(op);
    }
    return circuit;
}

std::string circuit_to_text(const RandomCircuit& circuit) {
    std::string out = "qubits=" + std::to_string(circuit.n_qubits) +
                      " seed=" + std::to_string(circuit.seed) + "\n";
    char buf[64];
    for (const auto& gate : circuit.gates) {
        out += gate_name(gate.kind);
        out += ' ';
        out += std::to_string(gate.targets[0]);
        if (is_two_qubit(gate.kind)) {
            out += ',';
            out += std::to_string(gate.targets[1]);
        }
        if (has_angle(gate.kind)) {
            std::snprintf(buf, sizeof(buf), ";%.17g", gate.angle);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

RandomCircuit circuit_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) {
        throw FormatError("empty circuit text");
    }
    RandomCircuit circuit;
    unsigned long long seed = 0;
    if (std::sscanf(header.c_str(), "qubits=%d seed=%llu", &circuit.n_qubits, &seed) != 2) {
        throw FormatError("bad circuit header: " + header);
    }
    circuit.seed = seed;

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto space = line.find(' ');
        if (space == std::string::npos) {
            throw FormatError("bad circuit line: " + line);
        }
        const std::string name = line.substr(0, space);
        std::string rest = line.substr(space + 1);

        GateOp op;
        bool found = false;
        for (int k = 0; k < 8; ++k) {
            if (name == gate_name(static_cast<GateKind>(k))) {
                op.kind = static_cast<GateKind>(k);
                found = true;
                break;
            }
        }
        if (!found) {
            throw FormatError("unknown gate: " + name);
        }

        std::string targets_part = rest;
        if (const auto semi = rest.find(';'); semi != std::string::npos) {
            targets_part = rest.substr(0, semi);
            op.angle = std::stod(rest.substr(semi + 1));
        }
        if (const auto comma = targets_part.find(','); comma != std::string::npos) {
            op.targets[0] = std::stoi(targets_part.substr(0, comma));
            op.targets[1] = std::stoi(targets_part.substr(comma + 1));
        } else {
            op.targets[0] = std::stoi(targets_part);
            op.targets[1] = op.targets[0];
        }
        circuit.gates.push_back(op);
    }
    return circuit;
}

} // namespace quanvo::qsim
