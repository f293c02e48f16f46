#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vqclass/statevector.hpp"

namespace vqclass {

// Coefficient functions for the diagonal phase layer.
//   Product:  phi_i(x) = x_i,  phi_ij(x) = x_i * x_j
//   Havlicek: phi_i(x) = x_i,  phi_ij(x) = (pi - x_i) * (pi - x_j)
enum class DataMap { Product, Havlicek };

// Data-encoding circuit built as `repetitions` blocks of
//   H on every qubit, then PhaseZ(i, phi_i(x)), then ZZPhase(i, j, phi_ij(x))
// over the entangling pairs. With repetitions = 2 this is the two-block
// phase-gate encoding acting on |0...0>.
struct FeatureMapSpec {
    int num_qubits = 2;
    int repetitions = 2;
    DataMap data_map = DataMap::Product;
    // Entangling pairs; empty means all i < j.
    std::vector<std::pair<int, int>> entangling_pairs;

    std::vector<std::pair<int, int>> effective_pairs() const;
};

// Trainable circuit: a rotation layer (RY then RZ on each qubit), then
// `layers` repetitions of [linear CX chain, rotation layer].
struct AnsatzSpec {
    int num_qubits = 2;
    int layers = 1;

    int parameter_count() const { return 2 * num_qubits * (layers + 1); }
};

struct Circuit {
    int num_qubits = 0;
    std::vector<GateOp> gates;
};

// Builds the encoding circuit for a single sample. Throws
// std::invalid_argument when len(x) != spec.num_qubits or x has non-finite
// entries; ConfigError for a malformed spec.
Circuit build_feature_map(const std::vector<double>& x, const FeatureMapSpec& spec);

// Builds the variational circuit. Throws std::invalid_argument when
// len(theta) != spec.parameter_count().
Circuit build_ansatz(const std::vector<double>& theta, const AnsatzSpec& spec);

// Folds apply_gate over the circuit. Throws std::invalid_argument when the
// qubit counts disagree.
Statevector run(const Circuit& circuit, const Statevector& initial);

// One gate per line: `GATE q0 [q1] [angle]`, for golden-file tests.
std::string to_debug_string(const Circuit& circuit);

}  // namespace vqclass
