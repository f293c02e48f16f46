#include "vqclass/circuits.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "vqclass/errors.hpp"

namespace vqclass {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_spec(const FeatureMapSpec& spec) {
    if (spec.num_qubits < 1 || spec.num_qubits > kMaxQubits) {
        throw ConfigError("feature map num_qubits out of range");
    }
    if (spec.repetitions < 1) {
        throw ConfigError("feature map repetitions must be >= 1");
    }
    for (const auto& [a, b] : spec.entangling_pairs) {
        if (a < 0 || b < 0 || a >= spec.num_qubits || b >= spec.num_qubits || a == b) {
            throw ConfigError("feature map entangling pair references invalid qubits");
        }
    }
}

double pair_phase(DataMap map, double xi, double xj) {
    switch (map) {
    case DataMap::Product:
        return xi * xj;
    case DataMap::Havlicek:
        return (kPi - xi) * (kPi - xj);
    }
    return 0.0;
}

std::string format_angle(double angle) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", angle);
    return buf;
}

}  // namespace

std::vector<std::pair<int, int>> FeatureMapSpec::effective_pairs() const {
    if (!entangling_pairs.empty()) {
        return entangling_pairs;
    }
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < num_qubits; ++i) {
        for (int j = i + 1; j < num_qubits; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

Circuit build_feature_map(const std::vector<double>& x, const FeatureMapSpec& spec) {
    check_spec(spec);
    if (static_cast<int>(x.size()) != spec.num_qubits) {
        throw std::invalid_argument("feature vector length " + std::to_string(x.size()) +
                                    " != num_qubits " + std::to_string(spec.num_qubits));
    }
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("feature vector contains a non-finite value");
        }
    }

    const auto pairs = spec.effective_pairs();
    Circuit circuit;
    circuit.num_qubits = spec.num_qubits;
    for (int rep = 0; rep < spec.repetitions; ++rep) {
        for (int q = 0; q < spec.num_qubits; ++q) {
            circuit.gates.push_back(GateOp::h(q));
        }
        for (int q = 0; q < spec.num_qubits; ++q) {
            circuit.gates.push_back(GateOp::phase_z(q, x[static_cast<std::size_t>(q)]));
        }
        for (const auto& [i, j] : pairs) {
            const double phi = pair_phase(spec.data_map, x[static_cast<std::size_t>(i)],
                                          x[static_cast<std::size_t>(j)]);
            circuit.gates.push_back(GateOp::zz_phase(i, j, phi));
        }
    }
    return circuit;
}

Circuit build_ansatz(const std::vector<double>& theta, const AnsatzSpec& spec) {
    if (spec.num_qubits < 1 || spec.num_qubits > kMaxQubits) {
        throw ConfigError("ansatz num_qubits out of range");
    }
    if (spec.layers < 1) {
        throw ConfigError("ansatz layers must be >= 1");
    }
    if (static_cast<int>(theta.size()) != spec.parameter_count()) {
        throw std::invalid_argument("theta length " + std::to_string(theta.size()) +
                                    " != parameter_count " + std::to_string(spec.parameter_count()));
    }

    Circuit circuit;
    circuit.num_qubits = spec.num_qubits;
    std::size_t p = 0;
    auto rotation_layer = [&] {
        for (int q = 0; q < spec.num_qubits; ++q) {
            circuit.gates.push_back(GateOp::ry(q, theta[p++]));
            circuit.gates.push_back(GateOp::rz(q, theta[p++]));
        }
    };

    rotation_layer();
    for (int layer = 0; layer < spec.layers; ++layer) {
        for (int q = 0; q + 1 < spec.num_qubits; ++q) {
            circuit.gates.push_back(GateOp::cx(q, q + 1));
        }
        rotation_layer();
    }
    return circuit;
}

Statevector run(const Circuit& circuit, const Statevector& initial) {
    if (circuit.num_qubits != initial.num_qubits) {
        throw std::invalid_argument("circuit qubit count != state qubit count");
    }
    Statevector state = initial;
    for (const GateOp& gate : circuit.gates) {
        apply_gate_inplace(state, gate);
    }
    return state;
}

std::string to_debug_string(const Circuit& circuit) {
    std::string out;
    for (const GateOp& gate : circuit.gates) {
        switch (gate.kind) {
        case GateKind::H:
            out += "H " + std::to_string(gate.q0);
            break;
        case GateKind::PhaseZ:
            out += "PHASEZ " + std::to_string(gate.q0) + " " + format_angle(gate.angle);
            break;
        case GateKind::ZZPhase:
            out += "ZZPHASE " + std::to_string(gate.q0) + " " + std::to_string(gate.q1) + " " +
                   format_angle(gate.angle);
            break;
        case GateKind::RY:
            out += "RY " + std::to_string(gate.q0) + " " + format_angle(gate.angle);
            break;
        case GateKind::RZ:
            out += "RZ " + std::to_string(gate.q0) + " " + format_angle(gate.angle);
            break;
        case GateKind::CX:
            out += "CX " + std::to_string(gate.q0) + " " + std::to_string(gate.q1);
            break;
        }
        out += '\n';
    }
    return out;
}

}  // namespace vqclass
