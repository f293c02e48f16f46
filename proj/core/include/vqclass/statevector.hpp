#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace vqclass {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 10;

// Dense n-qubit pure state. Basis index b encodes qubit k as bit k of b
// (qubit 0 = least significant bit).
struct Statevector {
    int num_qubits = 0;
    std::vector<Amplitude> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
};

enum class GateKind { H, PhaseZ, ZZPhase, RY, RZ, CX };

// One primitive circuit instruction. q1 is the second qubit for two-qubit
// gates (ZZPhase partner, CX target); angle is in radians.
//
// Conventions:
//   PhaseZ(q, l)      = exp(i*l*Z)   = diag(e^{il}, e^{-il}) on qubit q
//   ZZPhase(a, b, l)  = exp(i*l*Z_a Z_b): basis state picks up e^{il*z(a)*z(b)}
//                       with z(q) = +1 when bit q is 0, -1 when it is 1
//   RY(q, t)          = exp(-i*t*Y/2), RZ(q, t) = exp(-i*t*Z/2)
//   CX(c, t)          flips bit t where bit c is set
struct GateOp {
    GateKind kind;
    int q0 = 0;
    int q1 = -1;
    double angle = 0.0;

    static GateOp h(int q) { return {GateKind::H, q, -1, 0.0}; }
    static GateOp phase_z(int q, double lambda) { return {GateKind::PhaseZ, q, -1, lambda}; }
    static GateOp zz_phase(int qa, int qb, double lambda) { return {GateKind::ZZPhase, qa, qb, lambda}; }
    static GateOp ry(int q, double theta) { return {GateKind::RY, q, -1, theta}; }
    static GateOp rz(int q, double theta) { return {GateKind::RZ, q, -1, theta}; }
    static GateOp cx(int control, int target) { return {GateKind::CX, control, target, 0.0}; }

    bool is_two_qubit() const { return kind == GateKind::ZZPhase || kind == GateKind::CX; }
    // Inverse gate: negated angle for rotations/phases; H and CX are self-inverse.
    GateOp inverse() const { return {kind, q0, q1, -angle}; }
};

struct CountsHistogram {
    std::map<std::uint64_t, std::uint64_t> counts;  // basis index -> shot count
    std::uint64_t shots = 0;
};

// |0...0> on num_qubits qubits. Throws ConfigError outside 1..=10.
Statevector zero_state(int num_qubits);

// Returns U_gate * state. Throws std::out_of_range on invalid qubit indices.
Statevector apply_gate(const Statevector& state, const GateOp& gate);

// In-place kernel behind apply_gate; used by circuit execution.
void apply_gate_inplace(Statevector& state, const GateOp& gate);

// p[b] = |amplitudes[b]|^2.
std::vector<double> probabilities(const Statevector& state);

// Measurement sampling: shots i.i.d. draws from probabilities(state) by
// inverse CDF over the cumulative probability vector, seeded 64-bit PRNG.
// Throws std::invalid_argument when shots == 0.
CountsHistogram sample_counts(const Statevector& state, std::uint64_t shots, std::uint64_t seed);

double state_norm(const Statevector& state);

std::complex<double> inner_product(const Statevector& a, const Statevector& b);

}  // namespace vqclass
