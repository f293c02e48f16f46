#include "vqclass/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vqclass/errors.hpp"
#include "vqclass/rng.hpp"

namespace vqclass {

namespace {

void check_qubit(const Statevector& state, int q) {
    if (q < 0 || q >= state.num_qubits) {
        throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                                std::to_string(state.num_qubits) + "-qubit state");
    }
}

void check_gate(const Statevector& state, const GateOp& gate) {
    check_qubit(state, gate.q0);
    if (gate.is_two_qubit()) {
        check_qubit(state, gate.q1);
        if (gate.q0 == gate.q1) {
            throw std::out_of_range("two-qubit gate requires distinct qubits");
        }
    }
}

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

}  // namespace

Statevector zero_state(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw ConfigError("num_qubits must be in 1..=" + std::to_string(kMaxQubits) + ", got " +
                          std::to_string(num_qubits));
    }
    Statevector state;
    state.num_qubits = num_qubits;
    state.amplitudes.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    state.amplitudes[0] = Amplitude{1.0, 0.0};
    return state;
}

void apply_gate_inplace(Statevector& state, const GateOp& gate) {
    check_gate(state, gate);
    auto& amps = state.amplitudes;
    const std::size_t dim = amps.size();
    const std::size_t step = std::size_t{1} << gate.q0;

    switch (gate.kind) {
    case GateKind::H: {
        for (std::size_t base = 0; base < dim; base += step << 1) {
            for (std::size_t off = 0; off < step; ++off) {
                const std::size_t i0 = base + off;
                const std::size_t i1 = i0 + step;
                const Amplitude a = amps[i0], b = amps[i1];
                amps[i0] = kInvSqrt2 * (a + b);
                amps[i1] = kInvSqrt2 * (a - b);
            }
        }
        break;
    }
    case GateKind::PhaseZ: {
        // diag(e^{il}, e^{-il}) on the target qubit
        const Amplitude pos = std::polar(1.0, gate.angle);
        const Amplitude neg = std::polar(1.0, -gate.angle);
        for (std::size_t b = 0; b < dim; ++b) {
            amps[b] *= (b & step) ? neg : pos;
        }
        break;
    }
    case GateKind::ZZPhase: {
        const std::size_t mask1 = std::size_t{1} << gate.q1;
        const Amplitude pos = std::polar(1.0, gate.angle);
        const Amplitude neg = std::polar(1.0, -gate.angle);
        for (std::size_t b = 0; b < dim; ++b) {
            const bool z0 = (b & step) == 0;
            const bool z1 = (b & mask1) == 0;
            amps[b] *= (z0 == z1) ? pos : neg;  // z(a)*z(b) = +1 when bits agree
        }
        break;
    }
    case GateKind::RY: {
        const double c = std::cos(gate.angle / 2.0);
        const double s = std::sin(gate.angle / 2.0);
        for (std::size_t base = 0; base < dim; base += step << 1) {
            for (std::size_t off = 0; off < step; ++off) {
                const std::size_t i0 = base + off;
                const std::size_t i1 = i0 + step;
                const Amplitude a = amps[i0], b = amps[i1];
                amps[i0] = c * a - s * b;
                amps[i1] = s * a + c * b;
            }
        }
        break;
    }
    case GateKind::RZ: {
        const Amplitude lo = std::polar(1.0, -gate.angle / 2.0);
        const Amplitude hi = std::polar(1.0, gate.angle / 2.0);
        for (std::size_t b = 0; b < dim; ++b) {
            amps[b] *= (b & step) ? hi : lo;
        }
        break;
    }
    case GateKind::CX: {
        const std::size_t control = std::size_t{1} << gate.q0;
        const std::size_t target = std::size_t{1} << gate.q1;
        for (std::size_t b = 0; b < dim; ++b) {
            if ((b & control) && !(b & target)) {
                std::swap(amps[b], amps[b | target]);
            }
        }
        break;
    }
    }
}

Statevector apply_gate(const Statevector& state, const GateOp& gate) {
    Statevector out = state;
    apply_gate_inplace(out, gate);
    return out;
}

std::vector<double> probabilities(const Statevector& state) {
    std::vector<double> probs(state.dim());
    for (std::size_t b = 0; b < probs.size(); ++b) {
        probs[b] = std::norm(state.amplitudes[b]);
    }
    return probs;
}

CountsHistogram sample_counts(const Statevector& state, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be >= 1");
    }
    const std::vector<double> probs = probabilities(state);
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t b = 0; b < probs.size(); ++b) {
        acc += probs[b];
        cdf[b] = acc;
    }
    cdf.back() = std::max(cdf.back(), 1.0);  // guard the final bucket against rounding

    CountsHistogram hist;
    hist.shots = shots;
    Rng rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto b = static_cast<std::uint64_t>(std::distance(cdf.begin(), it));
        ++hist.counts[std::min<std::uint64_t>(b, probs.size() - 1)];
    }
    return hist;
}

double state_norm(const Statevector& state) {
    double sum = 0.0;
    for (const auto& a : state.amplitudes) sum += std::norm(a);
    return std::sqrt(sum);
}

std::complex<double> inner_product(const Statevector& a, const Statevector& b) {
    if (a.num_qubits != b.num_qubits) {
        throw std::invalid_argument("inner_product: qubit counts differ");
    }
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    }
    return acc;
}

}  // namespace vqclass
