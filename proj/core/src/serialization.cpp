#include "vqclass/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "vqclass/errors.hpp"

namespace vqclass {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

class KvMap {
public:
    explicit KvMap(const std::string& text) {
        std::stringstream ss(text);
        std::string line;
        while (std::getline(ss, line)) {
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw LoadError("model file: expected `key = value`, got: " + line);
            }
            map_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
    }

    const std::string& str(const std::string& key) const {
        const auto it = map_.find(key);
        if (it == map_.end()) {
            throw LoadError("model file: missing key '" + key + "'");
        }
        return it->second;
    }

    double num(const std::string& key) const {
        try {
            return std::stod(str(key));
        } catch (const std::exception&) {
            throw LoadError("model file: bad numeric value for '" + key + "'");
        }
    }

    long integer(const std::string& key) const {
        try {
            return std::stol(str(key));
        } catch (const std::exception&) {
            throw LoadError("model file: bad integer value for '" + key + "'");
        }
    }

private:
    std::map<std::string, std::string> map_;
};

}  // namespace

std::string serialize_vqc(const VqcModel& model) {
    std::string out;
    out += "format = vqclass-model-v1\n";
    out += "kind = vqc\n";
    out += "num_qubits = " + std::to_string(model.feature_map.num_qubits) + "\n";
    out += "repetitions = " + std::to_string(model.feature_map.repetitions) + "\n";
    out += std::string("data_map = ") +
           (model.feature_map.data_map == DataMap::Product ? "product" : "havlicek") + "\n";
    std::string pairs;
    for (const auto& [a, b] : model.feature_map.effective_pairs()) {
        if (!pairs.empty()) pairs += ',';
        pairs += std::to_string(a) + "-" + std::to_string(b);
    }
    out += "pairs = " + pairs + "\n";
    out += "layers = " + std::to_string(model.ansatz.layers) + "\n";
    out += "theta_count = " + std::to_string(model.theta.size()) + "\n";
    for (std::size_t i = 0; i < model.theta.size(); ++i) {
        out += "theta_" + std::to_string(i) + " = " + fmt(model.theta[i]) + "\n";
    }
    out += "threshold = " + fmt(model.decision_threshold) + "\n";
    out += "shots = " + std::to_string(model.shots) + "\n";
    out += "seed = " + std::to_string(model.seed) + "\n";
    return out;
}

VqcModel deserialize_vqc(const std::string& text) {
    const KvMap kv(text);
    if (kv.str("kind") != "vqc") {
        throw LoadError("model file: kind is not 'vqc'");
    }
    VqcModel model;
    model.feature_map.num_qubits = static_cast<int>(kv.integer("num_qubits"));
    model.feature_map.repetitions = static_cast<int>(kv.integer("repetitions"));
    const std::string map_name = kv.str("data_map");
    if (map_name == "product") {
        model.feature_map.data_map = DataMap::Product;
    } else if (map_name == "havlicek") {
        model.feature_map.data_map = DataMap::Havlicek;
    } else {
        throw LoadError("model file: unknown data_map '" + map_name + "'");
    }
    const std::string pairs = kv.str("pairs");
    std::stringstream ps(pairs);
    std::string token;
    while (std::getline(ps, token, ',')) {
        const auto dash = token.find('-');
        if (dash == std::string::npos) {
            throw LoadError("model file: bad pair token '" + token + "'");
        }
        model.feature_map.entangling_pairs.emplace_back(std::stoi(token.substr(0, dash)),
                                                        std::stoi(token.substr(dash + 1)));
    }
    model.ansatz.num_qubits = model.feature_map.num_qubits;
    model.ansatz.layers = static_cast<int>(kv.integer("layers"));
    const auto count = static_cast<std::size_t>(kv.integer("theta_count"));
    model.theta.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        model.theta[i] = kv.num("theta_" + std::to_string(i));
    }
    model.decision_threshold = kv.num("threshold");
    model.shots = static_cast<int>(kv.integer("shots"));
    model.seed = static_cast<std::uint64_t>(kv.integer("seed"));
    return model;
}

std::string serialize_svm(const SvmModel& model) {
    std::string out;
    out += "format = vqclass-model-v1\n";
    out += "kind = svm\n";
    out += "num_features = " + std::to_string(model.weights.size()) + "\n";
    for (std::size_t i = 0; i < model.weights.size(); ++i) {
        out += "w_" + std::to_string(i) + " = " + fmt(model.weights[i]) + "\n";
    }
    out += "b = " + fmt(model.bias) + "\n";
    out += "c = " + fmt(model.c) + "\n";
    return out;
}

SvmModel deserialize_svm(const std::string& text) {
    const KvMap kv(text);
    if (kv.str("kind") != "svm") {
        throw LoadError("model file: kind is not 'svm'");
    }
    SvmModel model;
    const auto count = static_cast<std::size_t>(kv.integer("num_features"));
    model.weights.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        model.weights[i] = kv.num("w_" + std::to_string(i));
    }
    model.bias = kv.num("b");
    model.c = kv.num("c");
    return model;
}

void save_model_file(const std::string& path, const std::string& serialized) {
    std::ofstream out(path);
    if (!out) {
        throw LoadError("cannot open model file for writing: " + path);
    }
    out << serialized;
}

std::string read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw LoadError("cannot open model file: " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace vqclass
