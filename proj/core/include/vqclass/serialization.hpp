#pragma once

#include <string>

#include "vqclass/svm.hpp"
#include "vqclass/vqc.hpp"

namespace vqclass {

// Flat `key = value` text format, one entry per line, so trained models can
// be re-loaded for prediction. Doubles round-trip exactly (%.17g).

std::string serialize_vqc(const VqcModel& model);
VqcModel deserialize_vqc(const std::string& text);

std::string serialize_svm(const SvmModel& model);
SvmModel deserialize_svm(const std::string& text);

void save_model_file(const std::string& path, const std::string& serialized);
std::string read_model_file(const std::string& path);

}  // namespace vqclass
