#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "projrig/analysis.hpp"
#include "projrig/configuration.hpp"
#include "projrig/rigidity.hpp"

namespace projrig {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigFile {
  Configuration config;
  PinningSystem pins;
};

// JSON interchange, schemaVersion 1: entity coordinates are exact rational
// strings, incidences are [point, line] pairs and must hold exactly in the
// coordinates (checked on load, with the offending residual reported).
ConfigFile load_configuration(const std::filesystem::path& path);
ConfigFile parse_configuration(const std::string& text, const std::string& originName);

void save_configuration(const Configuration& config, const PinningSystem& pins,
                        const std::filesystem::path& path);
std::string configuration_to_json(const Configuration& config, const PinningSystem& pins);

// Analysis report as a stable-key-order JSON document tagged "report/v1";
// optional quantities are omitted rather than set to null.
std::string report_to_json(const AnalysisReport& report);

// One row per matrix row with its label, two columns per entity. Labels are
// CSV-quoted since incidence labels contain commas.
void write_matrix_csv(const RigidityMatrix& matrix, const std::filesystem::path& path);

// Writes through a temporary file in the target directory plus a rename, so
// readers never observe a half-written file.
void write_text_atomically(const std::string& text, const std::filesystem::path& path);

}  // namespace projrig
