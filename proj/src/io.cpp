#include "projrig/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace projrig {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Rational parse_coord(const json& value, const std::string& where) {
  if (!value.is_string()) {
    throw IoError(where + ": coordinates must be rational strings like \"-3/4\"");
  }
  try {
    return rational_from_string(value.get<std::string>());
  } catch (const ParseError& e) {
    throw IoError(where + ": " + e.what());
  }
}

HomogeneousTriple parse_entity(const json& entry, EntityKind kind, const std::string& where) {
  if (!entry.is_object() || !entry.contains("id") || !entry.contains("coords")) {
    throw IoError(where + ": each entity needs an \"id\" and a \"coords\" array");
  }
  const json& coords = entry.at("coords");
  if (!coords.is_array() || coords.size() != 3) {
    throw IoError(where + ": \"coords\" must hold exactly three rational strings");
  }
  try {
    return HomogeneousTriple(parse_coord(coords[0], where), parse_coord(coords[1], where),
                             parse_coord(coords[2], where), kind);
  } catch (const GeometryError& e) {
    throw IoError(where + ": " + e.what());
  }
}

}  // namespace

ConfigFile parse_configuration(const std::string& text, const std::string& originName) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(originName + ": not valid JSON: " + e.what());
  }
  if (!doc.is_object()) {
    throw IoError(originName + ": top level must be an object");
  }
  if (!doc.contains("schemaVersion") || !doc.at("schemaVersion").is_number_integer() ||
      doc.at("schemaVersion").get<int>() != 1) {
    throw IoError(originName + ": expected \"schemaVersion\": 1");
  }

  IncidenceStructure structure;
  std::map<std::string, HomogeneousTriple> coords;
  for (const char* kindKey : {"points", "lines"}) {
    if (!doc.contains(kindKey) || !doc.at(kindKey).is_array()) {
      throw IoError(originName + ": missing \"" + std::string(kindKey) + "\" array");
    }
    EntityKind kind = kindKey == std::string("points") ? EntityKind::Point : EntityKind::Line;
    for (const json& entry : doc.at(kindKey)) {
      std::string where = originName + ", " + kindKey;
      if (entry.is_object() && entry.contains("id") && entry.at("id").is_string()) {
        where += " entry '" + entry.at("id").get<std::string>() + "'";
      }
      HomogeneousTriple t = parse_entity(entry, kind, where);
      std::string id = entry.at("id").get<std::string>();
      auto& list = kind == EntityKind::Point ? structure.points : structure.lines;
      list.push_back(id);
      coords.emplace(std::move(id), std::move(t));
    }
  }

  if (!doc.contains("incidences") || !doc.at("incidences").is_array()) {
    throw IoError(originName + ": missing \"incidences\" array");
  }
  for (const json& pair : doc.at("incidences")) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
      throw IoError(originName + ": incidences must be [point, line] id pairs");
    }
    structure.incidences.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
  }

  ConfigFile result;
  try {
    result.config = make_configuration(std::move(structure), std::move(coords));
  } catch (const ValidationError& e) {
    throw IoError(originName + ": " + e.what());
  }

  if (doc.contains("pins")) {
    const json& pins = doc.at("pins");
    if (!pins.is_object()) {
      throw IoError(originName + ": \"pins\" must be an object");
    }
    for (const char* kindKey : {"points", "lines"}) {
      if (!pins.contains(kindKey)) continue;
      if (!pins.at(kindKey).is_array()) {
        throw IoError(originName + ": \"pins." + std::string(kindKey) + "\" must be an array");
      }
      for (const json& id : pins.at(kindKey)) {
        if (!id.is_string()) {
          throw IoError(originName + ": pin ids must be strings");
        }
        auto& list = kindKey == std::string("points") ? result.pins.points : result.pins.lines;
        list.push_back(id.get<std::string>());
      }
    }
    try {
      result.pins.validate_against(result.config.structure);
    } catch (const ValidationError& e) {
      throw IoError(originName + ": " + e.what());
    }
  }
  return result;
}

ConfigFile load_configuration(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_configuration(buffer.str(), path.string());
}

std::string configuration_to_json(const Configuration& config, const PinningSystem& pins) {
  ordered_json doc;
  doc["schemaVersion"] = 1;
  doc["points"] = ordered_json::array();
  doc["lines"] = ordered_json::array();
  for (const char* kindKey : {"points", "lines"}) {
    bool isPoint = kindKey == std::string("points");
    for (const auto& id : isPoint ? config.structure.points : config.structure.lines) {
      const HomogeneousTriple& t = config.coords.at(id);
      ordered_json entry;
      entry["id"] = id;
      entry["coords"] = {rational_to_string(t.coords[0]), rational_to_string(t.coords[1]),
                         rational_to_string(t.coords[2])};
      doc[kindKey].push_back(std::move(entry));
    }
  }
  doc["incidences"] = ordered_json::array();
  for (const auto& [p, l] : config.structure.incidences) {
    doc["incidences"].push_back({p, l});
  }
  if (!pins.empty()) {
    doc["pins"] = {{"points", pins.points}, {"lines", pins.lines}};
  }
  return doc.dump(2) + "\n";
}

void save_configuration(const Configuration& config, const PinningSystem& pins,
                        const std::filesystem::path& path) {
  write_text_atomically(configuration_to_json(config, pins), path);
}

std::string report_to_json(const AnalysisReport& report) {
  ordered_json doc;
  doc["schema"] = "report/v1";
  doc["configuration"] = {{"points", report.pointCount},
                          {"lines", report.lineCount},
                          {"incidences", report.incidenceCount}};
  doc["dofBudget"] = report.dofBudget;
  doc["arithmetic"] = report.arithmeticMode;
  auto put = [&doc](const char* key, const std::optional<std::size_t>& value) {
    if (value) doc[key] = *value;
  };
  put("rank", report.rank);
  put("nullity", report.nullity);
  put("trivialSpan", report.trivialSpanDim);
  put("nontrivialFlexDim", report.nontrivialFlexDim);
  put("stressDim", report.stressDim);
  if (report.pinnedRank || report.pinnedNullity) {
    ordered_json pinned;
    if (report.pinnedRank) pinned["rank"] = *report.pinnedRank;
    if (report.pinnedNullity) pinned["nullity"] = *report.pinnedNullity;
    doc["pinned"] = std::move(pinned);
  }
  doc["dependent"] = report.dependent;
  doc["independenceLabel"] = report.independenceLabel;
  doc["motionLabel"] = report.motionLabel;
  return doc.dump(2) + "\n";
}

void write_matrix_csv(const RigidityMatrix& matrix, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "row";
  for (const auto& id : matrix.layout.pointIds) {
    out << ",\"" << id << ".dx\",\"" << id << ".dy\"";
  }
  for (const auto& id : matrix.layout.lineIds) {
    out << ",\"" << id << ".da\",\"" << id << ".db\"";
  }
  out << "\n";
  for (std::size_t r = 0; r < matrix.entries.rows(); ++r) {
    out << '"' << matrix.rowLabels[r].describe() << '"';
    for (std::size_t c = 0; c < matrix.entries.cols(); ++c) {
      out << ',' << rational_to_string(matrix.entries.at(r, c));
    }
    out << "\n";
  }
  write_text_atomically(out.str(), path);
}

void write_text_atomically(const std::string& text, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot write " + tmp.string());
    }
    out << text;
    if (!out.flush()) {
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

}  // namespace projrig
