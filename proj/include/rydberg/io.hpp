// io.hpp - instance and register JSON, CSV output with a self-describing header.

#pragma once

#include "rydberg/graphs.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rydberg {

inline constexpr const char* kVersion = "1.0.0";

struct Instance {
  std::string name;
  DiskGraph graph;
  std::optional<std::vector<Edge>> target_edges;
  std::optional<std::uint64_t> seed;
  std::string description;

  // target_edges when present, else the induced edge set.
  AbstractGraph target() const;
};

// Throws ValidationError on schema violations, coincident centers, or when
// target_edges disagree with the geometry (the message lists the pairs).
Instance instance_from_json(const nlohmann::json& j);
Instance parse_instance(const std::filesystem::path& path);
nlohmann::json instance_to_json(const Instance& inst);
void write_instance(const std::filesystem::path& path, const Instance& inst);

AtomRegister register_from_json(const nlohmann::json& j);
nlohmann::json register_to_json(const AtomRegister& reg);

// Fixed %.12g formatting used for every numeric CSV field.
std::string format_number(double v);

// 64-bit FNV-1a of the compact JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(std::vector<std::string> cells);
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

  // "# version", "# config_hash", optional extra comment lines, column row, data rows.
  std::string render(const nlohmann::json& config, const std::vector<std::string>& comments = {}) const;
  void write(const std::filesystem::path& path, const nlohmann::json& config,
             const std::vector<std::string>& comments = {}) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

struct CsvData {
  std::vector<std::string> comments;  // without the leading '#'
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

CsvData parse_csv(const std::string& text);

}  // namespace rydberg
