#include "rydberg/io.hpp"

#include "rydberg/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace rydberg {

using nlohmann::json;

AbstractGraph Instance::target() const {
  if (target_edges) return AbstractGraph(graph.size(), *target_edges);
  return graph.graph();
}

namespace {

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) throw ValidationError(where + ": expected a number");
  return j.get<double>();
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(where + ": missing field '" + key + "'");
  return j.at(key);
}

bool is_index(const json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0); }

}  // namespace

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("instance: top level must be an object");
  const json& name = field(j, "name", "instance");
  if (!name.is_string()) throw ValidationError("instance: 'name' must be a string");

  const json& centers_j = field(j, "centers", "instance");
  const json& radii_j = field(j, "radii", "instance");
  if (!centers_j.is_array() || !radii_j.is_array()) throw ValidationError("instance: 'centers' and 'radii' must be arrays");
  if (centers_j.size() != radii_j.size()) throw ValidationError("instance: 'centers' and 'radii' differ in length");
  std::vector<Vec2> centers;
  std::vector<double> radii;
  for (std::size_t i = 0; i < centers_j.size(); ++i) {
    const json& c = centers_j[i];
    const std::string where = "instance: centers[" + std::to_string(i) + "]";
    if (!c.is_array() || c.size() != 2) throw ValidationError(where + " must be [x, y]");
    centers.push_back({number_at(c[0], where), number_at(c[1], where)});
    radii.push_back(number_at(radii_j[i], "instance: radii[" + std::to_string(i) + "]"));
  }

  Instance inst{name.get<std::string>(), DiskGraph(std::move(centers), std::move(radii)), std::nullopt, std::nullopt, ""};

  if (j.contains("target_edges")) {
    const json& te = j.at("target_edges");
    if (!te.is_array()) throw ValidationError("instance: 'target_edges' must be an array");
    std::vector<Edge> edges;
    for (const json& e : te) {
      if (!e.is_array() || e.size() != 2 || !is_index(e[0]) || !is_index(e[1])) {
        throw ValidationError("instance: each target edge must be [i, j] with non-negative integers");
      }
      edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    const AbstractGraph target(inst.graph.size(), edges);
    const EdgeDiff diff = diff_edges(target.edges(), inst.graph.edges());
    if (!diff.empty()) {
      throw ValidationError("instance '" + inst.name + "': target_edges disagree with geometry: " + diff.describe());
    }
    inst.target_edges = target.edges();
  }
  if (j.contains("seed")) {
    if (!is_index(j.at("seed"))) throw ValidationError("instance: 'seed' must be a non-negative integer");
    inst.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("description")) {
    if (!j.at("description").is_string()) throw ValidationError("instance: 'description' must be a string");
    inst.description = j.at("description").get<std::string>();
  }
  return inst;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": invalid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

Instance parse_instance(const std::filesystem::path& path) {
  try {
    return instance_from_json(read_json_file(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

json instance_to_json(const Instance& inst) {
  json j;
  j["name"] = inst.name;
  if (!inst.description.empty()) j["description"] = inst.description;
  j["centers"] = json::array();
  for (const Vec2& c : inst.graph.centers()) j["centers"].push_back({c.x, c.y});
  j["radii"] = inst.graph.radii();
  j["target_edges"] = json::array();
  for (const auto& [a, b] : inst.target_edges ? *inst.target_edges : inst.graph.edges()) j["target_edges"].push_back({a, b});
  if (inst.seed) j["seed"] = *inst.seed;
  return j;
}

void write_instance(const std::filesystem::path& path, const Instance& inst) { write_json_file(path, instance_to_json(inst)); }

AtomRegister register_from_json(const json& j) {
  const double c6 = number_at(field(j, "c6", "register"), "register: c6");
  const json& atoms = field(j, "atoms", "register");
  if (!atoms.is_array()) throw ValidationError("register: 'atoms' must be an array");
  std::vector<Vec2> pos;
  std::vector<double> omegas, deltas;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string where = "register: atoms[" + std::to_string(i) + "]";
    const json& a = atoms[i];
    pos.push_back({number_at(field(a, "x", where), where + ".x"), number_at(field(a, "y", where), where + ".y")});
    omegas.push_back(number_at(field(a, "omega", where), where + ".omega"));
    deltas.push_back(number_at(field(a, "delta", where), where + ".delta"));
  }
  return AtomRegister(std::move(pos), std::move(omegas), std::move(deltas), PhysicalConstants(c6));
}

json register_to_json(const AtomRegister& reg) {
  json j;
  j["c6"] = reg.constants().c6;
  j["atoms"] = json::array();
  for (std::size_t i = 0; i < reg.size(); ++i) {
    j["atoms"].push_back({{"x", reg.positions()[i].x}, {"y", reg.positions()[i].y}, {"omega", reg.omegas()[i]},
                          {"delta", reg.deltas()[i]}});
  }
  return j;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string config_hash(const json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw ValidationError("CsvTable: no columns");
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) throw ValidationError("CsvTable: row width does not match the column count");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::render(const json& config, const std::vector<std::string>& comments) const {
  std::ostringstream os;
  os << "# version: " << kVersion << "\n";
  os << "# config_hash: " << config_hash(config) << "\n";
  for (const std::string& c : comments) os << "# " << c << "\n";
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return os.str();
}

void CsvTable::write(const std::filesystem::path& path, const json& config, const std::vector<std::string>& comments) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << render(config, comments);
}

CsvData parse_csv(const std::string& text) {
  CsvData data;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      data.comments.push_back(line.size() > 2 ? line.substr(2) : "");
    } else if (data.columns.empty()) {
      data.columns = split(line);
    } else {
      auto cells = split(line);
      if (cells.size() != data.columns.size()) throw ValidationError("parse_csv: ragged row: " + line);
      data.rows.push_back(std::move(cells));
    }
  }
  if (data.columns.empty()) throw ValidationError("parse_csv: no column row");
  return data;
}

}  // namespace rydberg
