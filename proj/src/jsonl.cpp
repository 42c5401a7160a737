#include "minubench/jsonl.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace minubench {

using nlohmann::json;

std::string template_to_json_line(const MinutiaeTemplate& t) {
  json minutiae = json::array();
  for (const Minutia& m : t.minutiae) {
    minutiae.push_back({{"x", m.x},
                        {"y", m.y},
                        {"theta", m.theta},
                        {"kind", to_string(m.kind)},
                        {"quality", m.quality}});
  }
  const json obj = {{"finger_id", t.finger_id},
                    {"impression_id", t.impression_id},
                    {"width", t.width},
                    {"height", t.height},
                    {"resolution", t.resolution},
                    {"minutiae", std::move(minutiae)}};
  return obj.dump();
}

MinutiaeTemplate template_from_json_line(const std::string& line) {
  const json obj = json::parse(line);
  MinutiaeTemplate t;
  t.finger_id = obj.at("finger_id").get<std::string>();
  t.impression_id = obj.at("impression_id").get<std::string>();
  t.width = obj.at("width").get<int>();
  t.height = obj.at("height").get<int>();
  t.resolution = obj.at("resolution").get<int>();
  for (const json& jm : obj.at("minutiae")) {
    Minutia m;
    m.x = jm.at("x").get<int>();
    m.y = jm.at("y").get<int>();
    m.theta = canonicalize_angle(jm.at("theta").get<double>());
    m.kind = minutia_kind_from_string(jm.at("kind").get<std::string>());
    m.quality = jm.at("quality").get<int>();
    t.minutiae.push_back(m);
  }
  return t;
}

void write_jsonl(const std::filesystem::path& path,
                 const std::vector<MinutiaeTemplate>& templates) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("write_jsonl: cannot open " + path.string() +
                    " for writing");
  }
  for (const MinutiaeTemplate& t : templates) {
    out << template_to_json_line(t) << '\n';
  }
  if (!out) {
    throw DataError("write_jsonl: write failed for " + path.string());
  }
}

std::vector<MinutiaeTemplate> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("read_jsonl: cannot open " + path.string());
  }
  std::vector<MinutiaeTemplate> templates;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      templates.push_back(template_from_json_line(line));
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "read_jsonl: parse error at line " << line_number << " of "
         << path.string() << ": " << e.what();
      throw DataError(os.str());
    }
  }
  return templates;
}

}  // namespace minubench
