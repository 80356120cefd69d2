#include "eqlab/economy_io.hpp"

#include "eqlab/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace eqlab {

using json = nlohmann::json;

namespace {

Vector to_vector(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(),
                                  static_cast<Eigen::Index>(values.size()));
}

json to_json(const Vector& v) { return std::vector<double>(v.begin(), v.end()); }

}  // namespace

Economy economy_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    Economy e;
    e.goods = doc.at("L").get<int>();
    const auto mode = doc.value("mode", std::string("first"));
    if (mode == "first") {
      e.mode = Mode::kFirstType;
    } else if (mode == "second") {
      e.mode = Mode::kSecondType;
    } else {
      throw IoError("unknown mode \"" + mode + "\" (expected first|second)");
    }
    for (const auto& c : doc.at("consumers")) {
      ConsumerSpec spec;
      spec.utility.a = to_vector(c.at("a"));
      spec.utility.b = to_vector(c.at("b"));
      spec.endowment = to_vector(c.at("omega"));
      spec.shares = c.contains("theta") ? to_vector(c.at("theta")) : Vector(0);
      e.consumers.push_back(std::move(spec));
    }
    if (doc.contains("producers")) {
      for (const auto& p : doc.at("producers")) {
        ProducerSpec spec;
        spec.output = p.at("output").get<int>() - 1;
        for (int k : p.at("inputs").get<std::vector<int>>()) {
          spec.inputs.push_back(k - 1);
        }
        spec.scale = p.at("A").get<double>();
        spec.alpha = to_vector(p.at("alpha"));
        e.producers.push_back(std::move(spec));
      }
    }
    return e;
  } catch (const json::exception& ex) {
    throw IoError(std::string("malformed economy JSON: ") + ex.what());
  }
}

std::string economy_to_json(const Economy& e) {
  json doc;
  doc["L"] = e.goods;
  doc["mode"] = to_string(e.mode);
  doc["consumers"] = json::array();
  for (const auto& c : e.consumers) {
    doc["consumers"].push_back({{"a", to_json(c.utility.a)},
                                {"b", to_json(c.utility.b)},
                                {"omega", to_json(c.endowment)},
                                {"theta", to_json(c.shares)}});
  }
  doc["producers"] = json::array();
  for (const auto& p : e.producers) {
    std::vector<int> inputs;
    for (int k : p.inputs) inputs.push_back(k + 1);
    doc["producers"].push_back({{"output", p.output + 1},
                                {"inputs", inputs},
                                {"A", p.scale},
                                {"alpha", to_json(p.alpha)}});
  }
  return doc.dump(2) + "\n";
}

Economy load_economy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return economy_from_json(buffer.str());
}

void save_economy(const Economy& economy, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << economy_to_json(economy);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace eqlab
