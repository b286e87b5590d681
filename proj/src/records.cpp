#include "hypertree/records.hpp"

#include "hypertree/errors.hpp"
#include "json.hpp"

namespace hypertree {

const char* library_version() { return HYPERTREE_VERSION; }

std::string record_to_json(const SampleRecord& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["method"] = to_string(r.method);
  auto faces = nlohmann::ordered_json::array();
  for (const auto& t : r.complex.triangles()) faces.push_back({t.v[0] + 1, t.v[1] + 1, t.v[2] + 1});
  j["faces"] = std::move(faces);
  auto factors = nlohmann::ordered_json::array();
  for (const auto& f : r.h1_factors) factors.push_back(f.get_str());
  j["h1_factors"] = std::move(factors);
  j["h1_order"] = r.h1_order.get_str();
  j["ms"] = r.ms;
  return j.dump();
}

SampleRecord record_from_json(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    SampleRecord r;
    r.n = j.at("n").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.method = parse_method(j.at("method").get<std::string>());
    std::vector<Triangle> faces;
    for (const auto& f : j.at("faces")) {
      if (!f.is_array() || f.size() != 3) throw InputError("face is not a triple");
      faces.push_back(make_triangle(f[0].get<int>() - 1, f[1].get<int>() - 1, f[2].get<int>() - 1));
    }
    r.complex = Complex2(r.n, std::span<const Triangle>(faces));
    for (const auto& f : j.at("h1_factors")) r.h1_factors.emplace_back(f.get<std::string>());
    r.h1_order = BigInt(j.at("h1_order").get<std::string>());
    r.ms = j.value("ms", 0.0);
    return r;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(1, std::string("bad sample record: ") + e.what());
  }
}

std::vector<SampleRecord> read_records(std::istream& in) {
  std::vector<SampleRecord> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(line));
    } catch (const ParseError& e) {
      const std::string msg = e.what();
      throw ParseError(no, msg.substr(msg.find(": ") + 2));
    }
  }
  return out;
}

}  // namespace hypertree
