#include "hypertree/complex_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "hypertree/errors.hpp"
#include "json.hpp"

namespace hypertree {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view tok, std::size_t line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  return v;
}

Triangle checked_triangle(int a, int b, int c, int n, std::size_t line) {
  for (int x : {a, b, c})
    if (x < 1 || x > n) throw ParseError(line, "vertex " + std::to_string(x) + " outside 1.." + std::to_string(n));
  if (a == b || b == c || a == c) throw ParseError(line, "degenerate triangle with a repeated vertex");
  return make_triangle(a - 1, b - 1, c - 1);
}

Complex2 assemble(int n, const std::vector<std::pair<Triangle, std::size_t>>& tris) {
  std::set<Triangle> seen;
  std::vector<Triangle> faces;
  for (const auto& [t, line] : tris) {
    if (!seen.insert(t).second) throw ParseError(line, "duplicate triangle");
    faces.push_back(t);
  }
  return Complex2(n, std::span<const Triangle>(faces));
}

Complex2 parse_text(std::string_view content) {
  int n = -1;
  std::vector<std::pair<Triangle, std::size_t>> tris;
  std::size_t line_no = 0;
  while (!content.empty()) {
    ++line_no;
    const auto nl = content.find('\n');
    std::string_view line = content.substr(0, nl);
    content = nl == std::string_view::npos ? std::string_view{} : content.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (n < 0) {
      if (line.substr(0, 2) != "n=") throw ParseError(line_no, "expected header 'n=<int>'");
      n = parse_int(trim(line.substr(2)), line_no);
      if (n < 1 || n > kMaxVertices) throw ParseError(line_no, "vertex count out of range");
      continue;
    }
    std::vector<std::string_view> toks;
    while (!line.empty()) {
      const auto sp = line.find_first_of(" \t");
      toks.push_back(line.substr(0, sp));
      line = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));
    }
    if (toks.size() != 3) throw ParseError(line_no, "expected three vertex labels");
    tris.emplace_back(checked_triangle(parse_int(toks[0], line_no), parse_int(toks[1], line_no),
                                       parse_int(toks[2], line_no), n, line_no),
                      line_no);
  }
  if (n < 0) throw ParseError(line_no == 0 ? 1 : line_no, "missing header 'n=<int>'");
  return assemble(n, tris);
}

Complex2 parse_json(std::string_view content) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    // byte offset -> line number
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, content.size()); ++i) line += content[i] == '\n';
    throw ParseError(line, e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("faces") || !j["n"].is_number_integer() ||
      !j["faces"].is_array())
    throw ParseError(1, "expected {\"n\": int, \"faces\": [[i,j,k], ...]}");
  const int n = j["n"].get<int>();
  if (n < 1 || n > kMaxVertices) throw ParseError(1, "vertex count out of range");
  std::vector<std::pair<Triangle, std::size_t>> tris;
  std::size_t idx = 0;
  for (const auto& f : j["faces"]) {
    ++idx;
    if (!f.is_array() || f.size() != 3 || !f[0].is_number_integer() || !f[1].is_number_integer() ||
        !f[2].is_number_integer())
      throw ParseError(1, "face " + std::to_string(idx) + " is not a triple of integers");
    tris.emplace_back(checked_triangle(f[0].get<int>(), f[1].get<int>(), f[2].get<int>(), n, 1), 1);
  }
  return assemble(n, tris);
}

}  // namespace

Complex2 parse_complex(std::string_view content) {
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && content[first] == '{') return parse_json(content);
  return parse_text(content);
}

Complex2 read_complex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_complex(ss.str());
}

std::string format_complex(const Complex2& c, ComplexFormat format) {
  if (format == ComplexFormat::Json) {
    nlohmann::json j;
    j["n"] = c.n();
    j["faces"] = nlohmann::json::array();
    for (const auto& t : c.triangles()) j["faces"].push_back({t.v[0] + 1, t.v[1] + 1, t.v[2] + 1});
    return j.dump() + "\n";
  }
  std::string out = "n=" + std::to_string(c.n()) + "\n";
  for (const auto& t : c.triangles())
    out += std::to_string(t.v[0] + 1) + " " + std::to_string(t.v[1] + 1) + " " + std::to_string(t.v[2] + 1) + "\n";
  return out;
}

void write_complex(const Complex2& c, const std::filesystem::path& path, ComplexFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_complex(c, format);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace hypertree
