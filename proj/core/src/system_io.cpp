#include "schles/system_io.hpp"

#include <fstream>
#include <sstream>

namespace schles {

namespace {

double clean(double x) { return x == 0.0 ? 0.0 : x; }

// Locates source lines for error messages. nlohmann::json does not keep
// positions, so the raw text is scanned again once something is wrong.
class LineIndex {
 public:
  explicit LineIndex(const std::string& text) : text_(text) {}

  std::size_t line_of(std::size_t offset) const {
    std::size_t line = 1;
    for (std::size_t k = 0; k < offset && k < text_.size(); ++k)
      if (text_[k] == '\n') ++line;
    return line;
  }

  // Line of the top-level key, or of element `index` of its array value.
  std::size_t locate(const std::string& key, std::ptrdiff_t index = -1) const {
    const std::size_t at = find_key(key);
    if (at == std::string::npos) return 1;
    if (index < 0) return line_of(at);
    std::size_t k = text_.find('[', at);
    if (k == std::string::npos) return line_of(at);
    int depth = 0;
    std::ptrdiff_t element = 0;
    bool in_string = false, expecting = true;
    for (; k < text_.size(); ++k) {
      const char c = text_[k];
      if (in_string) {
        if (c == '\\') ++k;
        else if (c == '"') in_string = false;
        continue;
      }
      if (depth == 1 && expecting && !std::isspace(static_cast<unsigned char>(c)) && c != ']') {
        if (element == index) return line_of(k);
        expecting = false;
      }
      if (c == '"') in_string = true;
      else if (c == '[' || c == '{') ++depth;
      else if (c == ']' || c == '}') {
        if (--depth == 0) break;
      } else if (c == ',' && depth == 1) {
        ++element;
        expecting = true;
      }
    }
    return line_of(at);
  }

 private:
  std::size_t find_key(const std::string& key) const {
    const std::string quoted = "\"" + key + "\"";
    int depth = 0;
    bool in_string = false;
    for (std::size_t k = 0; k < text_.size(); ++k) {
      const char c = text_[k];
      if (in_string) {
        if (c == '\\') ++k;
        else if (c == '"') in_string = false;
        continue;
      }
      if (c == '"') {
        if (depth == 1 && text_.compare(k, quoted.size(), quoted) == 0) return k;
        in_string = true;
      } else if (c == '{' || c == '[') {
        ++depth;
      } else if (c == '}' || c == ']') {
        --depth;
      }
    }
    return std::string::npos;
  }

  const std::string& text_;
};

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

cplx read_complex(const Json& j, std::size_t line, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(line, what + " must be a pair [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json complex_to_json(cplx z) { return Json::array({clean(z.real()), clean(z.imag())}); }

Json point_to_json(const SpherePoint& p) {
  return p.is_infinite() ? Json("inf") : complex_to_json(p.value());
}

Json matrix_to_json(const Mat2& m) {
  return Json::array({Json::array({complex_to_json(m(0, 0)), complex_to_json(m(0, 1))}),
                      Json::array({complex_to_json(m(1, 0)), complex_to_json(m(1, 1))})});
}

Json system_to_json(const FuchsianSystem& S) {
  Json j;
  j["gauge"] = to_string(S.gauge());
  j["poles"] = Json::array();
  j["residues"] = Json::array();
  j["marking"] = Json::array();
  for (std::size_t i = 0; i < S.size(); ++i) {
    j["poles"].push_back(point_to_json(S.pole(i)));
    j["residues"].push_back(matrix_to_json(S.residue(i)));
    j["marking"].push_back(complex_to_json(S.marked(i)));
  }
  return j;
}

std::string format_system(const FuchsianSystem& S) {
  // One pole / residue per line keeps golden files readable.
  const Json j = system_to_json(S);
  std::string out = "{\n  \"gauge\": " + j["gauge"].dump() + ",\n  \"poles\": " + j["poles"].dump() +
                    ",\n  \"residues\": [";
  for (std::size_t i = 0; i < S.size(); ++i) out += (i ? ",\n    " : "\n    ") + j["residues"][i].dump();
  out += "\n  ],\n  \"marking\": " + j["marking"].dump() + "\n}\n";
  return out;
}

FuchsianSystem parse_system(const std::string& text) {
  const LineIndex index(text);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(index.line_of(e.byte == 0 ? 0 : e.byte - 1), "syntax error: " + std::string(e.what()));
  }
  if (!j.is_object()) fail(1, "top level must be an object");
  for (const auto& [key, value] : j.items())
    if (key != "gauge" && key != "poles" && key != "residues" && key != "marking")
      fail(index.locate(key), "unknown field \"" + key + "\"");

  if (!j.contains("gauge") || !j["gauge"].is_string()) fail(index.locate("gauge"), "missing \"gauge\"");
  const std::string g = j["gauge"].get<std::string>();
  GaugeTag gauge;
  if (g == "sl2") gauge = GaugeTag::sl2;
  else if (g == "gl2") gauge = GaugeTag::gl2;
  else fail(index.locate("gauge"), "gauge must be \"sl2\" or \"gl2\"");

  if (!j.contains("poles") || !j["poles"].is_array()) fail(index.locate("poles"), "missing \"poles\" array");
  if (!j.contains("residues") || !j["residues"].is_array())
    fail(index.locate("residues"), "missing \"residues\" array");

  std::vector<SpherePoint> poles;
  for (std::size_t i = 0; i < j["poles"].size(); ++i) {
    const Json& p = j["poles"][i];
    const std::size_t line = index.locate("poles", static_cast<std::ptrdiff_t>(i));
    SpherePoint pt = p.is_string() && p.get<std::string>() == "inf"
                         ? SpherePoint::infinity()
                         : SpherePoint(read_complex(p, line, "pole"));
    for (std::size_t k = 0; k < poles.size(); ++k)
      if (poles[k].same_as(pt))
        fail(line, "pole " + std::to_string(i) + " duplicates pole " + std::to_string(k));
    poles.push_back(pt);
  }

  const Json& rj = j["residues"];
  if (rj.size() != poles.size())
    fail(index.locate("residues"), "expected " + std::to_string(poles.size()) + " residues, found " +
                                       std::to_string(rj.size()));
  std::vector<Mat2> residues;
  double scale = 1.0;
  for (std::size_t i = 0; i < rj.size(); ++i) {
    const std::size_t line = index.locate("residues", static_cast<std::ptrdiff_t>(i));
    const Json& m = rj[i];
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 ||
        m[1].size() != 2)
      fail(line, "residue " + std::to_string(i) + " must be a 2x2 array of [re, im] pairs");
    Mat2 B;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) B(r, c) = read_complex(m[r][c], line, "residue entry");
    scale = std::max(scale, B.cwiseAbs().maxCoeff());
    residues.push_back(B);
  }
  if (gauge == GaugeTag::sl2)
    for (std::size_t i = 0; i < residues.size(); ++i)
      if (std::abs(residues[i].trace()) > kTolAlg * scale)
        fail(index.locate("residues", static_cast<std::ptrdiff_t>(i)),
             "residue " + std::to_string(i) + " has trace " + std::to_string(std::abs(residues[i].trace())) +
                 " but gauge is sl2");

  try {
    if (!j.contains("marking")) return FuchsianSystem::with_default_marking(poles, residues, gauge);
    const Json& mj = j["marking"];
    if (!mj.is_array() || mj.size() != poles.size())
      fail(index.locate("marking"), "marking must list one value per pole");
    std::vector<cplx> marking;
    for (std::size_t i = 0; i < mj.size(); ++i)
      marking.push_back(read_complex(mj[i], index.locate("marking", static_cast<std::ptrdiff_t>(i)), "marking"));
    return FuchsianSystem(poles, residues, gauge, marking);
  } catch (const InvalidSystem& e) {
    const std::string what = e.what();
    std::size_t line = index.locate("residues");
    if (what.rfind("marking ", 0) == 0) {
      const auto i = static_cast<std::ptrdiff_t>(std::stoul(what.substr(8)));
      line = index.locate("marking", i);
    }
    fail(line, what);
  }
}

FuchsianSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

}  // namespace schles
