#include <bandcurve/io.hpp>

#include <bandcurve/errors.hpp>

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace bandcurve {

namespace {

using nlohmann::json;

json matrix_rows(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2)});
  return rows;
}

Mat3 parse_matrix(const json& j) {
  if (!j.is_array() || j.size() != 3) throw FormatError("frame must be three rows of three numbers");
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || row.size() != 3) throw FormatError("frame row must hold three numbers");
    for (int c = 0; c < 3; ++c) m(i, c) = row.at(c).get<double>();
  }
  return m;
}

std::vector<double> parse_numbers(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const json& x : j) {
    if (!x.is_number()) throw FormatError(std::string(what) + " must contain only numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

json parse_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("document must be a JSON object");
  if (!doc.contains("version") || doc.at("version") != kFormatVersion) {
    throw FormatError("unsupported or missing format version");
  }
  return doc;
}

// Translates json access errors and domain errors into FormatError.
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed document: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("invalid value: ") + e.what());
  }
}

}  // namespace

std::string controls_to_json(const ControlsFile& file) {
  const ControlPair& c = file.controls;
  json doc;
  doc["version"] = kFormatVersion;
  doc["band"] = {c.band().kappa1(), c.band().kappa2()};
  doc["grid_size"] = c.grid_size();
  if (const auto v = c.v_hat_constant()) {
    doc["v_hat"] = {{"constant", *v}};
  } else {
    doc["v_hat"] = std::vector<double>(c.v_hat_values().begin(), c.v_hat_values().end());
  }
  doc["w_hat"] = std::vector<double>(c.w_hat_values().begin(), c.w_hat_values().end());
  doc["initial_frame"] = matrix_rows(file.initial.matrix());
  return doc.dump(2) + "\n";
}

ControlsFile controls_from_json(const std::string& text) {
  const json doc = parse_document(text);
  return guarded([&] {
    const std::vector<double> band = parse_numbers(doc.at("band"), "band");
    if (band.size() != 2) throw FormatError("band must hold two numbers");
    const CurvatureBand b(band[0], band[1]);
    const auto n = doc.at("grid_size").get<std::size_t>();
    std::vector<double> w = parse_numbers(doc.at("w_hat"), "w_hat");
    if (w.size() != n) throw FormatError("w_hat length differs from grid_size");
    const json& v = doc.at("v_hat");
    std::optional<ControlPair> pair;
    if (v.is_object()) {
      pair = ControlPair::arc_length(b, v.at("constant").get<double>(), std::move(w));
    } else {
      std::vector<double> vs = parse_numbers(v, "v_hat");
      if (vs.size() != n) throw FormatError("v_hat length differs from grid_size");
      pair = ControlPair::general(b, std::move(vs), std::move(w));
    }
    Rotation initial;
    if (doc.contains("initial_frame")) initial = Rotation::from_matrix(parse_matrix(doc.at("initial_frame")), 1e-10);
    return ControlsFile{*pair, initial};
  });
}

std::string curve_to_json(const SphericalCurve& curve) {
  json doc;
  doc["version"] = kFormatVersion;
  doc["param"] = to_string(curve.param());
  doc["length"] = curve.length();
  json samples = json::array();
  for (const Vec3& p : curve.samples()) samples.push_back({p.x(), p.y(), p.z()});
  doc["samples"] = std::move(samples);
  return doc.dump() + "\n";
}

SphericalCurve curve_from_json(const std::string& text) {
  const json doc = parse_document(text);
  return guarded([&] {
    const json& samples = doc.at("samples");
    if (!samples.is_array()) throw FormatError("samples must be an array");
    std::vector<Vec3> points;
    points.reserve(samples.size());
    for (const json& s : samples) {
      const std::vector<double> xyz = parse_numbers(s, "sample");
      if (xyz.size() != 3) throw FormatError("each sample must hold three numbers");
      points.emplace_back(xyz[0], xyz[1], xyz[2]);
    }
    return SphericalCurve(std::move(points), parameterization_from_string(doc.at("param").get<std::string>()),
                          doc.at("length").get<double>());
  });
}

std::string frames_to_json(const FrenetPath& path) {
  json doc;
  doc["version"] = kFormatVersion;
  doc["times"] = path.times;
  json frames = json::array();
  for (const Rotation& r : path.frames) frames.push_back(matrix_rows(r.matrix()));
  doc["frames"] = std::move(frames);
  return doc.dump() + "\n";
}

namespace {

json reports_array(const std::vector<TrialReport>& reports) {
  json list = json::array();
  for (const TrialReport& r : reports) {
    json parameters = json::object();
    for (const auto& [k, v] : r.parameters) parameters[k] = v;
    json item = {
        {"name", r.name},
        {"trials", r.trials},
        {"failures", r.failures},
        {"passed", r.passed()},
        {"worst_margin", std::isfinite(r.worst_margin) ? json(r.worst_margin) : json(nullptr)},
        {"seed", r.seed},
        {"parameters", parameters},
        {"sub_seeds", r.sub_seeds},
        {"messages", r.messages},
    };
    if (!r.columns.empty()) {
      item["columns"] = r.columns;
      item["rows"] = r.rows;
    }
    list.push_back(std::move(item));
  }
  return list;
}

}  // namespace

std::string suite_to_json(const SuiteConfig& config, const std::vector<TrialReport>& reports) {
  json doc;
  doc["version"] = kFormatVersion;
  doc["tool_version"] = kToolVersion;
  doc["config"] = {
      {"seed", config.seed},
      {"band", {config.kappa1, config.kappa2}},
      {"checks", config.checks.empty() ? suite_check_names() : config.checks},
      {"sandwich_curves", config.sandwich_curves},
      {"sandwich_points", config.sandwich_points},
      {"sandwich_grid", config.sandwich_grid},
      {"space_seeds", config.space_seeds},
      {"space_grid", config.space_grid},
      {"roundtrip_seeds", config.roundtrip_seeds},
      {"roundtrip_grid", config.roundtrip_grid},
      {"sequence_seeds", config.sequence_seeds},
      {"sequence_count", config.sequence_count},
      {"sequence_grid", config.sequence_grid},
  };
  doc["reports"] = reports_array(reports);
  return doc.dump(2) + "\n";
}

std::string reports_to_json(const std::vector<std::pair<std::string, std::string>>& config,
                            const std::vector<TrialReport>& reports) {
  json doc;
  doc["version"] = kFormatVersion;
  doc["tool_version"] = kToolVersion;
  json c = json::object();
  for (const auto& [k, v] : config) c[k] = v;
  doc["config"] = std::move(c);
  doc["reports"] = reports_array(reports);
  return doc.dump(2) + "\n";
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out) throw FormatError("write failed for " + path.string());
}

}  // namespace bandcurve
