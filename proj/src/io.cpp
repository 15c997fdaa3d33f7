#include "kdq/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kdq {

using ordered_json = nlohmann::ordered_json;

namespace {

IndexList read_indices(const ordered_json& arr, unsigned d, const char* what) {
  if (!arr.is_array()) throw FormatError(std::string("'") + what + "' must be an array");
  IndexList out;
  for (const auto& v : arr) {
    if (!v.is_number_unsigned() || v.get<std::size_t>() >= d) {
      throw FormatError(std::string("'") + what + "' holds an index outside 0.." + std::to_string(d - 1));
    }
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

const ordered_json& field(const ordered_json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(std::string("missing key '") + key + "'");
  return *it;
}

unsigned read_dim(const ordered_json& obj) {
  const auto& d = field(obj, "d");
  if (!d.is_number_unsigned() || d.get<unsigned>() == 0) throw FormatError("'d' must be a positive integer");
  return d.get<unsigned>();
}

ordered_json parse(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string diagram_to_json(const UncertaintyDiagram& diagram) {
  ordered_json j;
  j["d"] = diagram.dim();
  j["engine"] = to_string(diagram.engine());
  ordered_json points = ordered_json::array();
  for (const auto& p : diagram.points()) {
    ordered_json e;
    e["na"] = p.n_a;
    e["nb"] = p.n_b;
    e["status"] = to_string(p.status);
    e["rows"] = p.status == PointStatus::Present ? p.rows : IndexList{};
    e["cols"] = p.status == PointStatus::Present ? p.cols : IndexList{};
    points.push_back(std::move(e));
  }
  j["points"] = std::move(points);
  return j.dump(2) + "\n";
}

UncertaintyDiagram diagram_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  if (!j.is_object()) throw FormatError("diagram must be a JSON object");
  const unsigned d = read_dim(j);
  const auto& engine_field = field(j, "engine");
  const auto engine = engine_field.is_string() ? parse_engine_mode(engine_field.get<std::string>()) : std::nullopt;
  if (!engine) throw FormatError("'engine' must be one of exact, numeric, both");

  UncertaintyDiagram diagram(d, *engine);
  const auto& points = field(j, "points");
  if (!points.is_array() || points.size() != static_cast<std::size_t>(d) * d) {
    throw FormatError("'points' must list all " + std::to_string(d * d) + " lattice points");
  }
  std::vector<bool> seen(static_cast<std::size_t>(d) * d, false);
  for (const auto& e : points) {
    const auto& na = field(e, "na");
    const auto& nb = field(e, "nb");
    if (!na.is_number_unsigned() || !nb.is_number_unsigned()) throw FormatError("'na'/'nb' must be integers");
    const unsigned a = na.get<unsigned>();
    const unsigned b = nb.get<unsigned>();
    if (a < 1 || a > d || b < 1 || b > d) throw FormatError("point outside the lattice");
    const std::size_t slot = static_cast<std::size_t>(a - 1) * d + (b - 1);
    if (seen[slot]) throw FormatError("point listed twice");
    seen[slot] = true;
    const auto& status_field = field(e, "status");
    const auto status = status_field.is_string() ? parse_point_status(status_field.get<std::string>()) : std::nullopt;
    if (!status) throw FormatError("'status' must be present, hole or unknown");

    DiagramPoint& p = diagram.at(a, b);
    p.status = *status;
    p.rows = read_indices(field(e, "rows"), d, "rows");
    p.cols = read_indices(field(e, "cols"), d, "cols");
    if (p.status == PointStatus::Present && (p.rows.size() != d - a || p.cols.size() != b)) {
      throw FormatError("certificate of (" + std::to_string(a) + ", " + std::to_string(b) + ") has the wrong size");
    }
  }
  return diagram;
}

std::string state_to_json(const StateVector& psi) {
  ordered_json j;
  j["d"] = psi.dim();
  ordered_json amps = ordered_json::array();
  for (const auto& z : psi.amps_a()) amps.push_back({z.real(), z.imag()});
  j["amps_a"] = std::move(amps);
  return j.dump(2) + "\n";
}

LoadedState state_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  if (!j.is_object()) throw FormatError("state must be a JSON object");
  const unsigned d = read_dim(j);
  const auto& amps = field(j, "amps_a");
  if (!amps.is_array() || amps.size() != d) throw FormatError("'amps_a' must hold d = " + std::to_string(d) + " entries");
  Eigen::VectorXcd v(d);
  for (unsigned i = 0; i < d; ++i) {
    const auto& z = amps[i];
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
      throw FormatError("amplitude " + std::to_string(i) + " must be [re, im]");
    }
    v(i) = {z[0].get<double>(), z[1].get<double>()};
  }
  try {
    StateVector psi(std::move(v));
    const bool off = std::abs(psi.input_norm() - 1.0) > 1e-6;
    return {std::move(psi), off};
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string diagram_cache_name(unsigned d, EngineMode engine, double rank_tol, bool sym_reduce) {
  char tol[32];
  std::snprintf(tol, sizeof tol, "%g", rank_tol);
  return "uncd-d" + std::to_string(d) + "-" + to_string(engine) + "-tol" + tol + (sym_reduce ? "-sym" : "-full") +
         "-v" + kVersion + ".json";
}

std::optional<UncertaintyDiagram> load_cached_diagram(const std::filesystem::path& dir, unsigned d, EngineMode engine,
                                                      double rank_tol, bool sym_reduce) {
  const auto path = dir / diagram_cache_name(d, engine, rank_tol, sym_reduce);
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
  try {
    UncertaintyDiagram diagram = diagram_from_json(read_text_file(path));
    if (diagram.dim() != d || diagram.engine() != engine) return std::nullopt;
    diagram.sym_reduce = sym_reduce;
    return diagram;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void store_cached_diagram(const std::filesystem::path& dir, const UncertaintyDiagram& diagram, double rank_tol) {
  std::filesystem::create_directories(dir);
  write_text_file(dir / diagram_cache_name(diagram.dim(), diagram.engine(), rank_tol, diagram.sym_reduce),
                  diagram_to_json(diagram));
}

}  // namespace kdq
