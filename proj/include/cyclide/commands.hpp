#ifndef CYCLIDE_COMMANDS_HPP
#define CYCLIDE_COMMANDS_HPP

// Command implementations behind the `cyclide` executable, and their CSV /
// JSON renderings. Every report starts with the full RunConfig.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclide/error.hpp"
#include "cyclide/geometry.hpp"
#include "cyclide/iso.hpp"
#include "cyclide/parallel.hpp"
#include "cyclide/quadrature.hpp"
#include "cyclide/verify.hpp"

namespace cyclide::cli {

using Json = nlohmann::ordered_json;

enum class Format { Csv, Json };

inline const char* to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

/// Default verification tolerance; larger values loosen every verify
/// threshold by the same factor.
inline constexpr double kDefaultTolerance = 1e-10;

/// The oracle is not run within this fraction of R - 1 from the round sphere.
inline constexpr double kOracleSkipBand = 1e-3;

struct RunConfig {
  double tolerance = kDefaultTolerance;
  int n_angular = 256;
  int n_radial = 64;
  Format format = Format::Csv;
  std::size_t points = 201;

  void validate() const {
    if (!(tolerance > 0.0)) throw Error(ErrorCode::DomainError, "tolerance must be positive");
    if (points < 2) throw Error(ErrorCode::DomainError, "points must be at least 2");
    quadrature::QuadratureSpec{n_angular, n_radial}.validate();
  }

  Json to_json() const {
    return Json{{"tolerance", tolerance}, {"n_angular", n_angular}, {"n_radial", n_radial},
                {"format", to_string(format)}, {"points", points}, {"workers", worker_count()}};
  }
};

struct RelErrors {
  double area;
  double volume;
  double iso;
};

struct OutputRecord {
  double R = 0.0;
  double rho = 0.0;
  geometry::ShapeClass shape = geometry::ShapeClass::round_sphere();
  std::optional<double> area_closed, area_oracle;
  std::optional<double> volume_closed, volume_oracle;
  double iso_closed = 1.0;
  std::optional<double> iso_oracle;
  std::optional<RelErrors> rel_errors;
  std::string note;
};

/// Closed forms (and the quadrature oracle) for i_rho(T_R), rho in
/// [0, sqrt(R^2 - 1)]. Past R - 1 the area and volume are those of the
/// canonical representative, which has the same shape.
inline OutputRecord cmd_compute(double R, double rho, const RunConfig& cfg) {
  cfg.validate();
  rho = geometry::detail::check_family_rho(R, rho);
  OutputRecord rec;
  rec.R = R;
  rec.rho = rho;
  rec.shape = geometry::canonicalize(R, rho);
  if (rec.shape.is_round_sphere()) {
    rec.note = "inversion centre on T_R: the image is a round sphere";
    return rec;
  }
  const double Rc = rec.shape.R(), zc = rec.shape.rho();
  if (rho > R - 1.0) rec.note = "area and volume of the canonical representative";
  rec.area_closed = iso::area_closed(Rc, zc);
  rec.volume_closed = iso::volume_closed(Rc, zc);
  rec.iso_closed = iso::iso_closed(Rc, zc);
  if (std::fabs(rho - (R - 1.0)) <= kOracleSkipBand * (R - 1.0)) {
    if (!rec.note.empty()) rec.note += "; ";
    rec.note += "oracle skipped near the round sphere";
    return rec;
  }
  const quadrature::InvertedTorusIntegrand f(Rc, zc);
  const quadrature::QuadratureSpec spec{cfg.n_angular, cfg.n_radial};
  rec.area_oracle = quadrature::area_oracle(f, spec);
  rec.volume_oracle = quadrature::volume_oracle(f, spec);
  rec.iso_oracle = 6.0 * std::sqrt(std::numbers::pi) * *rec.volume_oracle / std::pow(*rec.area_oracle, 1.5);
  rec.rel_errors = RelErrors{std::fabs(*rec.area_closed / *rec.area_oracle - 1.0),
                             std::fabs(*rec.volume_closed / *rec.volume_oracle - 1.0),
                             std::fabs(rec.iso_closed / *rec.iso_oracle - 1.0)};
  return rec;
}

struct SweepReport {
  double R;
  double dual_R;
  std::vector<verify::SweepRow> rows;
};

/// Iso over the whole family rho in [0, sqrt(R^2 - 1)], with R - 1 on the grid.
inline SweepReport cmd_sweep(double R, std::size_t n_points, const RunConfig& cfg) {
  cfg.validate();
  geometry::detail::check_R(R);
  return {R, R / std::sqrt((R - 1.0) * (R + 1.0)), verify::sweep(R, n_points)};
}

struct ClassifyResult {
  geometry::Vec3 point;
  double R;
  std::optional<double> family_rho;  // empty when the point is on T_R
  geometry::ShapeClass shape;
  double iso;
};

inline ClassifyResult cmd_classify(const geometry::Vec3& x, double R) {
  for (double c : x)
    if (!std::isfinite(c)) throw Error(ErrorCode::DomainError, "coordinates must be finite");
  const auto rho = geometry::classify_center(x, R);
  const auto shape = rho ? geometry::canonicalize(R, *rho) : geometry::ShapeClass::round_sphere();
  const double value = shape.is_round_sphere() ? 1.0 : iso::iso_closed(shape.R(), shape.rho());
  return {x, R, rho, shape, value};
}

struct NonuniqueReport {
  double R;
  double v;
  iso::OverlapInterval range;
  iso::IsoMatches matches;
};

inline NonuniqueReport cmd_nonunique(double R, double v, const RunConfig& cfg) {
  cfg.validate();
  return {R, v, iso::overlap_interval(R), iso::find_iso_matches(R, v)};
}

struct VerifyReport {
  std::vector<verify::SuiteResult> suites;
  bool pass = false;
  double seconds = 0.0;
};

inline verify::VerifyOptions verify_options(const RunConfig& cfg) {
  verify::VerifyOptions opt;
  opt.n_angular = cfg.n_angular;
  opt.n_radial = cfg.n_radial;
  opt.threshold_scale = std::max(1.0, cfg.tolerance / kDefaultTolerance);
  opt.sweep_points = cfg.points;
  return opt;
}

inline VerifyReport cmd_verify(const RunConfig& cfg) {
  cfg.validate();
  verify::detail::Timer timer;
  VerifyReport rep;
  rep.suites = verify::run_all(verify_options(cfg));
  rep.pass = std::all_of(rep.suites.begin(), rep.suites.end(), [](const auto& s) { return s.pass; });
  rep.seconds = timer.seconds();
  return rep;
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_header(const char* command, const RunConfig& cfg) {
  std::ostringstream os;
  os << "# cyclide " << command << "\n# config: tolerance=" << num(cfg.tolerance) << " n_angular=" << cfg.n_angular
     << " n_radial=" << cfg.n_radial << " format=" << to_string(cfg.format) << " points=" << cfg.points
     << " workers=" << worker_count() << "\n";
  return os.str();
}

inline void put(Json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = *v;
}

inline Json shape_json(const geometry::ShapeClass& s) {
  if (s.is_round_sphere()) return Json{{"round_sphere", true}};
  return Json{{"round_sphere", false}, {"R", s.R()}, {"rho", s.rho()}};
}

inline std::string shape_csv(const geometry::ShapeClass& s) {
  if (s.is_round_sphere()) return ",,1";
  return num(s.R()) + "," + num(s.rho()) + ",0";
}

inline Json envelope(const char* command, const RunConfig& cfg) {
  return Json{{"command", command}, {"config", cfg.to_json()}};
}

}  // namespace detail

inline std::string render(const OutputRecord& r, const RunConfig& cfg) {
  using detail::num;
  if (cfg.format == Format::Json) {
    Json j = detail::envelope("compute", cfg);
    Json rec{{"R", r.R}, {"rho", r.rho}, {"shape", detail::shape_json(r.shape)}};
    detail::put(rec, "area_closed", r.area_closed);
    detail::put(rec, "area_oracle", r.area_oracle);
    detail::put(rec, "volume_closed", r.volume_closed);
    detail::put(rec, "volume_oracle", r.volume_oracle);
    rec["iso_closed"] = r.iso_closed;
    detail::put(rec, "iso_oracle", r.iso_oracle);
    if (r.rel_errors)
      rec["rel_errors"] = Json{{"area", r.rel_errors->area}, {"volume", r.rel_errors->volume}, {"iso", r.rel_errors->iso}};
    if (!r.note.empty()) rec["note"] = r.note;
    j["record"] = rec;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << detail::csv_header("compute", cfg);
  os << "R,rho,shape_R,shape_rho,round_sphere,area_closed,area_oracle,volume_closed,volume_oracle,iso_closed,"
        "iso_oracle,rel_err_area,rel_err_volume,rel_err_iso,note\n";
  os << num(r.R) << ',' << num(r.rho) << ',' << detail::shape_csv(r.shape) << ',' << num(r.area_closed) << ','
     << num(r.area_oracle) << ',' << num(r.volume_closed) << ',' << num(r.volume_oracle) << ',' << num(r.iso_closed)
     << ',' << num(r.iso_oracle) << ',';
  if (r.rel_errors)
    os << num(r.rel_errors->area) << ',' << num(r.rel_errors->volume) << ',' << num(r.rel_errors->iso);
  else
    os << ",,";
  os << ',' << (r.note.empty() ? "" : detail::quoted(r.note)) << '\n';
  return os.str();
}

inline std::string render(const SweepReport& s, const RunConfig& cfg) {
  using detail::num;
  if (cfg.format == Format::Json) {
    Json j = detail::envelope("sweep", cfg);
    j["R"] = s.R;
    j["dual_R"] = s.dual_R;
    Json rows = Json::array();
    for (const auto& row : s.rows) rows.push_back(Json{{"rho", row.rho}, {"iso", row.iso}});
    j["rows"] = rows;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << detail::csv_header("sweep", cfg) << "# R=" << num(s.R) << " dual_R=" << num(s.dual_R) << "\nrho,iso\n";
  for (const auto& row : s.rows) os << num(row.rho) << ',' << num(row.iso) << '\n';
  return os.str();
}

inline std::string render(const ClassifyResult& c, const RunConfig& cfg) {
  using detail::num;
  if (cfg.format == Format::Json) {
    Json j = detail::envelope("classify", cfg);
    Json rec{{"point", {c.point[0], c.point[1], c.point[2]}}, {"R", c.R}, {"on_torus", !c.family_rho}};
    detail::put(rec, "family_rho", c.family_rho);
    rec["shape"] = detail::shape_json(c.shape);
    rec["iso"] = c.iso;
    j["record"] = rec;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << detail::csv_header("classify", cfg) << "x,y,z,R,on_torus,family_rho,shape_R,shape_rho,round_sphere,iso\n";
  os << num(c.point[0]) << ',' << num(c.point[1]) << ',' << num(c.point[2]) << ',' << num(c.R) << ','
     << (c.family_rho ? 0 : 1) << ',' << num(c.family_rho) << ',' << detail::shape_csv(c.shape) << ',' << num(c.iso)
     << '\n';
  return os.str();
}

inline std::string render(const NonuniqueReport& n, const RunConfig& cfg) {
  using detail::num;
  const iso::IsoMatch* rows[2] = {&n.matches.below, &n.matches.above};
  const char* names[2] = {"below", "above"};
  if (cfg.format == Format::Json) {
    Json j = detail::envelope("nonunique", cfg);
    j["R"] = n.R;
    j["v"] = n.v;
    j["overlap"] = Json{{"lower", n.range.lower}, {"upper", n.range.upper}};
    Json out = Json::array();
    for (int i = 0; i < 2; ++i) {
      const auto& m = *rows[i];
      out.push_back(Json{{"branch", names[i]}, {"rho", m.rho}, {"iso", m.iso}, {"shape", detail::shape_json(m.shape)},
                         {"maxwell", {m.maxwell.a, m.maxwell.f, m.maxwell.l_minus_a}}});
    }
    j["witnesses"] = out;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << detail::csv_header("nonunique", cfg) << "# R=" << num(n.R) << " v=" << num(n.v)
     << " overlap=[" << num(n.range.lower) << ", " << num(n.range.upper) << ")\n";
  os << "branch,rho,iso,shape_R,shape_rho,round_sphere,maxwell_a,maxwell_f,maxwell_l_minus_a\n";
  for (int i = 0; i < 2; ++i) {
    const auto& m = *rows[i];
    os << names[i] << ',' << num(m.rho) << ',' << num(m.iso) << ',' << detail::shape_csv(m.shape) << ','
       << num(m.maxwell.a) << ',' << num(m.maxwell.f) << ',' << num(m.maxwell.l_minus_a) << '\n';
  }
  return os.str();
}

inline std::string render(const VerifyReport& v, const RunConfig& cfg) {
  using detail::num;
  if (cfg.format == Format::Json) {
    Json j = detail::envelope("verify", cfg);
    Json suites = Json::array();
    for (const auto& s : v.suites)
      suites.push_back(Json{{"id", s.id}, {"name", s.name}, {"pass", s.pass}, {"worst", s.worst},
                            {"threshold", s.threshold}, {"seconds", s.seconds}, {"detail", s.detail}});
    j["suites"] = suites;
    j["pass"] = v.pass;
    j["seconds"] = v.seconds;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << detail::csv_header("verify", cfg) << "id,suite,result,worst,threshold,seconds,detail\n";
  for (const auto& s : v.suites)
    os << s.id << ',' << detail::quoted(s.name) << ',' << (s.pass ? "PASS" : "FAIL") << ',' << num(s.worst) << ','
       << num(s.threshold) << ',' << num(s.seconds) << ',' << detail::quoted(s.detail) << '\n';
  os << "# overall: " << (v.pass ? "PASS" : "FAIL") << " in " << num(v.seconds) << " s\n";
  return os.str();
}

}  // namespace cyclide::cli

#endif  // CYCLIDE_COMMANDS_HPP
