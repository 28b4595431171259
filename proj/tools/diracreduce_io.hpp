#pragma once

// Input files, commands and reports for the diracreduce tool.
//
// File grammar (see README): a header line "diracreduce-v1", then [section] blocks of
// "key = value" lines. '#' starts a comment. Matrices are rows separated by ';' with
// entries separated by ','. Polynomials use the canonical chart syntax.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "diracred/chart.hpp"
#include "diracred/kahler.hpp"
#include "diracred/reduction.hpp"
#include "diracred/scenario.hpp"

namespace diracreduce {

using namespace diracred;
using json = nlohmann::ordered_json;

inline constexpr std::string_view kSchema = "diracreduce-v1";

enum ExitCode : int { kOk = 0, kInvalid = 1, kObstructed = 2 };

/// Parse failure carrying the file line and field.
class ParseError : public InvalidInput {
 public:
  explicit ParseError(const std::string& what) : InvalidInput(what) {}
};

/// 64-bit FNV-1a of the raw input bytes.
inline std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

// ---------------------------------------------------------------------------
// Raw file structure

struct Field {
  std::string key;
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Field> fields;

  const Field* find(std::string_view key) const {
    for (const auto& f : fields)
      if (f.key == key) return &f;
    return nullptr;
  }
  const Field& get(std::string_view key) const {
    if (const Field* f = find(key)) return *f;
    throw ParseError("line " + std::to_string(line) + ": section [" + name + "] is missing field '" +
                     std::string(key) + "'");
  }
};

struct InputFile {
  std::vector<Section> sections;

  const Section* find(std::string_view name) const {
    for (const auto& s : sections)
      if (s.name == name) return &s;
    return nullptr;
  }
  const Section& get(std::string_view name) const {
    if (const Section* s = find(name)) return *s;
    throw ParseError("missing section [" + std::string(name) + "]");
  }
};

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline InputFile parse_file(std::string_view text) {
  InputFile file;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    s = trim(s);
    if (s.empty()) continue;
    if (!header) {
      if (s != kSchema)
        throw ParseError("line " + std::to_string(line) + ": schema-version mismatch: expected '" +
                         std::string(kSchema) + "', found '" + s + "'");
      header = true;
      continue;
    }
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3) throw ParseError("line " + std::to_string(line) + ": malformed section header");
      std::string name = trim(std::string_view(s).substr(1, s.size() - 2));
      if (file.find(name)) throw ParseError("line " + std::to_string(line) + ": duplicate section [" + name + "]");
      file.sections.push_back({name, line, {}});
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(line) + ": expected 'key = value'");
    if (file.sections.empty()) throw ParseError("line " + std::to_string(line) + ": field outside of any section");
    Field f{trim(std::string_view(s).substr(0, eq)), trim(std::string_view(s).substr(eq + 1)), line};
    if (f.key.empty()) throw ParseError("line " + std::to_string(line) + ": empty key");
    Section& sec = file.sections.back();
    if (sec.find(f.key)) throw ParseError("line " + std::to_string(line) + ": duplicate field '" + f.key + "'");
    sec.fields.push_back(std::move(f));
  }
  if (!header) throw ParseError("schema-version mismatch: missing header line '" + std::string(kSchema) + "'");
  return file;
}

/// Runs `fn` and prefixes any InvalidInput with the field's location.
template <class Fn>
auto at_field(const Section& sec, const Field& f, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ParseError("line " + std::to_string(f.line) + ", field [" + sec.name + "] " + f.key + ": " + e.what());
  } catch (const ResourceError& e) {
    throw ResourceError("line " + std::to_string(f.line) + ", field [" + sec.name + "] " + f.key + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Value syntax

inline std::size_t parse_dim(const std::string& v) {
  std::size_t pos = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw InvalidInput("expected a dimension, found '" + v + "'");
  }
  if (pos != v.size() || x < 0 || x > 64) throw InvalidInput("expected a dimension in 0..64, found '" + v + "'");
  return static_cast<std::size_t>(x);
}

inline Vec<Rational> parse_qvector(const std::string& v, std::size_t n) {
  Vec<Rational> out;
  if (!trim(v).empty())
    for (const auto& e : split(v, ',')) out.push_back(parse_rational(e));
  if (out.size() != n)
    throw InvalidInput("expected " + std::to_string(n) + " entries, found " + std::to_string(out.size()));
  return out;
}

inline QMatrix parse_qmatrix(const std::string& v, std::size_t rows, std::size_t cols) {
  std::vector<std::string> rs = trim(v).empty() ? std::vector<std::string>{} : split(v, ';');
  if (rs.size() != rows)
    throw InvalidInput("expected " + std::to_string(rows) + " rows, found " + std::to_string(rs.size()));
  QMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    Vec<Rational> row = parse_qvector(rs[r], cols);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

inline chart::Polynomial parse_bounded(const std::string& v, std::size_t nvars, unsigned max_degree) {
  chart::Polynomial p = chart::parse_polynomial(v, nvars);
  chart::check_degree(p, max_degree, "polynomial '" + v + "'");
  return p;
}

inline chart::PolyMatrix parse_pmatrix(const std::string& v, std::size_t rows, std::size_t cols, std::size_t nvars,
                                       unsigned max_degree = chart::kDefaultMaxDegree) {
  std::vector<std::string> rs = split(v, ';');
  if (rs.size() != rows)
    throw InvalidInput("expected " + std::to_string(rows) + " rows, found " + std::to_string(rs.size()));
  chart::PolyMatrix m;
  for (const auto& r : rs) {
    std::vector<std::string> es = split(r, ',');
    if (es.size() != cols)
      throw InvalidInput("expected " + std::to_string(cols) + " entries per row, found " + std::to_string(es.size()));
    std::vector<chart::Polynomial> row;
    for (const auto& e : es) row.push_back(parse_bounded(e, nvars, max_degree));
    m.push_back(std::move(row));
  }
  return m;
}

inline std::vector<chart::Polynomial> parse_pvector(const std::string& v, std::size_t n,
                                                    unsigned max_degree = chart::kDefaultMaxDegree) {
  std::vector<std::string> es = split(v, ',');
  if (es.size() != n)
    throw InvalidInput("expected " + std::to_string(n) + " components, found " + std::to_string(es.size()));
  std::vector<chart::Polynomial> out;
  for (const auto& e : es) out.push_back(parse_bounded(e, n, max_degree));
  return out;
}

/// "e1 e3 e4" (coordinate span), "all", "none", or rows "1,0,0; 0,1,0".
inline QSubspace parse_subspace(const std::string& v, std::size_t n) {
  const std::string t = trim(v);
  if (t == "none" || t.empty()) return QSubspace::zero(n);
  if (t == "all") return QSubspace::whole(n);
  if (t.front() == 'e') {
    std::vector<std::size_t> idx;
    std::istringstream in(t);
    std::string tok;
    while (in >> tok) {
      if (tok.size() < 2 || tok[0] != 'e') throw InvalidInput("malformed coordinate vector '" + tok + "'");
      std::size_t k = parse_dim(tok.substr(1));
      if (k < 1 || k > n) throw InvalidInput("coordinate vector '" + tok + "' out of range");
      idx.push_back(k - 1);
    }
    return QSubspace::coordinate(n, idx);
  }
  std::vector<Vec<Rational>> rows;
  for (const auto& r : split(t, ';')) rows.push_back(parse_qvector(r, n));
  return QSubspace::span(rows, n);
}

inline std::string format_matrix(const QMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).get_str();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Domain objects from sections

inline QMatrix read_qmatrix(const Section& sec, std::string_view key, std::size_t rows, std::size_t cols) {
  const Field& f = sec.get(key);
  return at_field(sec, f, [&] { return parse_qmatrix(f.value, rows, cols); });
}

inline std::size_t read_dim(const Section& sec) {
  const Field& f = sec.get("n");
  std::size_t n = at_field(sec, f, [&] { return parse_dim(f.value); });
  if (n == 0) throw ParseError("line " + std::to_string(f.line) + ", field [" + sec.name + "] n: must be positive");
  return n;
}

/// [J]-style section: kind = symplectic | complex | matrix | field | field-symplectic, optional b.
inline JSpec read_j(const Section& sec, std::size_t n) {
  const Field& kf = sec.get("kind");
  const std::string kind = kf.value;
  auto with_b = [&](GCStructure j) -> JSpec {
    if (const Field* bf = sec.find("b")) {
      QMatrix b = at_field(sec, *bf, [&] { return parse_qmatrix(bf->value, n, n); });
      return at_field(sec, *bf, [&] { return b_transform(j, b); });
    }
    return j;
  };
  if (kind == "symplectic") {
    const Field& f = sec.get("omega");
    return with_b(at_field(sec, f, [&] { return from_symplectic(parse_qmatrix(f.value, n, n)); }));
  }
  if (kind == "complex") {
    const Field& f = sec.get("j");
    return with_b(at_field(sec, f, [&] { return from_complex(parse_qmatrix(f.value, n, n)); }));
  }
  if (kind == "matrix") {
    const Field& f = sec.get("matrix");
    return with_b(at_field(sec, f, [&] { return GCStructure(parse_qmatrix(f.value, 2 * n, 2 * n)); }));
  }
  if (sec.find("b")) throw ParseError("line " + std::to_string(sec.get("b").line) + ": b is only supported for constant kinds");
  if (kind == "field") {
    const Field& f = sec.get("matrix");
    return at_field(sec, f, [&] { return chart::JField(n, parse_pmatrix(f.value, 2 * n, 2 * n, n)); });
  }
  if (kind == "field-symplectic") {
    const Field& f = sec.get("omega");
    return at_field(sec, f, [&] { return chart::JField::symplectic(chart::Form::two_form(parse_pmatrix(f.value, n, n, n))); });
  }
  throw ParseError("line " + std::to_string(kf.line) + ", field [" + sec.name + "] kind: unknown kind '" + kind + "'");
}

inline GCStructure read_constant_j(const Section& sec, std::size_t n) {
  JSpec j = read_j(sec, n);
  if (const auto* c = std::get_if<GCStructure>(&j)) return *c;
  throw ParseError("line " + std::to_string(sec.line) + ": section [" + sec.name + "] must be a constant structure here");
}

struct DatumInput {
  std::size_t n;
  QSubspace w0, f;
};

inline DatumInput read_datum(const InputFile& file) {
  const Section& sec = file.get("datum");
  const std::size_t n = read_dim(sec);
  const Field& w = sec.get("w0");
  const Field& f = sec.get("f");
  QSubspace w0 = at_field(sec, w, [&] { return parse_subspace(w.value, n); });
  QSubspace fs = at_field(sec, f, [&] { return parse_subspace(f.value, n); });
  if (!w0.contains(fs)) throw ParseError("line " + std::to_string(f.line) + ", field [datum] f: F is not contained in W0");
  return {n, std::move(w0), std::move(fs)};
}

inline std::vector<const Field*> numbered(const Section& sec, std::string_view prefix) {
  std::vector<const Field*> out;
  for (const auto& f : sec.fields) {
    if (f.key.rfind(prefix, 0) != 0)
      throw ParseError("line " + std::to_string(f.line) + ": unexpected field '" + f.key + "' in [" + sec.name + "]");
    out.push_back(&f);
  }
  return out;
}

inline Scenario read_scenario(const InputFile& file) {
  Scenario s;
  const Section& chart_sec = file.get("chart");
  s.n = read_dim(chart_sec);
  s.j = read_j(file.get("J"), s.n);
  if (const Section* p = file.find("partner")) s.partner = read_j(*p, s.n);
  if (const Section* a = file.find("action"))
    for (const Field* f : numbered(*a, "g")) s.generators.push_back(at_field(*a, *f, [&] { return parse_pvector(f->value, s.n); }));
  if (const Section* m = file.find("m0"))
    for (const Field* f : numbered(*m, "eq"))
      s.m0_equations.push_back(at_field(*m, *f, [&] { return parse_bounded(f->value, s.n, chart::kDefaultMaxDegree); }));
  if (const Section* m = file.find("momentum"))
    for (const Field* f : numbered(*m, "mu"))
      s.momentum.push_back(at_field(*m, *f, [&] { return parse_bounded(f->value, s.n, chart::kDefaultMaxDegree); }));
  const Section& pts = file.get("points");
  for (const Field* f : numbered(pts, "p")) s.sample_points.push_back(at_field(pts, *f, [&] { return parse_qvector(f->value, s.n); }));
  if (const Section* g = file.find("metric")) s.metric = read_qmatrix(*g, "g", s.n, s.n);
  if (const Section* id = file.find("identify")) {
    OrbitIdentification oid;
    for (const auto& f : id->fields) {
      if (f.key.rfind("orbit", 0) == 0) {
        std::vector<std::size_t> idx;
        std::istringstream in(f.value);
        std::string tok;
        while (in >> tok) {
          std::size_t k = at_field(*id, f, [&] { return parse_dim(tok); });
          if (k < 1 || k > s.sample_points.size())
            throw ParseError("line " + std::to_string(f.line) + ": point index " + tok + " out of range");
          idx.push_back(k - 1);
        }
        oid.orbits.push_back(std::move(idx));
      } else if (f.key.rfind("map", 0) == 0) {
        std::size_t k = at_field(*id, f, [&] { return parse_dim(f.key.substr(3)); });
        if (k < 1 || k > s.sample_points.size())
          throw ParseError("line " + std::to_string(f.line) + ": map index out of range");
        // Size is only known after reduction; accept any square matrix.
        const std::size_t rows = split(f.value, ';').size();
        oid.maps[k - 1] = at_field(*id, f, [&] { return parse_qmatrix(f.value, rows, rows); });
      } else {
        throw ParseError("line " + std::to_string(f.line) + ": unexpected field '" + f.key + "' in [identify]");
      }
    }
    s.identification = std::move(oid);
  }
  s.validate();
  return s;
}

// ---------------------------------------------------------------------------
// JSON building blocks

inline json qvec(const Vec<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

inline json cvec(const Vec<Complex>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline json qmat(const QMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(qvec(m.row(i)));
  return a;
}

inline json subspace_json(const QSubspace& s) { return qmat(s.basis()); }

inline json polys(const std::vector<chart::Polynomial>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(chart::to_string(p));
  return a;
}

inline json section_json(const chart::PolySection& s) { return json{{"X", polys(s.x)}, {"xi", polys(s.xi)}, {"zero", s.is_zero()}}; }

inline json conditions_json(const ConditionReport& rep) {
  json a = json::array();
  for (std::size_t k = 0; k < 7; ++k) {
    json c{{"condition", k + 1}, {"holds", rep.holds[k]}};
    if (rep.witnesses[k])
      c["witness"] = json{{"space", rep.witnesses[k]->space}, {"vector", cvec(rep.witnesses[k]->vector)}};
    else
      c["witness"] = nullptr;
    a.push_back(std::move(c));
  }
  return a;
}

inline json reduced_json(const ReducedGCS& r) {
  json out{{"dim", r.reduced_dim}, {"classification", to_string(classify(r))}, {"J_G", qmat(r.j_g.matrix())}};
  if (r.reduced_dim > 0) {
    BlockDecomposition b = block_decompose(r.j_g);
    out["blocks"] = json{{"N", qmat(b.n)}, {"pi_sharp", qmat(b.pi_sharp)}, {"sigma", qmat(b.sigma())}};
  }
  out["projection"] = qmat(r.pi.matrix);
  return out;
}

struct Report {
  json doc;
  int exit_code = kOk;
};

inline Report make_report(std::string_view command, std::string_view path, std::string_view bytes) {
  Report r;
  r.doc = json{{"schema", kSchema}, {"command", command}, {"input", json{{"file", path}, {"digest", digest(bytes)}}}};
  return r;
}

inline void finish(Report& r, int code, json results) {
  r.exit_code = code;
  r.doc["status"] = code == kOk ? "ok" : code == kObstructed ? "obstructed" : "invalid-input";
  r.doc["results"] = std::move(results);
}

// ---------------------------------------------------------------------------
// Commands

inline json check_results(const ReductionDatum& d, const InputFile& file, bool* all) {
  ConditionReport rep = check_conditions(d);
  *all = rep.all();
  json out{{"n", d.n()}, {"reduced_dim", d.reduced_dim()}, {"W0", subspace_json(d.w0)}, {"F", subspace_json(d.f)}};
  out["conditions"] = conditions_json(rep);
  out["all_hold"] = rep.all();
  out["lifts_surjective"] = lifts_surjective(d);
  json suff{{"marsden_weinstein", check_mw(d)}, {"guillemin_sternberg", check_gs(d)}};
  if (const Section* g = file.find("metric"))
    suff["riemannian"] = check_riemannian(d, read_qmatrix(*g, "g", d.n(), d.n()));
  else
    suff["riemannian"] = nullptr;
  out["sufficient_conditions"] = std::move(suff);
  return out;
}

inline ReductionDatum read_reduction_datum(const InputFile& file) {
  DatumInput in = read_datum(file);
  return ReductionDatum(read_constant_j(file.get("J"), in.n), in.w0, in.f);
}

inline void cmd_check(Report& r, const InputFile& file) {
  ReductionDatum d = read_reduction_datum(file);
  bool all = false;
  json res = check_results(d, file, &all);
  finish(r, all ? kOk : kObstructed, std::move(res));
}

inline void cmd_reduce(Report& r, const InputFile& file) {
  ReductionDatum d = read_reduction_datum(file);
  bool all = false;
  json res = check_results(d, file, &all);
  if (all) {
    res["reduced"] = reduced_json(reduce(d));
  } else {
    res["reduced"] = nullptr;
  }
  finish(r, all ? kOk : kObstructed, std::move(res));
}

inline json gk_diag_json(const GCStructure& a, const GCStructure& b) {
  GKDiagnostics g = is_generalized_kahler(a, b);
  json out{{"generalized_kahler", g.ok()}, {"commute", g.commute}, {"positive", g.positive}};
  out["failed"] = g.failed.empty() ? json(nullptr) : json(g.failed);
  out["witness"] = g.witness ? qvec(*g.witness) : json(nullptr);
  return out;
}

inline void cmd_gk_reduce(Report& r, const InputFile& file) {
  DatumInput in = read_datum(file);
  std::optional<GualtieriQuadruple> quad;
  std::optional<GKPair> pair;
  if (const Section* q = file.find("quadruple")) {
    const std::size_t n = in.n;
    QMatrix g = read_qmatrix(*q, "g", n, n);
    QMatrix b = q->find("b") ? read_qmatrix(*q, "b", n, n) : QMatrix(n, n);
    QMatrix jp = read_qmatrix(*q, "j_plus", n, n), jm = read_qmatrix(*q, "j_minus", n, n);
    const Field& anchor = q->get("g");
    quad = at_field(*q, anchor, [&] { return GualtieriQuadruple(g, b, jp, jm); });
    pair = from_quadruple(*quad);
  } else {
    GCStructure j1 = read_constant_j(file.get("J1"), in.n);
    GCStructure j2 = read_constant_j(file.get("J2"), in.n);
    json diag = gk_diag_json(j1, j2);
    if (!is_generalized_kahler(j1, j2).ok()) {
      // Not a generalized Kahler pair: user error, but report why.
      finish(r, kInvalid, json{{"input_pair", diag}});
      r.doc["error"] = "J1, J2 do not form a generalized Kahler pair";
      return;
    }
    pair.emplace(j1, j2);
  }
  GKDatum d(*pair, in.w0, in.f);
  json res{{"n", in.n}, {"reduced_dim", in.w0.dim() - in.f.dim()}};
  res["input_pair"] = json{{"J1", qmat(pair->j1.matrix())}, {"J2", qmat(pair->j2.matrix())}};
  res["input_pair"].update(gk_diag_json(pair->j1, pair->j2));
  GKConditionReport rep = gk_check(d);
  json comp = json::array();
  bool comps_ok = true;
  for (int i = 1; i <= 2; ++i) {
    ConditionReport c = check_conditions(d.component(i));
    comps_ok = comps_ok && c.all();
    comp.push_back(json{{"component", i}, {"all_hold", c.all()}, {"conditions", conditions_json(c)}});
  }
  res["components"] = std::move(comp);
  res["gk_conditions"] = json{{"quad_intersection_dim", rep.quad_dim},
                              {"surjective", rep.surjective},
                              {"direct", rep.direct},
                              {"missing", rep.missing ? qvec(*rep.missing) : json(nullptr)}};
  res["final_theorem"] = quad ? json(check_final_theorem(*quad, in.w0, in.f)) : json(nullptr);
  if (rep.surjective && comps_ok) {
    ReducedGKPair red = gk_reduce(d);
    const bool matches = red.pair.same_as(reduce(d.component(1)).j_g, reduce(d.component(2)).j_g);
    json rj{{"J1", qmat(red.pair.j1.matrix())}, {"J2", qmat(red.pair.j2.matrix())}};
    rj.update(gk_diag_json(red.pair.j1, red.pair.j2));
    rj["matches_component_reductions"] = matches;
    res["reduced"] = std::move(rj);
    finish(r, kOk, std::move(res));
  } else {
    res["reduced"] = nullptr;
    finish(r, kObstructed, std::move(res));
  }
}

inline void cmd_bracket(Report& r, const InputFile& file) {
  const Section& sec = file.get("bracket");
  const std::size_t n = read_dim(sec);
  chart::Limits lim;
  if (const Field* m = sec.find("max_degree"))
    lim.max_degree = static_cast<unsigned>(at_field(sec, *m, [&] { return parse_dim(m->value); }));
  auto section = [&](const std::string& name) {
    const Field& x = sec.get(name + ".X");
    const Field& xi = sec.get(name + ".xi");
    return chart::PolySection{at_field(sec, x, [&] { return parse_pvector(x.value, n, lim.max_degree); }),
                              at_field(sec, xi, [&] { return parse_pvector(xi.value, n, lim.max_degree); })};
  };
  chart::PolySection s1 = section("s1"), s2 = section("s2");
  chart::PolySection br = chart::courant_bracket(s1, s2, lim);
  json res{{"n", n}, {"s1", section_json(s1)}, {"s2", section_json(s2)}, {"bracket", section_json(br)}};
  res["antisymmetric"] = br + chart::courant_bracket(s2, s1, lim) == chart::PolySection::zero(n);
  if (const Section* j = file.find("J")) {
    JSpec spec = read_j(*j, n);
    chart::JField jf = std::holds_alternative<GCStructure>(spec) ? chart::JField::constant(std::get<GCStructure>(spec))
                                                                 : std::get<chart::JField>(spec);
    res["nijenhuis_defect"] = section_json(chart::nijenhuis_defect(jf, s1, s2, lim));
  }
  finish(r, kOk, std::move(res));
}

struct SweepOptions {
  std::optional<std::size_t> points;
  std::optional<std::uint64_t> seed;
};

/// --points k keeps k sample points: the first k, or a seeded choice when --seed is given.
/// Reports keep the original point numbering.
inline std::vector<std::size_t> select_points(std::size_t total, const SweepOptions& opt) {
  std::vector<std::size_t> idx(total);
  for (std::size_t i = 0; i < total; ++i) idx[i] = i;
  if (!opt.points || *opt.points >= total) return idx;
  if (opt.seed) {
    std::mt19937_64 rng(*opt.seed);
    std::shuffle(idx.begin(), idx.end(), rng);
  }
  idx.resize(*opt.points);
  std::sort(idx.begin(), idx.end());
  return idx;
}

inline void cmd_sweep(Report& r, const InputFile& file, const SweepOptions& opt) {
  Scenario s = read_scenario(file);
  json res{{"n", s.n}, {"free_action_surrogate", "generator values independent at each point"}};
  if (!s.momentum.empty()) {
    auto bad = momentum_defect(s);
    res["momentum_consistent"] = !bad.has_value();
    if (bad) {
      r.doc["error"] = "momentum inconsistent for generator " + std::to_string(*bad + 1);
      finish(r, kInvalid, std::move(res));
      return;
    }
  } else {
    res["momentum_consistent"] = nullptr;
  }
  const std::vector<std::size_t> keep = select_points(s.sample_points.size(), opt);
  Scenario sub = s;
  sub.sample_points.clear();
  for (std::size_t i : keep) sub.sample_points.push_back(s.sample_points[i]);
  if (s.identification) {
    // Re-index the identification onto the kept points.
    OrbitIdentification oid;
    for (const auto& orbit : s.identification->orbits) {
      std::vector<std::size_t> o;
      for (std::size_t i : orbit) {
        auto it = std::find(keep.begin(), keep.end(), i);
        if (it != keep.end()) o.push_back(static_cast<std::size_t>(it - keep.begin()));
      }
      oid.orbits.push_back(std::move(o));
    }
    for (const auto& [i, m] : s.identification->maps) {
      auto it = std::find(keep.begin(), keep.end(), i);
      if (it != keep.end()) oid.maps[static_cast<std::size_t>(it - keep.begin())] = m;
    }
    sub.identification = std::move(oid);
  }
  SweepReport rep = sweep(sub);
  bool invalid = false, obstructed = false;
  json pts = json::array();
  for (std::size_t k = 0; k < rep.points.size(); ++k) {
    const PointResult& p = rep.points[k];
    json pj{{"index", keep[k] + 1}, {"point", qvec(p.point)}};
    if (!p.error_kind.empty()) {
      pj["status"] = p.error_kind;
      pj["error"] = p.error;
      if (p.error_kind == "non-free")
        obstructed = true;
      else
        invalid = true;
    } else {
      const bool ok = p.conditions->all();
      obstructed = obstructed || !ok;
      pj["status"] = ok ? "ok" : "obstructed";
      pj["conditions"] = conditions_json(*p.conditions);
      pj["classification"] = p.classification ? json(to_string(*p.classification)) : json(nullptr);
      pj["J_G"] = p.reduced ? qmat(p.reduced->j_g.matrix()) : json(nullptr);
      pj["riemannian"] = p.riemannian ? json(*p.riemannian) : json(nullptr);
      if (p.gk) {
        json g{{"surjective", p.gk->report.surjective}, {"direct", p.gk->report.direct}};
        if (p.gk->reduced) {
          g["J1"] = qmat(p.gk->reduced->j1.matrix());
          g["J2"] = qmat(p.gk->reduced->j2.matrix());
          g["generalized_kahler"] = is_generalized_kahler(p.gk->reduced->j1, p.gk->reduced->j2).ok();
        }
        pj["gk"] = std::move(g);
      }
    }
    pts.push_back(std::move(pj));
  }
  res["points"] = std::move(pts);
  if (rep.orbits_agree) {
    res["orbits_agree"] = *rep.orbits_agree;
    json dis = json::array();
    for (const auto& d : rep.disagreements)
      dis.push_back(json{{"orbit", d.orbit + 1}, {"first", keep[d.first] + 1}, {"second", keep[d.second] + 1}});
    res["disagreements"] = std::move(dis);
    obstructed = obstructed || !*rep.orbits_agree;
  } else {
    res["orbits_agree"] = nullptr;
  }
  finish(r, invalid ? kInvalid : obstructed ? kObstructed : kOk, std::move(res));
}

/// Runs one command on file contents; never throws for bad input.
inline Report run(std::string_view command, std::string_view path, std::string_view bytes, const SweepOptions& opt = {}) {
  Report r = make_report(command, path, bytes);
  try {
    InputFile file = parse_file(bytes);
    if (command == "check")
      cmd_check(r, file);
    else if (command == "reduce")
      cmd_reduce(r, file);
    else if (command == "gk-reduce")
      cmd_gk_reduce(r, file);
    else if (command == "bracket")
      cmd_bracket(r, file);
    else if (command == "sweep")
      cmd_sweep(r, file, opt);
    else
      throw InvalidInput("unknown command '" + std::string(command) + "'");
  } catch (const InvalidInput& e) {
    r.doc["status"] = "invalid-input";
    r.doc["error"] = e.what();
    r.exit_code = kInvalid;
  } catch (const ResourceError& e) {
    r.doc["status"] = "invalid-input";
    r.doc["error"] = std::string("resource limit: ") + e.what();
    r.exit_code = kInvalid;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Output

inline bool is_scalar_array(const json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
}

inline bool is_matrix(const json& j) {
  return j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), [](const json& x) { return is_scalar_array(x) && !x.empty(); });
}

inline std::string scalar_text(const json& j) {
  if (j.is_null()) return "none";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

inline void render_text(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      out += pad + key + ":\n";
      render_text(v, out, indent + 2);
    } else if (is_matrix(v)) {
      std::string row;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) row += "; ";
        for (std::size_t k = 0; k < v[i].size(); ++k) row += (k ? ", " : "") + scalar_text(v[i][k]);
      }
      out += pad + key + ": " + row + "\n";
    } else if (is_scalar_array(v)) {
      std::string row;
      for (std::size_t k = 0; k < v.size(); ++k) row += (k ? ", " : "") + scalar_text(v[k]);
      out += pad + key + ": [" + row + "]\n";
    } else if (v.is_array()) {
      out += pad + key + ":\n";
      for (const auto& item : v) {
        out += pad + "  -\n";
        if (item.is_object())
          render_text(item, out, indent + 4);
        else
          out += pad + "    " + scalar_text(item) + "\n";
      }
    } else {
      out += pad + key + ": " + scalar_text(v) + "\n";
    }
  }
}

inline std::string render(const Report& r, bool machine) {
  if (machine) return r.doc.dump(2) + "\n";
  std::string out;
  render_text(r.doc, out, 0);
  return out;
}

}  // namespace diracreduce
