#pragma once

// Manifold-level examples on one polynomial chart: a J (constant or polynomial field),
// infinitesimal action generators, equations cutting out M0, and the pointwise sweep.

#include <cstddef>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "diracred/chart.hpp"
#include "diracred/kahler.hpp"
#include "diracred/reduction.hpp"

namespace diracred {

/// Generator values are dependent at a sample point (the stand-in for a non-free action).
class NonFreePoint : public InvalidInput {
 public:
  explicit NonFreePoint(const std::string& what) : InvalidInput(what) {}
};

using Point = std::vector<Rational>;
using JSpec = std::variant<GCStructure, chart::JField>;

inline std::string to_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].get_str();
  return s + ")";
}

inline GCStructure evaluate(const JSpec& j, const Point& p) {
  if (const auto* c = std::get_if<GCStructure>(&j)) return *c;
  return std::get<chart::JField>(j).at(p);
}

inline std::size_t dimension(const JSpec& j) {
  return std::visit([](const auto& x) { return x.n(); }, j);
}

/// Points sharing an orbit, each with a linear map A_p from its reduced V into a common reference.
/// Agreement means diag(A, A^-T) J_p diag(A^-1, A^T) is the same for the whole group.
struct OrbitIdentification {
  std::vector<std::vector<std::size_t>> orbits;  ///< indices into sample_points
  std::map<std::size_t, QMatrix> maps;           ///< missing entries mean identity
};

struct Scenario {
  std::size_t n = 0;
  JSpec j = GCStructure();
  std::optional<JSpec> partner;                     ///< second structure for generalized Kahler sweeps
  std::vector<chart::VectorField> generators;       ///< fundamental vector fields
  std::vector<chart::Polynomial> m0_equations;      ///< M0 = common zero set
  std::vector<chart::Polynomial> momentum;          ///< <mu, A_k> per generator, optional
  std::vector<Point> sample_points;
  std::optional<QMatrix> metric;
  std::optional<OrbitIdentification> identification;

  /// Shapes only; point-level invariants are checked by pointwise_datum.
  void validate() const {
    require(dimension(j) == n, "scenario: J does not match the chart dimension");
    if (partner) require(dimension(*partner) == n, "scenario: second J does not match the chart dimension");
    for (const auto& g : generators) {
      require(g.size() == n, "scenario: generator has wrong number of components");
      for (const auto& c : g) require(c.nvars() == n, "scenario: generator component has wrong variable count");
    }
    for (const auto& e : m0_equations) require(e.nvars() == n, "scenario: M0 equation has wrong variable count");
    require(momentum.empty() || momentum.size() == generators.size(),
            "scenario: momentum needs one component per generator");
    for (const auto& m : momentum) require(m.nvars() == n, "scenario: momentum component has wrong variable count");
    for (const auto& p : sample_points) require(p.size() == n, "scenario: sample point has wrong dimension");
    if (metric) require(metric->rows() == n && metric->cols() == n, "scenario: metric has wrong size");
    if (identification)
      for (const auto& orbit : identification->orbits)
        for (std::size_t i : orbit) require(i < sample_points.size(), "scenario: orbit index out of range");
  }
};

/// The 2-form block sigma of J as a polynomial 2-form (omega itself when J is symplectic).
inline chart::Form sigma_form(const JSpec& j) {
  const std::size_t n = dimension(j);
  chart::PolyMatrix m = chart::poly_matrix(n, n, n);
  if (const auto* c = std::get_if<GCStructure>(&j)) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) m[a][b] = chart::Polynomial(n, c->matrix()(n + b, a));
  } else {
    const auto& f = std::get<chart::JField>(j).matrix();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) m[a][b] = f[n + b][a];
  }
  return chart::Form::two_form(m);
}

/// First generator k with A_k _| omega != d<mu, A_k>, where omega is the 2-form block of J.
inline std::optional<std::size_t> momentum_defect(const Scenario& s) {
  require(!s.momentum.empty(), "momentum_defect: scenario has no momentum");
  s.validate();
  const chart::Form omega = sigma_form(s.j);
  for (std::size_t k = 0; k < s.generators.size(); ++k) {
    chart::Form lhs = chart::interior(s.generators[k], omega);
    if (!(lhs == chart::exterior_d(s.momentum[k]))) return k;
  }
  return std::nullopt;
}

/// T_p M0 as the kernel of the Jacobian of the M0 equations.
inline QSubspace tangent_m0(const Scenario& s, const Point& p) {
  QMatrix jac(s.m0_equations.size(), s.n);
  for (std::size_t r = 0; r < s.m0_equations.size(); ++r)
    for (std::size_t c = 0; c < s.n; ++c) jac(r, c) = s.m0_equations[r].derivative(c).evaluate(p);
  return null_space(jac);
}

/// Pointwise datum at p: W0 = T_p M0, F = span of generator values, J(p).
inline ReductionDatum pointwise_datum(const Scenario& s, const Point& p) {
  s.validate();
  require(p.size() == s.n, "pointwise_datum: point has wrong dimension");
  for (std::size_t k = 0; k < s.m0_equations.size(); ++k) {
    Rational v = s.m0_equations[k].evaluate(p);
    if (sgn(v) != 0)
      throw InvalidInput("point " + to_string(p) + " is not on M0: equation " + std::to_string(k + 1) +
                         " evaluates to " + v.get_str());
  }
  QSubspace w0 = tangent_m0(s, p);
  std::vector<Vec<Rational>> vals;
  for (const auto& g : s.generators) {
    Vec<Rational> v;
    for (const auto& c : g) v.push_back(c.evaluate(p));
    vals.push_back(std::move(v));
  }
  QSubspace f = QSubspace::span(vals, s.n);
  if (f.dim() != vals.size())
    throw NonFreePoint("generator values are dependent at " + to_string(p) + " (non-free point)");
  for (std::size_t k = 0; k < vals.size(); ++k)
    if (!w0.contains(vals[k]))
      throw InvalidInput("generator " + std::to_string(k + 1) + " is not tangent to M0 at " + to_string(p));
  return ReductionDatum(evaluate(s.j, p), std::move(w0), std::move(f));
}

struct GKPointResult {
  GKConditionReport report;
  std::optional<GKPair> reduced;
};

struct PointResult {
  Point point;
  std::optional<ConditionReport> conditions;
  std::optional<ReducedGCS> reduced;
  std::optional<Classification> classification;
  std::optional<bool> riemannian;  ///< sufficient metric criterion, when a metric is given
  std::optional<GKPointResult> gk;
  std::string error_kind;  ///< "" | "invalid-input" | "non-free" | "resource" | "internal"
  std::string error;

  bool ok() const { return error_kind.empty() && conditions && conditions->all(); }
};

struct OrbitDisagreement {
  std::size_t orbit;
  std::size_t first;
  std::size_t second;
};

struct SweepReport {
  std::vector<PointResult> points;
  std::optional<bool> orbits_agree;  ///< set only when an identification was supplied
  std::vector<OrbitDisagreement> disagreements;

  std::size_t errors() const {
    std::size_t e = 0;
    for (const auto& p : points) e += p.error_kind.empty() ? 0 : 1;
    return e;
  }
  bool all_ok() const {
    for (const auto& p : points)
      if (!p.ok()) return false;
    return orbits_agree.value_or(true);
  }
};

inline PointResult run_point(const Scenario& s, const Point& p) {
  PointResult out;
  out.point = p;
  try {
    ReductionDatum d = pointwise_datum(s, p);
    out.conditions = check_conditions(d);
    if (s.metric) out.riemannian = check_riemannian(d, *s.metric);
    if (out.conditions->all()) {
      out.reduced = reduce(d);
      out.classification = classify(*out.reduced);
    }
    if (s.partner) {
      GKDatum gd(GKPair(d.j, evaluate(*s.partner, p)), d.w0, d.f);
      GKPointResult g{gk_check(gd), std::nullopt};
      if (g.report.surjective) g.reduced = gk_reduce(gd).pair;
      out.gk = std::move(g);
    }
  } catch (const NonFreePoint& e) {
    out.error_kind = "non-free";
    out.error = e.what();
  } catch (const InvalidInput& e) {
    out.error_kind = "invalid-input";
    out.error = e.what();
  } catch (const ResourceError& e) {
    out.error_kind = "resource";
    out.error = e.what();
  } catch (const InternalError& e) {
    out.error_kind = "internal";
    out.error = e.what();
  }
  if (!out.error_kind.empty()) {
    out.conditions.reset();
    out.reduced.reset();
    out.classification.reset();
    out.riemannian.reset();
    out.gk.reset();
  }
  return out;
}

/// Transport of a reduced structure along A: diag(A, A^-T) J diag(A^-1, A^T).
inline QMatrix transport(const GCStructure& j, const QMatrix& a) {
  const std::size_t r = j.n();
  require(a.rows() == r && a.cols() == r, "orbit map has wrong size");
  require(is_invertible(a), "orbit map is not invertible");
  QMatrix ainv = inverse(a);
  QMatrix fwd = block2x2(a, QMatrix(r, r), QMatrix(r, r), QMatrix(ainv.transpose()));
  QMatrix back = block2x2(ainv, QMatrix(r, r), QMatrix(r, r), QMatrix(a.transpose()));
  return fwd * j.matrix() * back;
}

/// Runs the pointwise pipeline at every sample point; points are evaluated concurrently
/// and never abort the sweep. `threads` = 0 means one task per point.
inline SweepReport sweep(const Scenario& s, std::size_t threads = 0) {
  s.validate();
  SweepReport rep;
  const std::size_t total = s.sample_points.size();
  rep.points.resize(total);
  const std::size_t batch = threads == 0 ? std::max<std::size_t>(total, 1) : threads;
  for (std::size_t start = 0; start < total; start += batch) {
    std::vector<std::future<PointResult>> jobs;
    const std::size_t end = std::min(total, start + batch);
    for (std::size_t i = start; i < end; ++i)
      jobs.push_back(std::async(std::launch::async, [&s, i] { return run_point(s, s.sample_points[i]); }));
    for (std::size_t i = start; i < end; ++i) rep.points[i] = jobs[i - start].get();
  }

  if (s.identification) {
    bool agree = true;
    for (std::size_t o = 0; o < s.identification->orbits.size(); ++o) {
      const auto& orbit = s.identification->orbits[o];
      std::optional<std::pair<std::size_t, QMatrix>> ref;
      for (std::size_t idx : orbit) {
        const PointResult& pr = rep.points[idx];
        if (!pr.reduced) continue;  // obstructed or failed points are reported on their own
        auto it = s.identification->maps.find(idx);
        const QMatrix a = it == s.identification->maps.end() ? QMatrix::identity(pr.reduced->reduced_dim) : it->second;
        QMatrix t = transport(pr.reduced->j_g, a);
        if (!ref) {
          ref.emplace(idx, std::move(t));
        } else if (!(ref->second == t)) {
          agree = false;
          rep.disagreements.push_back({o, ref->first, idx});
        }
      }
    }
    rep.orbits_agree = agree;
  }
  return rep;
}

}  // namespace diracred
