#include "kobpath/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace kobpath {

namespace {

cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json cplx_to_json(const cplx& c) { return json::array({c.real(), c.imag()}); }

}  // namespace

CVec cvec_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("points are arrays of [re, im] pairs");
  CVec v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(cplx_from_json(e));
  return v;
}

json cvec_to_json(const CVec& v) {
  json j = json::array();
  for (const cplx& c : v) j.push_back(cplx_to_json(c));
  return j;
}

Domain domain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError("domain config needs a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "disc") return Domain::disc();
    if (kind == "ball") return Domain::ball(j.at("n").get<int>());
    if (kind == "polydisc")
      return Domain::polydisc(j.at("radii").get<std::vector<double>>());
    if (kind == "halfplane") return Domain::halfplane();
    if (kind == "punctured_disc") return Domain::punctured_disc();
    if (kind == "annulus") return Domain::annulus(j.at("r").get<double>());
    if (kind == "product") {
      std::vector<Domain> factors;
      for (const auto& f : j.at("factors")) factors.push_back(domain_from_json(f));
      return Domain::product(std::move(factors));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad domain config: ") + e.what());
  }
  throw ParseError("unknown domain kind \"" + kind + "\"");
}

json domain_to_json(const Domain& domain) {
  switch (domain.kind()) {
    case DomainKind::UnitDisc:
      return {{"kind", "disc"}};
    case DomainKind::UnitBall:
      return {{"kind", "ball"}, {"n", domain.dim()}};
    case DomainKind::Polydisc:
      return {{"kind", "polydisc"}, {"radii", domain.radii()}};
    case DomainKind::UpperHalfPlane:
      return {{"kind", "halfplane"}};
    case DomainKind::PuncturedDisc:
      return {{"kind", "punctured_disc"}};
    case DomainKind::Annulus:
      return {{"kind", "annulus"}, {"r", domain.inner_radius()}};
    case DomainKind::Product: {
      json factors = json::array();
      for (const Domain& f : domain.factors())
        factors.push_back(domain_to_json(f));
      return {{"kind", "product"}, {"factors", factors}};
    }
  }
  throw ParseError("unreachable domain kind");
}

Path path_from_json(const json& j) {
  try {
    Domain domain = domain_from_json(j.at("domain"));
    const double horizon = j.at("T").get<double>();
    std::vector<Segment> segments;
    for (const auto& js : j.at("segments")) {
      Segment seg;
      const auto& iv = js.at("interval");
      if (!iv.is_array() || iv.size() != 2)
        throw ParseError("segment interval must be [t0, t1]");
      seg.t0 = iv[0].get<double>();
      seg.t1 = iv[1].get<double>();
      const std::string kind = js.at("kind").get<std::string>();
      if (kind == "constant") {
        seg.shape = ConstantSeg{cvec_from_json(js.at("at"))};
      } else if (kind == "affine") {
        seg.shape = AffineSeg{cvec_from_json(js.at("from")),
                              cvec_from_json(js.at("to"))};
      } else if (kind == "sampled") {
        SampledSeg s;
        s.params = js.at("params").get<std::vector<double>>();
        for (const auto& p : js.at("points"))
          s.points.push_back(cvec_from_json(p));
        seg.shape = std::move(s);
      } else {
        throw ParseError("unknown segment kind \"" + kind + "\"");
      }
      segments.push_back(std::move(seg));
    }
    return Path(std::move(domain), horizon, std::move(segments));
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad path spec: ") + e.what());
  }
}

json path_to_json(const Path& path) {
  json segments = json::array();
  for (const Segment& seg : path.segments()) {
    json js{{"interval", json::array({seg.t0, seg.t1})}};
    if (const auto* c = std::get_if<ConstantSeg>(&seg.shape)) {
      js["kind"] = "constant";
      js["at"] = cvec_to_json(c->at);
    } else if (const auto* a = std::get_if<AffineSeg>(&seg.shape)) {
      js["kind"] = "affine";
      js["from"] = cvec_to_json(a->from);
      js["to"] = cvec_to_json(a->to);
    } else {
      const auto& s = std::get<SampledSeg>(seg.shape);
      js["kind"] = "sampled";
      js["params"] = s.params;
      json pts = json::array();
      for (const CVec& p : s.points) pts.push_back(cvec_to_json(p));
      js["points"] = pts;
    }
    segments.push_back(std::move(js));
  }
  return {{"domain", domain_to_json(path.domain())},
          {"T", path.horizon()},
          {"segments", segments}};
}

json table_to_json(const ArcLengthTable& table) {
  return {{"grid", table.grid},
          {"values", table.values},
          {"total", table.total},
          {"quad_tol", table.quad_tol}};
}

json diagnostics_to_json(const ReparamDiagnostics& d) {
  return {{"max_speed_deviation", d.max_speed_deviation},
          {"unit_speed_fraction", d.unit_speed_fraction},
          {"image_hausdorff", d.image_hausdorff},
          {"max_spacing", d.max_spacing},
          {"length_discrepancy", d.length_discrepancy},
          {"interior_nodes", d.interior_nodes}};
}

json plan_to_json(const CollapsePlan& plan) {
  json intervals = json::array();
  for (const auto& [a, b] : plan.source.intervals)
    intervals.push_back(json::array({a, b}));
  return {{"intervals", intervals},
          {"points", plan.source.points},
          {"cumulative_offsets", plan.cumulative_offsets},
          {"tau", plan.tau}};
}

json reparam_result_to_json(const ReparamResult& result) {
  json j{{"sigma", path_to_json(result.sigma)},
         {"table", table_to_json(result.table)},
         {"collapsed", result.collapsed},
         {"diagnostics", diagnostics_to_json(result.diagnostics)},
         {"ell", result.table.total}};
  j["plan"] = result.plan ? plan_to_json(*result.plan) : json(nullptr);
  return j;
}

json report_to_json(const PropertyReport& report) {
  return {{"pass", report.pass},
          {"worst_slack", report.worst_slack},
          {"witness", json::array({report.witness_s, report.witness_t})},
          {"grid_size", report.grid_size},
          {"tolerance", report.tolerance}};
}

void write_sigma_csv(const ReparamResult& result, std::ostream& out) {
  const int dim = result.sigma.domain().dim();
  out << "u";
  for (int c = 0; c < dim; ++c) out << ",re" << c << ",im" << c;
  out << ",speed\n";
  char buf[64];
  const auto& segs = result.sigma.segments();
  for (std::size_t si = 0; si < segs.size(); ++si) {
    const auto& s = std::get<SampledSeg>(segs[si].shape);
    // The shared junction node is emitted once, by the earlier segment.
    const std::size_t first = (si == 0) ? 0 : 1;
    for (std::size_t k = first; k < s.params.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", s.params[k]);
      out << buf;
      for (int c = 0; c < dim; ++c) {
        std::snprintf(buf, sizeof buf, "%.17g", s.points[k][c].real());
        out << ',' << buf;
        std::snprintf(buf, sizeof buf, "%.17g", s.points[k][c].imag());
        out << ',' << buf;
      }
      std::snprintf(buf, sizeof buf, "%.17g",
                    smoothed_speed(result.sigma, si, s.params[k]));
      out << ',' << buf << '\n';
    }
  }
}

void write_slack_csv(const std::vector<PairCheck>& rows, std::ostream& out) {
  out << "s,t,lhs,rhs,slack\n";
  char buf[64];
  for (const PairCheck& r : rows) {
    const double vals[5] = {r.s, r.t, r.lhs, r.rhs, r.slack};
    for (int i = 0; i < 5; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", vals[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot open " + tmp + " for writing");
    f << content;
    if (!f.good()) throw InputError("failed writing " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw InputError("failed to move " + tmp + " into place");
}

}  // namespace kobpath
