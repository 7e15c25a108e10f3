#include "bcmf/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bcmf/errors.hpp"

namespace bcmf {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const Enclosure& e) { return Json{{"lo", e.lo}, {"hi", e.hi}}; }

Json to_json(const EPSequence& seq) {
  return Json{{"pre", seq.preperiod().str()}, {"per", seq.period().str()}};
}

Json to_json(const Rational& r) { return Json{{"num", r.num}, {"den", r.den}, {"value", r.value()}}; }

Json to_json(const CurveMeta& meta) {
  Json params = Json::object();
  for (const auto& [key, value] : meta.params) params[key] = value;
  return Json{{"kind", to_string(meta.kind)}, {"params", params}, {"flags", meta.flags}};
}

Json to_json(const SpectrumCurve& curve) {
  Json points = Json::array();
  for (const auto& pt : curve.points) {
    Json row{{"q", std::isnan(pt.q) ? Json(nullptr) : Json(pt.q)}, {"alpha", pt.alpha}, {"f", pt.f}};
    if (pt.flags & kPointClipped) row["clipped"] = true;
    if (pt.flags & kPointOutOfSupport) row["out_of_support"] = true;
    points.push_back(std::move(row));
  }
  return Json{{"meta", to_json(curve.meta)}, {"points", std::move(points)}};
}

std::string to_csv(const SpectrumCurve& curve) {
  std::string s = "q,alpha,f\n";
  for (const auto& pt : curve.points)
    s += format_real(pt.q) + ',' + format_real(pt.alpha) + ',' + format_real(pt.f) + '\n';
  return s;
}

std::string to_csv(const MeshProfile& profile) {
  std::string s = "j,center,lo,hi\n";
  for (const auto& c : profile.cells)
    s += std::to_string(c.j) + ',' + format_real(c.center) + ',' + format_real(c.mass.lo) + ',' +
         format_real(c.mass.hi) + '\n';
  return s;
}

std::string dump(const Json& doc) { return doc.dump() + '\n'; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw Error("write to '" + path + "' failed");
}

}  // namespace bcmf
