#include "polcal/json_io.hpp"

namespace polcal {

Json to_json(const Scalar& s) {
  if (s.is_exact()) return Json(s.str());
  return Json(s.dbl());
}

namespace {
Json coords_json(const std::vector<Scalar>& coords) {
  Json arr = Json::array();
  for (const auto& c : coords) arr.push_back(to_json(c));
  return arr;
}
}  // namespace

Json to_json(const Point& q) { return coords_json(q.coords()); }
Json to_json(const Direction& v) { return coords_json(v.coords()); }

Json to_json(const Polynomial& p) {
  Json doc;
  doc["dim"] = p.dimension();
  Json base = Json::array();
  for (const auto& b : p.base()) base.push_back(rational_to_string(b));
  doc["base"] = std::move(base);
  Json terms = Json::array();
  for (const auto& [exps, coeff] : p.terms()) {
    Json term;
    term["exp"] = exps;
    term["coef"] = rational_to_string(coeff);
    terms.push_back(std::move(term));
  }
  doc["terms"] = std::move(terms);
  return doc;
}

Json to_json(const PolarizationReport& report) {
  Json doc;
  doc["value"] = to_json(report.value);
  doc["term_count"] = report.term_count;
  if (report.terms) {
    Json terms = Json::array();
    for (const auto& t : *report.terms) {
      Json row;
      row["subset"] = t.subset.members;
      row["sign"] = t.sign;
      row["point"] = to_json(t.at);
      row["value"] = to_json(t.value);
      terms.push_back(std::move(row));
    }
    doc["terms"] = std::move(terms);
  }
  return doc;
}

namespace {
const char* verdict_kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::ExactProof: return "exact-proof";
    case VerdictKind::SampledPass: return "sampled-pass";
    case VerdictKind::Fail: return "fail";
  }
  return "?";
}
}  // namespace

Json to_json(const HomogeneityVerdict& verdict) {
  Json doc;
  doc["kind"] = verdict_kind_name(verdict.kind);
  if (verdict.degree) doc["degree"] = *verdict.degree;
  else doc["degree"] = "indeterminate";
  doc["samples"] = verdict.samples;
  doc["seed"] = verdict.seed;
  doc["tolerance"] = {{"abs", verdict.tolerance.abs_tol}, {"rel", verdict.tolerance.rel_tol}};
  if (verdict.imputed_base_value) doc["imputed_base_value"] = true;
  Json witnesses = Json::array();
  for (const auto& w : verdict.witnesses) {
    Json row;
    row["check"] = w.check;
    if (w.lambda) row["lambda"] = to_json(*w.lambda);
    if (w.slot) row["slot"] = *w.slot;
    Json vecs = Json::array();
    for (const auto& v : w.vectors) vecs.push_back(to_json(v));
    row["vectors"] = std::move(vecs);
    row["lhs"] = to_json(w.lhs);
    row["rhs"] = to_json(w.rhs);
    witnesses.push_back(std::move(row));
  }
  doc["witnesses"] = std::move(witnesses);
  return doc;
}

Json to_json(const DerivativeEstimate& estimate) {
  Json doc;
  doc["value"] = to_json(estimate.value);
  doc["method"] = estimate.method == DerivMethod::ExactPolynomial ? "ExactPolynomial" : "Richardson";
  if (estimate.error_estimate) doc["error"] = *estimate.error_estimate;
  else doc["error"] = nullptr;
  doc["steps"] = estimate.steps_used;
  if (estimate.tableau) doc["tableau"] = *estimate.tableau;
  return doc;
}

Json to_json(const RemainderProfile& profile) {
  Json doc;
  doc["order"] = profile.order;
  Json rows = Json::array();
  for (const auto& row : profile.rows) {
    Json r;
    r["t"] = row.t;
    r["dir"] = to_json(row.dir);
    r["ratio"] = row.ratio;
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  doc["verdict"] = profile.pass ? "pass" : "fail";
  doc["ratio_tol"] = profile.ratio_tol;
  return doc;
}

Scalar scalar_from_text(const std::string& text) { return Scalar::parse(text); }

}  // namespace polcal
