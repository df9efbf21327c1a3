#include "etrails/report.hpp"

#include <sstream>

namespace etrails {

std::string decimal(const BigCount& c) { return c.get_str(); }

std::string fraction(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Json json_count(const std::string& mode, const BigCount& count) {
  Json j;
  j["mode"] = mode;
  j["count"] = decimal(count);
  return j;
}

Json json_vr_table(const VRTable& t) {
  Json j;
  j["mode"] = t.mode == TraceMode::ATrail ? "a-trail" : "general";
  j["labels"] = t.n_labels;
  Json entries = Json::array();
  for (const auto& [key, v] : t.counts) {
    Json e;
    e["type"] = key.str();
    e["count"] = decimal(v);
    entries.push_back(e);
  }
  j["entries"] = entries;
  j["total"] = decimal(t.total());
  return j;
}

Json json_signature(const Signature& s) {
  Json j;
  j["alpha"] = fraction(s.alpha);
  j["beta"] = fraction(s.beta);
  j["gamma"] = fraction(s.gamma);
  j["alpha_float"] = s.alpha.get_d();
  j["beta_float"] = s.beta.get_d();
  j["gamma_float"] = s.gamma.get_d();
  return j;
}

Json json_mixing(const MixingReport& r) {
  Json j;
  j["d"] = r.d;
  j["layers"] = r.layers;
  j["tv"] = fraction(r.tv);
  j["tv_float"] = r.tv_double;
  j["bound"] = fraction(r.bound);
  j["within_bound"] = r.within_bound;
  j["minimal_layers"] = r.minimal_layers;
  j["calibrated_c"] = r.calibrated_c;
  return j;
}

Json json_region_class(RegionClass c, double margin) {
  Json j;
  j["class"] = region_class_name(c);
  j["margin"] = margin;
  return j;
}

namespace {

Json row_json(const RegionScanRow& row) {
  Json j = json_signature(row.sig);
  j["vertices"] = row.vertices;
  j["class"] = region_class_name(row.cls);
  j["margin"] = row.margin;
  return j;
}

}  // namespace

Json json_region_scan(const RegionScanReport& r) {
  Json j;
  j["n"] = r.n;
  j["gadgets"] = r.gadgets;
  j["outside"] = r.outside;
  j["min_margin"] = r.min_margin;
  Json w = Json::array();
  for (const auto& row : r.outside_witnesses) w.push_back(row_json(row));
  j["outside_witnesses"] = w;
  return j;
}

Json json_closure(const ClosureSampleReport& r) {
  Json j;
  j["trials"] = r.trials;
  j["outside"] = r.outside;
  j["min_margin"] = r.min_margin;
  Json c = Json::array();
  for (const auto& sig : r.counterexamples) {
    Json e;
    e["alpha"] = fraction(sig[0]);
    e["beta"] = fraction(sig[1]);
    e["gamma"] = fraction(sig[2]);
    c.push_back(e);
  }
  j["counterexamples"] = c;
  return j;
}

Json json_verify(const VerifyReport& r) {
  Json j;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["checks"] = r.checks;
  return j;
}

std::string csv_region_scan(const RegionScanReport& r) {
  std::ostringstream os;
  os << "alpha,beta,gamma,class\n";
  for (const auto& row : r.rows)
    os << row.sig.alpha.get_d() << ',' << row.sig.beta.get_d() << ',' << row.sig.gamma.get_d()
       << ',' << region_class_name(row.cls) << '\n';
  return os.str();
}

std::string csv_closure(const ClosureSampleReport& r) {
  std::ostringstream os;
  os << "alpha,beta,gamma,class\n";
  for (const auto& sig : r.counterexamples)
    os << sig[0].get_d() << ',' << sig[1].get_d() << ',' << sig[2].get_d() << ",outside\n";
  return os.str();
}

std::string render(const Json& j) { return j.dump(); }

}  // namespace etrails
