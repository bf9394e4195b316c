#include "kw4/report.hpp"

#include <fstream>

#include "kw4/random.hpp"

namespace kw4 {

using ordered = nlohmann::ordered_json;

ordered report_json(const RunResult& r, bool include_wall_time) {
  ordered records = ordered::array();
  for (const Record& rec : r.records) {
    ordered o;
    o["trial"] = rec.trial;
    if (rec.battery) o["battery"] = *rec.battery;
    if (rec.label) o["label"] = *rec.label;
    o["residual"] = rec.residual ? ordered(*rec.residual) : ordered(nullptr);
    if (rec.rank) o["rank"] = *rec.rank;
    o["pass"] = rec.pass;
    if (rec.error) o["error"] = *rec.error;
    records.push_back(std::move(o));
  }

  ordered summary;
  summary["trials"] = r.records.size();
  summary["pass_count"] = r.pass_count();
  summary["max_residual"] = r.max_residual();
  summary["all_pass"] = r.all_pass();
  if (include_wall_time) summary["wall_time_s"] = r.wall_time_s;

  const Scenario& sc = r.scenario;
  ordered prov;
  prov["seed"] = sc.seed;
  prov["tolerance"] = r.tolerance;
  prov["engine_version"] = KW4_VERSION;
  prov["rng"] = Rng::kAlgorithm;
  prov["kind"] = std::string(to_string(sc.kind));
  prov["signature"] = std::string(to_string(sc.signature));
  prov["scalars"] = std::string(to_string(sc.scalars));
  prov["explicit_data"] = sc.g0.has_value();
  prov["flip_orientation"] = sc.flip_orientation;

  ordered doc;
  doc["schema"] = kReportSchema;
  doc["mode"] = std::string(to_string(sc.mode));
  doc["records"] = std::move(records);
  doc["summary"] = std::move(summary);
  doc["provenance"] = std::move(prov);
  return doc;
}

std::string report_text(const RunResult& r, bool include_wall_time) {
  return report_json(r, include_wall_time).dump(2) + "\n";
}

void write_report(const RunResult& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write report to " + path);
  out << report_text(r);
}

}  // namespace kw4
