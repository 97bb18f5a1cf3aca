#include "limitlaw/serialize.hpp"

#include <cstdio>

namespace limitlaw {

using nlohmann::json;

std::string format_csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const moments::MomentSequence& seq) {
  json params = json::object();
  for (const auto& [k, v] : seq.params()) params[k] = v;
  return {{"label", seq.label()},
          {"params", params},
          {"values", std::vector<double>(seq.values().begin(), seq.values().end())}};
}

json to_json(const identities::ComparisonReport& report) {
  json params = json::object();
  for (const auto& [k, v] : report.params) params[k] = v;
  json per_s = json::array();
  for (const auto& d : report.per_s) {
    per_s.push_back({{"s", d.s}, {"a", d.a}, {"b", d.b}, {"deviation", d.deviation}});
  }
  json out = {{"label", {report.label_a, report.label_b}},
              {"params", params},
              {"tolerance", report.tolerance},
              {"metric", report.metric},
              {"per_s", per_s},
              {"max_deviation", report.max_deviation},
              {"argmax_s", report.argmax},
              {"pass", report.pass}};
  if (!report.diagnostics.empty()) {
    json diag = json::object();
    for (const auto& [k, v] : report.diagnostics) diag[k] = v;
    out["diagnostics"] = diag;
  }
  return out;
}

json to_json(const identities::PhiAdjudication& adjudication) {
  return {{"a_prime", adjudication.a_prime},
          {"max_order", adjudication.max_order},
          {"conventions",
           {{"paper", to_json(adjudication.quadruple_scale)},
            {"half", to_json(adjudication.double_scale)}}}};
}

json to_json(const identities::HankelDiagnostics& diagnostics) {
  json orders = json::array();
  for (const auto& o : diagnostics.orders) {
    orders.push_back({{"order", o.order},
                      {"smallest_pivot", o.smallest_pivot},
                      {"pivot_threshold", o.pivot_threshold},
                      {"positive_definite", o.positive_definite}});
  }
  return {{"orders", orders},
          {"carleman_partial_sums", diagnostics.carleman},
          {"all_positive_definite", diagnostics.all_positive_definite()}};
}

json to_json(const mellin::DensityTable& table) {
  json params = json::object();
  for (const auto& [k, v] : table.spec.params) params[k] = v;
  return {{"spec", table.spec.label},
          {"params", params},
          {"interpolation", table.interpolation},
          {"integral_raw", table.integral_raw},
          {"mass_below_estimate", table.mass_below_estimate},
          {"mass_above_bound", table.mass_above_bound},
          {"integral_with_tails", table.integral_with_tails()},
          {"normalization", table.normalization},
          {"x", table.x},
          {"f", table.f},
          {"f_raw", table.f_raw},
          {"imag_raw", table.imag_raw},
          {"truncation_estimate", table.truncation_estimate},
          {"abscissa", table.abscissa},
          {"height", table.height},
          {"step", table.step}};
}

json to_json(const mc::SampleSummary& summary) {
  json params = json::object();
  for (const auto& [k, v] : summary.params) params[k] = v;
  return {{"sampler", summary.sampler},
          {"seed", summary.seed},
          {"n", summary.n},
          {"params", params},
          {"moments", summary.moments},
          {"standard_errors", summary.standard_errors},
          {"power_means", summary.power_means}};
}

void write_csv(std::ostream& out, const moments::MomentSequence& seq, std::size_t first) {
  out << "s,value\n";
  for (std::size_t s = first; s < seq.size(); ++s) {
    out << s << ',' << format_csv_number(seq[s]) << '\n';
  }
}

void write_csv(std::ostream& out, const mellin::DensityTable& table) {
  out << "# spec=" << table.spec.label << '\n';
  out << "# integral=" << format_csv_number(table.integral_raw) << '\n';
  out << "# integral_with_tails=" << format_csv_number(table.integral_with_tails()) << '\n';
  out << "# mass_below_estimate=" << format_csv_number(table.mass_below_estimate) << '\n';
  out << "# mass_above_bound=" << format_csv_number(table.mass_above_bound) << '\n';
  out << "# normalization=" << format_csv_number(table.normalization) << '\n';
  out << "x,f,truncation_estimate\n";
  for (std::size_t i = 0; i < table.x.size(); ++i) {
    out << format_csv_number(table.x[i]) << ',' << format_csv_number(table.f[i]) << ','
        << format_csv_number(table.truncation_estimate[i]) << '\n';
  }
}

void write_csv(std::ostream& out, std::span<const identities::ComparisonReport> reports) {
  out << "label_a,label_b,s,a,b,deviation,tolerance,pass\n";
  for (const auto& r : reports) {
    for (const auto& d : r.per_s) {
      out << r.label_a << ',' << r.label_b << ',' << d.s << ',' << format_csv_number(d.a) << ','
          << format_csv_number(d.b) << ',' << format_csv_number(d.deviation) << ','
          << format_csv_number(r.tolerance) << ',' << (r.pass ? "true" : "false") << '\n';
    }
  }
}

}  // namespace limitlaw
