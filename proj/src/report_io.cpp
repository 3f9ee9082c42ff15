#include "morpho/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace morpho {

std::string format_double(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// JSON has no NaN/Infinity literals.
std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

std::string json_opt(const std::optional<double>& v) { return v ? json_number(*v) : "null"; }

std::string csv_opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

void write_object(std::ostringstream& os, const FamilyReport& r, bool timing, const std::string& indent) {
  const auto& c = r.config;
  const std::string in = indent + "  ";
  os << indent << "{\n";
  os << in << "\"family\": " << quoted(r.family) << ",\n";
  os << in << "\"algebra\": " << quoted(to_string(r.algebra)) << ",\n";
  os << in << "\"variant\": " << quoted(to_string(r.variant)) << ",\n";
  os << in << "\"p\": " << r.p << ",\n";
  os << in << "\"q\": " << r.q << ",\n";
  os << in << "\"r\": " << (r.r ? std::to_string(*r.r) : "null") << ",\n";
  os << in << "\"samples\": " << c.samples << ",\n";
  os << in << "\"seed\": " << c.seed << ",\n";
  os << in << "\"skew_seed\": " << c.family.skew_seed << ",\n";
  os << in << "\"tolerances\": {"
     << "\"jet\": " << json_number(c.tol.jet) << ", "
     << "\"fd\": " << json_number(c.tol.fd) << ", "
     << "\"invariance\": " << json_number(c.tol.invariance) << ", "
     << "\"row_independence\": " << json_number(c.tol.row_independence) << ", "
     << "\"fd_step\": " << json_number(c.fd_step) << ", "
     << "\"slack\": " << json_number(c.slack) << ", "
     << "\"margin\": " << json_number(c.margin) << ", "
     << "\"invariance_trials\": " << c.invariance_trials << ", "
     << "\"invariance_points\": " << c.invariance_points << ", "
     << "\"fd_points\": " << c.fd_points << "},\n";
  os << in << "\"max_tau\": " << json_number(r.max_tau) << ",\n";
  os << in << "\"max_kappa\": " << json_number(r.max_kappa) << ",\n";
  os << in << "\"invariance_max\": " << json_opt(r.invariance_max) << ",\n";
  os << in << "\"row_independence_max\": " << json_opt(r.row_independence_max) << ",\n";
  os << in << "\"engines_agree\": " << json_opt(r.engines_agree) << ",\n";
  os << in << "\"pass\": " << (r.pass ? "true" : "false") << ",\n";
  os << in << "\"wall_ms\": " << (timing ? json_number(r.wall_ms) : "null") << "\n";
  os << indent << "}";
}

}  // namespace

std::string to_json(const FamilyReport& report, bool timing) {
  std::ostringstream os;
  write_object(os, report, timing, "");
  os << "\n";
  return os.str();
}

std::string to_json(const std::vector<FamilyReport>& reports, bool timing) {
  std::ostringstream os;
  os << "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    write_object(os, reports[i], timing, "  ");
    os << (i + 1 < reports.size() ? ",\n" : "\n");
  }
  os << "]\n";
  return os.str();
}

std::string to_csv(const std::vector<FamilyReport>& reports, bool timing) {
  std::ostringstream os;
  os << "family,algebra,variant,p,q,r,samples,seed,max_tau,max_kappa,invariance_max,row_independence_max,"
        "engines_agree,pass,wall_ms\n";
  for (const auto& r : reports) {
    os << r.family << ',' << to_string(r.algebra) << ',' << to_string(r.variant) << ',' << r.p << ',' << r.q << ','
       << (r.r ? std::to_string(*r.r) : "") << ',' << r.config.samples << ',' << r.config.seed << ','
       << format_double(r.max_tau) << ',' << format_double(r.max_kappa) << ',' << csv_opt(r.invariance_max) << ','
       << csv_opt(r.row_independence_max) << ',' << csv_opt(r.engines_agree) << ',' << (r.pass ? "true" : "false")
       << ',' << (timing ? format_double(r.wall_ms) : "") << '\n';
  }
  return os.str();
}

}  // namespace morpho
