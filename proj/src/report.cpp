#include "bmc/report.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace bmc {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

} // namespace

void write_csv(const Report& report, std::ostream& os) {
  os << "example,params,eur_mean,eur_se,low_mean,low_se,high_mean,high_se,gap_pct,seconds\n";
  for (const auto& r : report.rows) {
    if (r.failed) {
      os << r.example << ',' << r.params << ",,,,,,,,\n";
      continue;
    }
    os << r.example << ',' << r.params << ',' << fmt(r.european.mean) << ','
       << fmt(r.european.se) << ',' << fmt(r.low.mean) << ',' << fmt(r.low.se) << ','
       << fmt(r.high.mean) << ',' << fmt(r.high.se) << ',' << fmt(r.gap_pct) << ','
       << fmt(r.seconds) << '\n';
  }
}

void write_csv_file(const Report& report, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(report, os);
}

void write_config_echo(const Report& report, const std::string& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : report.rows) arr.push_back(r.config_echo);
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << arr.dump(2) << '\n';
}

std::string format_table(const Report& report) {
  std::ostringstream os;
  os << std::left << std::setw(22) << "example" << std::setw(24) << "params" << std::right
     << std::setw(10) << "european" << std::setw(8) << "(se)" << std::setw(10) << "low"
     << std::setw(8) << "(se)" << std::setw(10) << "high" << std::setw(8) << "(se)"
     << std::setw(9) << "gap%" << std::setw(9) << "time" << '\n';
  for (const auto& r : report.rows) {
    os << std::left << std::setw(22) << r.example << std::setw(24) << r.params << std::right;
    if (r.failed) {
      os << "  FAILED: " << r.error << '\n';
      continue;
    }
    auto num = [&os](double v, int w, int prec) {
      os << std::setw(w) << std::fixed << std::setprecision(prec) << v;
      os.unsetf(std::ios::fixed);
    };
    num(r.european.mean, 10, 3);
    num(r.european.se, 8, 3);
    num(r.low.mean, 10, 3);
    num(r.low.se, 8, 3);
    num(r.high.mean, 10, 3);
    num(r.high.se, 8, 3);
    num(r.gap_pct, 9, 2);
    num(r.seconds, 9, 2);
    os << '\n';
  }
  return os.str();
}

} // namespace bmc
