#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qsr/errors.hpp"
#include "qsr/sweep.hpp"

namespace qsr {

std::optional<OutputFormat> parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  return std::nullopt;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

std::string one_line(std::string s) {
  for (auto& ch : s)
    if (ch == '\n' || ch == '\r') ch = ' ';
  return s;
}

}  // namespace

std::string to_csv(const SweepResult& result) {
  std::string out;
  for (const auto& [k, v] : result.metadata) out += "# " + one_line(k) + "=" + one_line(v) + "\n";
  out += "axis,measure,value\n";
  for (const auto& r : result.rows) out += format_double(r.axis) + "," + r.measure + "," + format_double(r.value) + "\n";
  return out;
}

std::string to_json(const SweepResult& result) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : result.metadata) meta[k] = v;
  j["metadata"] = std::move(meta);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : result.rows) rows.push_back({{"axis", r.axis}, {"measure", r.measure}, {"value", r.value}});
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

SweepResult from_json(const std::string& text) {
  SweepResult out;
  try {
    const auto j = nlohmann::ordered_json::parse(text);
    for (const auto& [k, v] : j.at("metadata").items()) out.metadata.emplace_back(k, v.get<std::string>());
    for (const auto& r : j.at("rows"))
      out.rows.push_back({r.at("axis").get<double>(), r.at("measure").get<std::string>(), r.at("value").get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed sweep JSON: ") + e.what());
  }
  return out;
}

void emit(const SweepResult& result, OutputFormat format, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path + " for writing");
  f << (format == OutputFormat::Csv ? to_csv(result) : to_json(result));
  f.flush();
  if (!f) throw Error("failed writing " + path);
}

SweepResult read_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return from_json(ss.str());
}

}  // namespace qsr
