#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include <json.hpp>

#include "qkt/sweep.hpp"

namespace qkt {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::io,
                "cannot open " + path.string() + " for writing: " + std::strerror(errno));
  }
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::io, "write to " + path.string() + " failed");
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const auto pos = line.find(sep, begin);
    out.push_back(line.substr(begin, pos == std::string_view::npos ? pos : pos - begin));
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return out;
}

nlohmann::json table_rows(const Table& t) {
  auto rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (std::isfinite(r[c])) {
        obj[t.columns[c]] = r[c];
      } else {
        obj[t.columns[c]] = nullptr;
      }
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

Table parse_csv(std::string_view text) {
  Table t;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (t.columns.empty()) {
      for (auto f : fields) t.columns.emplace_back(f);
      continue;
    }
    const auto where = "csv line " + std::to_string(line_no);
    if (fields.size() != t.columns.size()) {
      throw ValidationError(where, "expected " + std::to_string(t.columns.size()) + " fields");
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) {
      const std::string s(f);
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (s.empty() || end != s.c_str() + s.size()) {
        throw ValidationError(where, "not a number: \"" + s + "\"");
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) throw ValidationError("csv", "missing header row");
  return t;
}

std::string to_json(const SweepResult& result) {
  nlohmann::json doc;
  const auto& m = result.metadata;
  doc["metadata"] = {{"scenario", m.scenario},
                     {"kind", m.kind},
                     {"config_hash", m.config_hash},
                     {"version", m.version},
                     {"rows", result.table.rows.size()},
                     {"flagged_rows", m.flagged_rows},
                     {"max_norm_drift", m.max_norm_drift},
                     {"wall_seconds", m.wall_seconds}};
  doc["config"] = nlohmann::json::parse(to_json(result.config));
  doc["columns"] = result.table.columns;
  doc["rows"] = table_rows(result.table);
  if (result.traces) {
    doc["traces"] = {{"columns", result.traces->columns}, {"rows", table_rows(*result.traces)}};
  }
  return doc.dump(2) + "\n";
}

std::vector<std::filesystem::path> emit(const SweepResult& result, const std::filesystem::path& dir,
                                        OutputFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create directory " + dir.string() + ": " + ec.message());
  const auto& stem = result.config.output.empty() ? result.config.name : result.config.output;
  std::vector<std::filesystem::path> written;
  if (format == OutputFormat::json) {
    written.push_back(dir / (stem + ".json"));
    write_file(written.back(), to_json(result));
    return written;
  }
  written.push_back(dir / (stem + ".csv"));
  write_file(written.back(), to_csv(result.table));
  if (result.traces) {
    written.push_back(dir / (stem + "_traces.csv"));
    write_file(written.back(), to_csv(*result.traces));
  }
  return written;
}

}  // namespace qkt
