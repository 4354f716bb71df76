#include "payload.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <unistd.h>

#include "json.hpp"

namespace rsp_cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// comment lines must stay on one line
std::string comment_value(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

}  // namespace

Table& Payload::table(const std::string& name, std::vector<std::string> columns) {
  tables.push_back(Table{name, std::move(columns), {}});
  return tables.back();
}

void write_json(std::ostream& os, const Payload& p) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = p.command;
  ordered_json inputs = ordered_json::object();
  for (const auto& [k, v] : p.inputs) inputs[k] = v;
  doc["inputs"] = inputs;
  ordered_json results = ordered_json::object();
  for (const Table& t : p.tables) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.rows) {
      ordered_json obj = ordered_json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row.at(i);
      rows.push_back(obj);
    }
    results[t.name] = rows;
  }
  doc["results"] = results;
  ordered_json prov;
  prov["tool"] = "rsp";
  prov["version"] = p.version;
  prov["seed"] = p.seed ? ordered_json(*p.seed) : ordered_json(nullptr);
  prov["precision_bits"] = p.precision_bits;
  prov["tol"] = p.tol;
  prov["digits"] = p.digits;
  doc["provenance"] = prov;
  os << doc.dump(2) << '\n';
}

void write_csv(std::ostream& os, const Payload& p) {
  os << "# schema_version=" << kSchemaVersion << '\n';
  os << "# command=" << p.command << '\n';
  for (const auto& [k, v] : p.inputs) os << "# input." << k << '=' << comment_value(v) << '\n';
  os << "# provenance.tool=rsp\n";
  os << "# provenance.version=" << p.version << '\n';
  os << "# provenance.seed=" << (p.seed ? *p.seed : "") << '\n';
  os << "# provenance.precision_bits=" << p.precision_bits << '\n';
  os << "# provenance.tol=" << p.tol << '\n';
  os << "# provenance.digits=" << p.digits << '\n';
  for (const Table& t : p.tables) {
    os << "# table=" << t.name << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      os << (i ? "," : "") << csv_field(t.columns[i]);
    }
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
      os << '\n';
    }
  }
}

void write_file_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) {
      f.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move output into " + path);
  }
}

}  // namespace rsp_cli
