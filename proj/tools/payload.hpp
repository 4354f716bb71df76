#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace rsp_cli {

inline constexpr const char* kSchemaVersion = "1";

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

// Everything a run emits. Numbers are already decimal strings here.
struct Payload {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<Table> tables;
  std::string version;
  std::optional<std::string> seed;
  std::string precision_bits;
  std::string tol;
  std::string digits;

  Table& table(const std::string& name, std::vector<std::string> columns);
};

void write_json(std::ostream& os, const Payload& p);
void write_csv(std::ostream& os, const Payload& p);

// Writes through a sibling temporary file and renames it into place.
void write_file_atomically(const std::string& path, const std::string& content);

}  // namespace rsp_cli
