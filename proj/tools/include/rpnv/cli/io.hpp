#pragma once

#include <json.hpp>

#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

namespace rpnv::cli {

struct Provenance {
  std::string experiment;
  std::string config_hash;
  std::string version;
};

/// Column-oriented CSV table; cells are formatted on insertion.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  class Row {
   public:
    Row& operator<<(double v);
    Row& operator<<(const std::string& v);
    Row& operator<<(const char* v) { return *this << std::string(v); }
    Row& operator<<(int v) { return *this << static_cast<double>(v); }
    Row& operator<<(std::size_t v);

   private:
    friend class CsvTable;
    explicit Row(std::vector<std::string>& cells) : cells_(cells) {}
    std::vector<std::string>& cells_;
  };

  /// Appends an empty row and returns a streaming handle to fill it.
  Row row();

  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

  /// Throws std::logic_error when a row has the wrong number of cells.
  void check() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// "%.10g" in the C locale; nan and inf spelled out.
std::string format_number(double v);

/// RFC 4180 quoting when the cell holds a comma, quote or newline.
std::string csv_escape(const std::string& cell);

/// First line: "# rpnvsim <version> experiment=<name> config_hash=<hash>",
/// then the header row and the data rows, '\n' line endings.
std::string render_csv(const Provenance& p, const CsvTable& table);
void write_csv(const std::filesystem::path& path, const Provenance& p, const CsvTable& table);

/// Pretty-printed with sorted keys and a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace rpnv::cli
