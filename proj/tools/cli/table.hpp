#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace casimir::cli {

/// Empty cells are written as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, double, long, bool, std::string>;

struct Column {
  std::string name; ///< header, including the unit suffix
  std::string unit; ///< empty for dimensionless or non-numeric columns
};

/// Rows of typed cells written identically as CSV or JSON. Doubles are
/// rounded once to 9 significant digits and both writers emit that value.
class Table {
public:
  explicit Table(std::string command) : command_(std::move(command)) {}

  void add_column(std::string name, std::string unit = {});
  void add_row(std::vector<Cell> row);

  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  void write_csv(std::ostream& out) const;
  nlohmann::ordered_json to_json() const;
  void write_json(std::ostream& out) const;

private:
  std::string command_;
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// Scientific notation, 9 significant digits.
std::string format_number(double x);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view text);

} // namespace casimir::cli
