#include "cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace casimir::cli {

namespace {

std::string cell_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return {};
        else if constexpr (std::is_same_v<T, double>)
          return format_number(v);
        else if constexpr (std::is_same_v<T, long>)
          return std::to_string(v);
        else if constexpr (std::is_same_v<T, bool>)
          return v ? "true" : "false";
        else
          return v;
      },
      cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>)
          return nullptr;
        else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v))
            return nullptr;
          // The same rounded value the CSV writer prints.
          return std::stod(format_number(v));
        } else
          return v;
      },
      cell);
}

} // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", x);
  return buf;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos)
    return std::string(text);
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"')
      quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void Table::add_column(std::string name, std::string unit) {
  columns_.push_back({std::move(name), std::move(unit)});
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw std::logic_error("table row width does not match the header");
  rows_.push_back(std::move(row));
}

void Table::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    out << (i ? "," : "") << csv_field(columns_[i].name);
  out << "\r\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << csv_field(cell_text(row[i]));
    out << "\r\n";
  }
}

nlohmann::ordered_json Table::to_json() const {
  nlohmann::ordered_json doc;
  doc["command"] = command_;
  auto& cols = doc["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : columns_)
    cols.push_back({{"name", c.name}, {"unit", c.unit}});
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      obj[columns_[i].name] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  return doc;
}

void Table::write_json(std::ostream& out) const { out << to_json().dump(2) << '\n'; }

} // namespace casimir::cli
