#pragma once

// Plain tabular output shared by every command: CSV with 17 significant
// digits and '.' decimals regardless of locale, and JSON that parses back to
// an equal table.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "qks/curie.hpp"
#include "qks/qcg.hpp"
#include "qks/spectrum.hpp"
#include "qks/thermo.hpp"

namespace qks {

enum class ColumnType { integer, real, text };

struct Column {
  std::string name;
  ColumnType type = ColumnType::real;
  bool operator==(const Column&) const = default;
};

// monostate is an empty cell.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::string schema;
  int version = 1;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  // Throws ValidationError if the row does not match the column types.
  void add_row(std::vector<Cell> row);
  bool operator==(const Table&) const = default;
};

// Shortest form is not used: always 17 significant digits; inf, -inf, nan.
std::string format_real(double x);

void write_csv(const Table& table, std::ostream& out);
std::string to_csv(const Table& table);
std::string to_json(const Table& table);
// Throws ValidationError on malformed input.
Table table_from_json(const std::string& text);

Table spectrum_table(const std::vector<SpectrumLine>& lines);
Table dos_table(const DensityOfStates& dos);
Table thermo_table(const std::vector<ThermoPoint>& points);
Table weights_table(const PartitionResult& result);
Table curie_table(const std::vector<CurieEstimate>& estimates);
// One row per (coupled vector, product basis state) with a nonzero amplitude.
Table states_table(const CouplingTransform& transform, const SiteLayout& layout,
                   double threshold = 1e-14);

}  // namespace qks
