#include "qks/table.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace qks {

namespace {

const char* type_name(ColumnType t) {
  switch (t) {
    case ColumnType::integer: return "integer";
    case ColumnType::real: return "real";
    case ColumnType::text: return "text";
  }
  return "text";
}

ColumnType parse_type(const std::string& s) {
  if (s == "integer") return ColumnType::integer;
  if (s == "real") return ColumnType::real;
  if (s == "text") return ColumnType::text;
  throw ValidationError("unknown column type '" + s + "'");
}

bool matches(const Cell& c, ColumnType t) {
  if (std::holds_alternative<std::monostate>(c)) return true;
  switch (t) {
    case ColumnType::integer: return std::holds_alternative<std::int64_t>(c);
    case ColumnType::real: return std::holds_alternative<double>(c);
    case ColumnType::text: return std::holds_alternative<std::string>(c);
  }
  return false;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  if (const auto* s = std::get_if<std::string>(&c)) return csv_escape(*s);
  return "";
}

nlohmann::json cell_json(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_real(*d);
  }
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return nullptr;
}

Cell cell_from_json(const nlohmann::json& v, ColumnType t) {
  if (v.is_null()) return std::monostate{};
  switch (t) {
    case ColumnType::integer:
      if (!v.is_number_integer()) throw ValidationError("expected an integer cell");
      return v.get<std::int64_t>();
    case ColumnType::real:
      if (v.is_number()) return v.get<double>();
      if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
      }
      throw ValidationError("expected a real cell");
    case ColumnType::text:
      if (!v.is_string()) throw ValidationError("expected a text cell");
      return v.get<std::string>();
  }
  return std::monostate{};
}

Cell optional_half(const std::optional<HalfInt>& h) {
  if (!h) return std::monostate{};
  return h->value();
}

std::string big_text(const BigInt& b) { return b.str(); }

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw ValidationError(fmt::format("row has {} cells, table has {} columns", row.size(),
                                      columns.size()));
  }
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (!matches(row[k], columns[k].type)) {
      throw ValidationError("cell type does not match column '" + columns[k].name + "'");
    }
  }
  rows.push_back(std::move(row));
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  return fmt::format("{:.17g}", x);
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    out << (k ? "," : "") << csv_escape(table.columns[k].name);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << cell_text(row[k]);
    out << '\n';
  }
}

std::string to_csv(const Table& table) {
  std::ostringstream s;
  write_csv(table, s);
  return s.str();
}

std::string to_json(const Table& table) {
  nlohmann::json j;
  j["schema"] = table.schema;
  j["version"] = table.version;
  j["columns"] = nlohmann::json::array();
  for (const auto& c : table.columns) {
    j["columns"].push_back({{"name", c.name}, {"type", type_name(c.type)}});
  }
  j["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    j["rows"].push_back(std::move(r));
  }
  return j.dump(1) + "\n";
}

Table table_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Table t;
    t.schema = j.at("schema").get<std::string>();
    t.version = j.at("version").get<int>();
    for (const auto& c : j.at("columns")) {
      t.columns.push_back({c.at("name").get<std::string>(), parse_type(c.at("type"))});
    }
    for (const auto& r : j.at("rows")) {
      if (r.size() != t.columns.size()) throw ValidationError("row width mismatch");
      std::vector<Cell> row;
      for (std::size_t k = 0; k < r.size(); ++k) row.push_back(cell_from_json(r[k], t.columns[k].type));
      t.add_row(std::move(row));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed table JSON: ") + e.what());
  }
}

Table spectrum_table(const std::vector<SpectrumLine>& lines) {
  const bool exact = std::all_of(lines.begin(), lines.end(),
                                 [](const SpectrumLine& l) { return l.multiplicity.has_value(); });
  Table t;
  t.schema = "qks.spectrum";
  t.columns = {{"J", ColumnType::real},
               {"p", ColumnType::integer},
               {exact ? "multiplicity" : "log10_multiplicity",
                exact ? ColumnType::text : ColumnType::real},
               {"m", ColumnType::real},
               {"E", ColumnType::real},
               {"E_corr", ColumnType::real}};
  for (const auto& l : lines) {
    Cell d = exact ? Cell(big_text(*l.multiplicity)) : Cell(l.log_multiplicity / std::log(10.0));
    t.add_row({l.J.value(), l.p, d, optional_half(l.m), l.E, l.E_corr});
  }
  return t;
}

Table dos_table(const DensityOfStates& dos) {
  Table t;
  t.schema = "qks.dos";
  t.columns = {{"bin_lower", ColumnType::real}, {"bin_upper", ColumnType::real},
               {"bin_center", ColumnType::real}, {"weight", ColumnType::text},
               {"log10_weight", ColumnType::real}};
  for (std::size_t k = 0; k < dos.center.size(); ++k) {
    Cell w = dos.weight[k] ? Cell(big_text(*dos.weight[k])) : Cell(std::monostate{});
    t.add_row({dos.lower[k], dos.upper[k], dos.center[k], w, dos.log10_weight[k]});
  }
  return t;
}

Table thermo_table(const std::vector<ThermoPoint>& points) {
  Table t;
  t.schema = "qks.thermo";
  t.columns = {{"T", ColumnType::real},   {"log_Z", ColumnType::real}, {"F", ColumnType::real},
               {"C_V", ColumnType::real}, {"chi", ColumnType::real},   {"M", ColumnType::real}};
  for (const auto& p : points) t.add_row({p.T, p.log_Z, p.F, p.C_V, p.chi, p.M});
  return t;
}

Table weights_table(const PartitionResult& result) {
  Table t;
  t.schema = "qks.weights";
  t.columns = {{"T", ColumnType::real},      {"p", ColumnType::integer},
               {"J", ColumnType::real},      {"E_p", ColumnType::real},
               {"E_corr", ColumnType::real}, {"log_z", ColumnType::real},
               {"weight", ColumnType::real}};
  for (const auto& w : result.weights) {
    t.add_row({result.T, w.p, w.J.value(), w.E, w.E_corr, w.log_z, w.weight});
  }
  return t;
}

Table curie_table(const std::vector<CurieEstimate>& estimates) {
  Table t;
  t.schema = "qks.curie";
  t.columns = {{"eta", ColumnType::real},        {"N", ColumnType::integer},
               {"method", ColumnType::text},     {"T_C", ColumnType::real},
               {"regime", ColumnType::text},     {"bracket_lo", ColumnType::real},
               {"bracket_hi", ColumnType::real}, {"iterations", ColumnType::integer},
               {"residual", ColumnType::real}};
  for (const auto& e : estimates) {
    t.add_row({e.eta, e.N, to_string(e.method), e.T_C, to_string(e.regime),
               e.diagnostics.bracket_lo, e.diagnostics.bracket_hi,
               static_cast<std::int64_t>(e.diagnostics.iterations), e.diagnostics.residual});
  }
  return t;
}

Table states_table(const CouplingTransform& transform, const SiteLayout& layout,
                   double threshold) {
  Table t;
  t.schema = "qks.states";
  t.columns = {{"J", ColumnType::real},        {"copy", ColumnType::integer},
               {"m", ColumnType::real},        {"path", ColumnType::text},
               {"basis", ColumnType::text},    {"amplitude", ColumnType::real}};
  const auto& spins = layout.spins();
  for (std::size_t c = 0; c < transform.labels.size(); ++c) {
    const auto& lab = transform.labels[c];
    std::string path;
    for (std::size_t k = 0; k < lab.path.size(); ++k) path += (k ? " " : "") + lab.path[k].to_string();
    for (Eigen::Index r = 0; r < transform.matrix.rows(); ++r) {
      const double amp = transform.matrix(r, static_cast<Eigen::Index>(c)).real();
      if (std::abs(amp) <= threshold) continue;
      // Product state label: site projections, site 1 first.
      std::string basis;
      auto rest = static_cast<std::int64_t>(r);
      std::vector<std::string> ms(spins.size());
      for (std::size_t s = spins.size(); s-- > 0;) {
        const std::int64_t dim = spins[s].twice() + 1;
        const std::int64_t k = rest % dim;
        rest /= dim;
        ms[s] = (spins[s] - HalfInt(static_cast<int>(k))).to_string();
      }
      for (std::size_t s = 0; s < ms.size(); ++s) basis += (s ? " " : "") + ms[s];
      t.add_row({lab.J.value(), static_cast<std::int64_t>(lab.copy), lab.m.value(), path, basis, amp});
    }
  }
  return t;
}

}  // namespace qks
