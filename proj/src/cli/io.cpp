#include "compknn/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "compknn/error.hpp"

namespace compknn {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

double require_double(std::string_view s, std::string_view what) {
  const auto v = to_double(s);
  if (!v) {
    throw Error(ErrorKind::Parse, "cannot read '" + std::string(s) + "' as a number in " +
                                      std::string(what));
  }
  return *v;
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = record.size() == 1 && record[0].empty();
    if (!blank) records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field_started && field.empty()) {
          quoted = true;
          field_started = true;
        } else {
          field.push_back(c);
        }
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (quoted) throw Error(ErrorKind::Parse, "unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

IngestedData ingest_csv(const std::filesystem::path& path, const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ingest_csv_text(buffer.str(), options);
}

IngestedData ingest_csv_text(std::string_view text, const IngestOptions& options) {
  const auto records = parse_csv(text);
  if (records.empty()) throw Error(ErrorKind::Parse, "missing header row");
  const auto& header = records.front();
  if (header.size() < 3) {
    throw Error(ErrorKind::Parse, "need a label column and at least two parts");
  }

  std::size_t label_col = header.size() - 1;
  if (options.label_column) {
    const auto it = std::find(header.begin(), header.end(), *options.label_column);
    if (it == header.end()) {
      throw Error(ErrorKind::InvalidArgument,
                  "label column '" + *options.label_column + "' not in header");
    }
    label_col = static_cast<std::size_t>(it - header.begin());
  }

  std::vector<std::size_t> part_cols;
  std::vector<std::string> part_names;
  std::vector<std::string> excluded;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == label_col) continue;
    const bool drop = std::any_of(options.exclude.begin(), options.exclude.end(),
                                  [&](const std::string& e) { return lower(e) == lower(header[c]); });
    if (drop) {
      excluded.push_back(header[c]);
    } else {
      part_cols.push_back(c);
      part_names.push_back(header[c]);
    }
  }
  if (part_cols.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "fewer than two part columns remain");
  }

  std::vector<Composition> rows;
  std::vector<ClassIndex> labels;
  std::vector<std::string> classes;
  std::map<std::string, ClassIndex> class_index;
  std::size_t closed = 0;
  std::vector<double> parts(part_cols.size());
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::string where = "data row " + std::to_string(r);
    if (rec.size() != header.size()) {
      throw Error(ErrorKind::Parse, where + " has " + std::to_string(rec.size()) +
                                        " fields, header has " + std::to_string(header.size()));
    }
    for (std::size_t p = 0; p < part_cols.size(); ++p) {
      const std::string cell = where + ", column '" + header[part_cols[p]] + "'";
      parts[p] = require_double(rec[part_cols[p]], cell);
      if (parts[p] < 0.0) {
        throw Error(ErrorKind::NegativeComponent,
                    cell + " is negative (" + rec[part_cols[p]] + ")");
      }
    }
    if (std::all_of(parts.begin(), parts.end(), [](double v) { return v == 0.0; })) {
      throw Error(ErrorKind::DegenerateInput, where + " has all parts zero");
    }
    if (std::abs(compensated_sum(parts) - 1.0) > kClosureTolerance) ++closed;
    rows.emplace_back(std::span<const double>(parts));

    const std::string name(trim(rec[label_col]));
    if (name.empty()) throw Error(ErrorKind::Parse, where + " has an empty label");
    auto [it, inserted] = class_index.emplace(name, classes.size());
    if (inserted) classes.push_back(name);
    labels.push_back(it->second);
  }
  if (rows.empty()) throw Error(ErrorKind::Parse, "no data rows");

  IngestedData out{LabeledDataset(std::move(rows), std::move(labels), std::move(classes)),
                   std::move(part_names), header[label_col], std::move(excluded), closed};
  out.data.require_populated_classes();
  return out;
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_dataset_csv(std::ostream& out, const LabeledDataset& data,
                       const std::vector<std::string>& part_names,
                       const std::string& label_column) {
  if (part_names.size() != data.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "part name count does not match D");
  }
  for (const auto& name : part_names) out << csv_field(name) << ',';
  out << csv_field(label_column) << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.rows()[i].parts()) out << v << ',';
    out << csv_field(data.classes()[data.labels()[i]]) << '\n';
  }
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    out.push_back(require_double(text.substr(start, comma - start), "list '" + std::string(text) + "'"));
    start = comma + 1;
  }
  return out;
}

std::vector<double> parse_real_grid(std::string_view text) {
  text = trim(text);
  if (text.find(':') == std::string_view::npos) return parse_real_list(text);

  std::vector<double> bounds;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t colon = std::min(text.find(':', start), text.size());
    bounds.push_back(require_double(text.substr(start, colon - start), "grid '" + std::string(text) + "'"));
    start = colon + 1;
  }
  if (bounds.size() < 2 || bounds.size() > 3) {
    throw Error(ErrorKind::Parse, "grid '" + std::string(text) + "' is not start:end[:step]");
  }
  const double first = bounds[0];
  const double last = bounds[1];
  const double step = bounds.size() == 3 ? bounds[2] : 1.0;
  if (!(step > 0.0) || last < first) {
    throw Error(ErrorKind::Parse, "grid '" + std::string(text) + "' needs start <= end and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((last - first) / step + 1e-12)) + 1;
  if (count > 1000000) throw Error(ErrorKind::Parse, "grid is too large");
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    // Snap to 12 decimals so that -1:1:0.1 yields -0.7 rather than
    // -0.69999999999999996.
    const double v = first + static_cast<double>(i) * step;
    out.push_back(std::round(v * 1e12) / 1e12);
  }
  return out;
}

std::vector<std::size_t> parse_count_grid(std::string_view text) {
  std::vector<std::size_t> out;
  for (double v : parse_real_grid(text)) {
    if (v < 1.0 || v != std::floor(v)) {
      throw Error(ErrorKind::Parse, "'" + std::string(text) + "' must list positive integers");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

}  // namespace compknn
