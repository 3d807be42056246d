#include "fairdiv/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fairdiv {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail_at(const std::string& source, std::size_t line, const std::string& why) {
  throw InputError(source + ":" + std::to_string(line) + ": " + why);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& text, const std::string& source, std::size_t line,
                    const std::string& what) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    fail_at(source, line, "cannot parse " + what + " from '" + text + "'");
  }
  return value;
}

PointId parse_id(const std::string& text, const std::string& source, std::size_t line) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  PointId value = 0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    fail_at(source, line, "cannot parse id from '" + text + "'");
  }
  return value;
}

RawRecord record_from_json(const ordered_json& row, const std::string& source,
                           std::size_t line) {
  if (!row.is_object()) fail_at(source, line, "record is not a JSON object");
  RawRecord rec;
  if (!row.contains("id") || !row["id"].is_number_integer()) {
    fail_at(source, line, "record needs an integer 'id'");
  }
  rec.id = row["id"].get<PointId>();
  if (!row.contains("vec") || !row["vec"].is_array() || row["vec"].empty()) {
    fail_at(source, line, "record needs a non-empty numeric 'vec'");
  }
  for (const auto& coord : row["vec"]) {
    if (!coord.is_number()) fail_at(source, line, "'vec' holds a non-number");
    rec.vec.push_back(coord.get<double>());
  }
  const bool has_color = row.contains("color");
  const bool has_t = row.contains("t");
  if (has_color == has_t) fail_at(source, line, "record needs exactly one of 'color' or 't'");
  if (has_color) {
    if (!row["color"].is_number_integer() || row["color"].get<long long>() < 0) {
      fail_at(source, line, "'color' must be a non-negative integer");
    }
    rec.color = row["color"].get<int>();
  } else {
    if (!row["t"].is_number()) fail_at(source, line, "'t' must be a number");
    rec.t = row["t"].get<double>();
  }
  return rec;
}

void check_consistency(std::vector<RawRecord>& records, const RawRecord& rec,
                       const std::string& source, std::size_t line) {
  if (!records.empty()) {
    if (records.front().vec.size() != rec.vec.size()) {
      fail_at(source, line,
              "dimension " + std::to_string(rec.vec.size()) + " differs from " +
                  std::to_string(records.front().vec.size()));
    }
    if (records.front().color.has_value() != rec.color.has_value()) {
      fail_at(source, line, "file mixes 'color' and 't' records");
    }
  }
  records.push_back(rec);
}

std::vector<RawRecord> parse_jsonl(std::istream& in, const std::string& source) {
  std::vector<RawRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    line_no++;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ordered_json row;
    try {
      row = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      fail_at(source, line_no, e.what());
    }
    check_consistency(records, record_from_json(row, source, line_no), source, line_no);
  }
  return records;
}

std::vector<RawRecord> parse_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw InputError(source + ":1: missing CSV header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line);
  if (header.empty() || header[0] != "id") {
    throw InputError(source + ":1: CSV header must start with 'id'");
  }
  std::size_t vec_start = 1;
  bool has_color = false, has_t = false;
  if (header.size() > 1 && header[1] == "color") {
    has_color = true;
    vec_start = 2;
  } else if (header.size() > 1 && header[1] == "t") {
    has_t = true;
    vec_start = 2;
  }
  if (header.size() <= vec_start) throw InputError(source + ":1: CSV header has no vector columns");
  for (std::size_t c = vec_start; c < header.size(); ++c) {
    if (header[c] != "v" + std::to_string(c - vec_start)) {
      throw InputError(source + ":1: expected column 'v" + std::to_string(c - vec_start) +
                       "', found '" + header[c] + "'");
    }
  }
  if (!has_color && !has_t) {
    throw InputError(source + ":1: CSV header needs a 'color' or 't' column");
  }

  std::vector<RawRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    line_no++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      fail_at(source, line_no,
              "row has " + std::to_string(cells.size()) + " cells, header has " +
                  std::to_string(header.size()));
    }
    RawRecord rec;
    rec.id = parse_id(cells[0], source, line_no);
    if (has_color) {
      const double c = parse_number(cells[1], source, line_no, "color");
      if (c < 0 || c != std::floor(c)) fail_at(source, line_no, "color must be a non-negative integer");
      rec.color = static_cast<int>(c);
    } else {
      rec.t = parse_number(cells[1], source, line_no, "t");
    }
    for (std::size_t c = vec_start; c < cells.size(); ++c) {
      rec.vec.push_back(parse_number(cells[c], source, line_no, header[c]));
    }
    check_consistency(records, rec, source, line_no);
  }
  return records;
}

}  // namespace

FileFormat parse_format(const std::string& name) {
  if (name == "jsonl") return FileFormat::jsonl;
  if (name == "csv") return FileFormat::csv;
  throw InputError("unknown format '" + name + "' (expected jsonl|csv)");
}

FileFormat format_for_path(const std::string& path, const std::string& format_name) {
  if (format_name != "auto") return parse_format(format_name);
  const auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".csv") return FileFormat::csv;
  return FileFormat::jsonl;
}

std::vector<RawRecord> parse_records(std::istream& in, FileFormat format,
                                     const std::string& source) {
  return format == FileFormat::jsonl ? parse_jsonl(in, source) : parse_csv(in, source);
}

std::vector<RawRecord> read_records(const std::string& path, FileFormat format) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_records(in, format, path);
}

ColoredDataset dataset_from_records(const std::vector<RawRecord>& records, MetricKind metric) {
  if (records.empty()) throw InputError("no records to build a dataset from");
  int m = 0;
  std::vector<Point> points;
  points.reserve(records.size());
  for (const RawRecord& rec : records) {
    if (!rec.color.has_value()) {
      throw InputError("records carry timestamps, not colors; bucket them by time first");
    }
    m = std::max(m, *rec.color + 1);
    points.push_back(Point{rec.id, rec.vec, *rec.color});
  }
  return ColoredDataset(std::move(points), m, records.front().vec.size(), metric);
}

ColoredDataset assign_colors_by_time(const std::vector<RawRecord>& records, int m,
                                     MetricKind metric) {
  if (records.empty()) throw InputError("no records to build a dataset from");
  if (m < 1) throw InputError("need at least one color bin");
  double t_min = 0.0, t_max = 0.0;
  bool first = true;
  for (const RawRecord& rec : records) {
    if (!rec.t.has_value()) throw InputError("records carry colors, not timestamps");
    t_min = first ? *rec.t : std::min(t_min, *rec.t);
    t_max = first ? *rec.t : std::max(t_max, *rec.t);
    first = false;
  }
  if (t_min == t_max) throw InputError("all timestamps are equal; cannot bucket by time");

  std::vector<Point> points;
  points.reserve(records.size());
  for (const RawRecord& rec : records) {
    const double scaled =
        static_cast<double>(m) * (*rec.t - t_min) / (t_max - t_min);
    int color = static_cast<int>(std::floor(scaled));
    if (color >= m) color = m - 1;  // the closed top edge folds into the last bin
    points.push_back(Point{rec.id, rec.vec, color});
  }
  return ColoredDataset(std::move(points), m, records.front().vec.size(), metric);
}

void write_records_jsonl(std::ostream& out, std::span<const RawRecord> records) {
  for (const RawRecord& rec : records) {
    ordered_json row;
    row["id"] = rec.id;
    row["vec"] = rec.vec;
    if (rec.color.has_value()) row["color"] = *rec.color;
    if (rec.t.has_value()) row["t"] = *rec.t;
    out << row.dump() << '\n';
  }
}

void write_points_jsonl(std::ostream& out, std::span<const Point> points) {
  for (const Point& p : points) {
    ordered_json row;
    row["id"] = p.id;
    row["vec"] = p.vec;
    row["color"] = p.color;
    out << row.dump() << '\n';
  }
}

void write_points_jsonl(const std::string& path, std::span<const Point> points) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  write_points_jsonl(out, points);
}

}  // namespace fairdiv
