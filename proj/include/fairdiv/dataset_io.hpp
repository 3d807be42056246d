#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

// One ingested row: id, vector, and exactly one of an explicit color or a
// timestamp (whole files must stay in a single mode).
struct RawRecord {
  PointId id = 0;
  std::vector<double> vec;
  std::optional<int> color;
  std::optional<double> t;
};

enum class FileFormat { jsonl, csv };

FileFormat parse_format(const std::string& name);
// "auto" detection by extension: .csv is CSV, everything else JSONL.
FileFormat format_for_path(const std::string& path, const std::string& format_name);

// Parse errors carry "<source>:<line>: <reason>".
std::vector<RawRecord> parse_records(std::istream& in, FileFormat format,
                                     const std::string& source);
std::vector<RawRecord> read_records(const std::string& path, FileFormat format);

// Records with explicit colors; m is inferred as max color + 1.
ColoredDataset dataset_from_records(const std::vector<RawRecord>& records, MetricKind metric);

// Buckets timestamps into m equal-width color bins over [t_min, t_max]; the
// top edge t = t_max clamps into bin m-1. All-equal timestamps are an error.
ColoredDataset assign_colors_by_time(const std::vector<RawRecord>& records, int m,
                                     MetricKind metric);

void write_records_jsonl(std::ostream& out, std::span<const RawRecord> records);
void write_points_jsonl(std::ostream& out, std::span<const Point> points);
void write_points_jsonl(const std::string& path, std::span<const Point> points);

}  // namespace fairdiv
