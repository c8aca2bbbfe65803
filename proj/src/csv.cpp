#include "comptest/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace comptest {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (const char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

bool parse_double(const std::string& cell, double& out) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) {
    ++begin;
  }
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t')) {
    --end;
  }
  if (begin == end) {
    return false;
  }
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return "";
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

RawCsv parse_raw_csv(std::istream& in, const std::string& source) {
  RawCsv raw;
  raw.source = source;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      raw.header = split_line(line);
      continue;
    }
    if (trim(line).empty()) {
      continue;
    }
    std::vector<std::string> cells = split_line(line);
    if (cells.size() != raw.header.size()) {
      std::ostringstream msg;
      msg << source << ": ragged row at line " << line_no << " ("
          << cells.size() << " cells, header has " << raw.header.size()
          << ")";
      throw DataError(msg.str());
    }
    raw.rows.push_back(std::move(cells));
  }
  if (raw.header.empty() || raw.rows.empty()) {
    throw DataError(source + ": empty table");
  }
  return raw;
}

RawCsv read_raw_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open " + path);
  }
  return parse_raw_csv(in, path);
}

namespace {

// The first column holds sample ids when its header is empty or any cell in
// it is non-numeric.
bool first_column_is_ids(const RawCsv& raw) {
  if (trim(raw.header.front()).empty()) {
    return true;
  }
  double ignored;
  for (const auto& row : raw.rows) {
    if (!parse_double(row.front(), ignored)) {
      return true;
    }
  }
  return false;
}

ParsedCounts counts_from_cells(const RawCsv& raw,
                               const std::string& label_column) {
  const bool has_ids = first_column_is_ids(raw);
  const std::size_t first_data_col = has_ids ? 1 : 0;

  std::size_t label_idx = std::string::npos;
  if (!label_column.empty()) {
    for (std::size_t j = first_data_col; j < raw.header.size(); ++j) {
      if (trim(raw.header[j]) == label_column) {
        label_idx = j;
        break;
      }
    }
    if (label_idx == std::string::npos) {
      throw DataError(raw.source + ": label column '" + label_column +
                      "' not found");
    }
  }

  ParsedCounts parsed;
  std::vector<std::size_t> data_cols;
  for (std::size_t j = first_data_col; j < raw.header.size(); ++j) {
    if (j == label_idx) {
      continue;
    }
    data_cols.push_back(j);
    parsed.counts.col_ids.push_back(trim(raw.header[j]));
  }
  if (data_cols.size() < 2) {
    throw DataError(raw.source + ": needs at least two numeric columns");
  }

  const auto n = static_cast<Eigen::Index>(raw.rows.size());
  const auto p = static_cast<Eigen::Index>(data_cols.size());
  parsed.counts.values.resize(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = raw.rows[static_cast<std::size_t>(i)];
    if (has_ids) {
      parsed.counts.row_ids.push_back(trim(row.front()));
    }
    if (label_idx != std::string::npos) {
      parsed.labels.push_back(trim(row[label_idx]));
    }
    for (Eigen::Index j = 0; j < p; ++j) {
      const std::string& cell = row[data_cols[static_cast<std::size_t>(j)]];
      double value;
      if (!parse_double(cell, value)) {
        std::ostringstream msg;
        msg << raw.source << ": non-numeric cell '" << cell << "' at data row "
            << (i + 1) << ", column '"
            << parsed.counts.col_ids[static_cast<std::size_t>(j)] << "'";
        throw DataError(msg.str());
      }
      parsed.counts.values(i, j) = value;
    }
  }
  return parsed;
}

RawCsv transpose_raw(const RawCsv& raw) {
  // Original layout: rows are taxa, columns are samples; the first column
  // carries taxon names and the header carries sample ids.
  RawCsv out;
  out.source = raw.source;
  out.header.push_back(raw.header.empty() ? "" : raw.header.front());
  for (const auto& row : raw.rows) {
    out.header.push_back(row.front());
  }
  for (std::size_t j = 1; j < raw.header.size(); ++j) {
    std::vector<std::string> new_row;
    new_row.push_back(raw.header[j]);
    for (const auto& row : raw.rows) {
      new_row.push_back(row[j]);
    }
    out.rows.push_back(std::move(new_row));
  }
  if (out.rows.empty()) {
    throw DataError(raw.source + ": nothing to transpose");
  }
  return out;
}

}  // namespace

ParsedCounts counts_from_raw(const RawCsv& raw, const CountsLayout& layout) {
  if (layout.transpose && !layout.label_column.empty()) {
    throw UsageError("--label-column is not supported with --transpose");
  }
  ParsedCounts parsed = layout.transpose
                            ? counts_from_cells(transpose_raw(raw), "")
                            : counts_from_cells(raw, layout.label_column);
  validate_counts(parsed.counts);
  return parsed;
}

ParsedCounts read_counts_csv(const std::string& path,
                             const CountsLayout& layout) {
  const RawCsv raw = read_raw_csv(path);
  return counts_from_raw(raw, layout);
}

void write_counts_csv(std::ostream& out, const CountMatrix& m) {
  const bool has_ids =
      static_cast<Eigen::Index>(m.row_ids.size()) == m.values.rows();
  if (has_ids) {
    out << "id";
  }
  for (Eigen::Index j = 0; j < m.values.cols(); ++j) {
    if (j > 0 || has_ids) {
      out << ',';
    }
    if (static_cast<Eigen::Index>(m.col_ids.size()) == m.values.cols()) {
      out << m.col_ids[static_cast<std::size_t>(j)];
    } else {
      out << "col" << j;
    }
  }
  out << '\n';

  char buf[64];
  for (Eigen::Index i = 0; i < m.values.rows(); ++i) {
    if (has_ids) {
      out << m.row_ids[static_cast<std::size_t>(i)];
    }
    for (Eigen::Index j = 0; j < m.values.cols(); ++j) {
      if (j > 0 || has_ids) {
        out << ',';
      }
      std::snprintf(buf, sizeof(buf), "%.17g", m.values(i, j));
      out << buf;
    }
    out << '\n';
  }
}

void write_counts_csv_file(const std::string& path, const CountMatrix& m) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write " + path);
  }
  write_counts_csv(out, m);
}

LabelSplit split_by_label(const CountMatrix& m,
                          const std::vector<std::string>& labels) {
  if (static_cast<Eigen::Index>(labels.size()) != m.values.rows()) {
    throw DataError("label count does not match the number of samples");
  }
  std::map<std::string, std::vector<Eigen::Index>> groups;
  for (Eigen::Index i = 0; i < m.values.rows(); ++i) {
    groups[labels[static_cast<std::size_t>(i)]].push_back(i);
  }
  if (groups.size() != 2) {
    std::ostringstream msg;
    msg << "label column must have exactly two distinct values, found "
        << groups.size();
    throw DataError(msg.str());
  }

  auto take = [&](const std::vector<Eigen::Index>& rows) {
    CountMatrix sub;
    sub.col_ids = m.col_ids;
    sub.values.resize(static_cast<Eigen::Index>(rows.size()),
                      m.values.cols());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      sub.values.row(static_cast<Eigen::Index>(k)) = m.values.row(rows[k]);
      if (!m.row_ids.empty()) {
        sub.row_ids.push_back(m.row_ids[static_cast<std::size_t>(rows[k])]);
      }
    }
    return sub;
  };

  LabelSplit split;
  auto it = groups.begin();
  split.label1 = it->first;
  split.group1 = take(it->second);
  ++it;
  split.label2 = it->first;
  split.group2 = take(it->second);
  return split;
}

}  // namespace comptest
