// csv.hpp
// Strict CSV ingestion for count tables: UTF-8, comma-separated, '.'
// decimal point. Rows are samples and columns are taxa; a transposed layout
// is accepted behind a flag. The first column is treated as sample ids when
// its header is empty or any of its cells is non-numeric.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "comptest/compositional.hpp"

namespace comptest {

struct RawCsv {
  std::string source;  // file name, for error messages
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Throws DataError on ragged rows or an empty table.
RawCsv read_raw_csv(const std::string& path);
RawCsv parse_raw_csv(std::istream& in, const std::string& source);

struct CountsLayout {
  bool transpose = false;       // file has taxa as rows, samples as columns
  std::string label_column;     // extracted as group labels when nonempty
};

struct ParsedCounts {
  CountMatrix counts;
  std::vector<std::string> labels;  // parallel to counts rows; may be empty
};

// Converts raw cells into a validated count matrix. Non-numeric cells and
// missing label columns raise DataError with the offending location.
ParsedCounts counts_from_raw(const RawCsv& raw, const CountsLayout& layout);

ParsedCounts read_counts_csv(const std::string& path,
                             const CountsLayout& layout = {});

// Writes values with 17 significant digits so a round trip is exact.
void write_counts_csv(std::ostream& out, const CountMatrix& m);
void write_counts_csv_file(const std::string& path, const CountMatrix& m);

// Splits rows into two groups by the distinct values of labels; requires
// exactly two distinct labels. Groups are ordered by label, ascending.
struct LabelSplit {
  CountMatrix group1;
  CountMatrix group2;
  std::string label1;
  std::string label2;
};

LabelSplit split_by_label(const CountMatrix& m,
                          const std::vector<std::string>& labels);

}  // namespace comptest
