#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "tzeta/conjecture_lab.hpp"

namespace tzeta::cli {

/// Exit codes of the command line tool.
enum ExitCode : int { ok = 0, usage_or_domain = 2, convergence = 3, internal = 4 };

/// Parses "0.3+2i", "-1.5e-3-4i" or a plain real "2". No whitespace, no
/// bare imaginary part. Throws DomainError on anything else.
Complex parse_complex(const std::string& text);

/// Comma separated list of positive integers, e.g. "32,64,128".
std::vector<int> parse_int_list(const std::string& text);

enum class Format { Csv, Json };

/// Writes records one at a time and flushes after each, so a long scan can
/// be watched while it runs. CSV columns are fixed:
///   quantity,s_re,s_im,n,value_re,value_im,err_est,meta
/// with numbers printed to 17 significant digits and meta as k=v pairs
/// joined by ';'. JSON output is an array of objects with the same keys.
/// The header (or the opening bracket) is written on construction, so an
/// empty scan still produces a well-formed file.
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, Format format);
  ~RecordWriter();
  RecordWriter(const RecordWriter&) = delete;
  RecordWriter& operator=(const RecordWriter&) = delete;

  void write(const ScanRecord& record);
  void finish();

 private:
  std::ostream& out_;
  Format format_;
  std::size_t rows_ = 0;
  bool finished_ = false;
};

std::string format_double(double x);

}  // namespace tzeta::cli
