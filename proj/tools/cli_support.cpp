#include "cli_support.hpp"

#include <cmath>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "tzeta/errors.hpp"

namespace tzeta::cli {

namespace {

const std::string unsigned_float = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string joined_meta(const ScanRecord& r) {
  std::string out;
  for (const auto& [key, value] : r.meta) {
    if (!out.empty()) out += ';';
    out += key + "=" + value;
  }
  return out;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  static const std::regex pattern("([+-]?" + unsigned_float + ")(?:([+-]" + unsigned_float + ")i)?");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw DomainError("cannot parse complex number '" + text + "' (expected e.g. 0.3+2i)");
  }
  const double re = std::stod(m[1].str());
  const double im = m[2].matched ? std::stod(m[2].str()) : 0.0;
  return {re, im};
}

std::vector<int> parse_int_list(const std::string& text) {
  static const std::regex pattern(R"(\d+(,\d+)*)");
  if (!std::regex_match(text, pattern)) {
    throw DomainError("cannot parse integer list '" + text + "' (expected e.g. 32,64,128)");
  }
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const long value = std::stol(item);
    if (value > 1'000'000) throw RangeError("integer " + item + " is too large");
    out.push_back(static_cast<int>(value));
  }
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

RecordWriter::RecordWriter(std::ostream& out, Format format) : out_(out), format_(format) {
  if (format_ == Format::Csv) {
    out_ << "quantity,s_re,s_im,n,value_re,value_im,err_est,meta\n";
  } else {
    out_ << "[";
  }
  out_.flush();
}

RecordWriter::~RecordWriter() {
  if (!finished_) {
    try {
      finish();
    } catch (...) {
    }
  }
}

void RecordWriter::write(const ScanRecord& r) {
  if (format_ == Format::Csv) {
    out_ << csv_field(r.quantity) << ',' << format_double(r.s.real()) << ',' << format_double(r.s.imag()) << ','
         << (r.n ? std::to_string(*r.n) : std::string()) << ',' << format_double(r.value.real()) << ','
         << format_double(r.value.imag()) << ',' << format_double(r.error_estimate) << ',' << csv_field(joined_meta(r))
         << '\n';
  } else {
    nlohmann::ordered_json row;
    row["quantity"] = r.quantity;
    row["s_re"] = r.s.real();
    row["s_im"] = r.s.imag();
    row["n"] = r.n ? nlohmann::ordered_json(*r.n) : nlohmann::ordered_json(nullptr);
    row["value_re"] = r.value.real();
    row["value_im"] = r.value.imag();
    row["err_est"] = r.error_estimate;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : r.meta) meta[key] = value;
    row["meta"] = meta;
    out_ << (rows_ == 0 ? "\n" : ",\n") << row.dump();
  }
  ++rows_;
  out_.flush();
}

void RecordWriter::finish() {
  if (finished_) return;
  finished_ = true;
  if (format_ == Format::Json) out_ << (rows_ == 0 ? "]\n" : "\n]\n");
  out_.flush();
}

}  // namespace tzeta::cli
