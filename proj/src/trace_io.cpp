#include "rhb/trace_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "rhb/errors.hpp"

namespace rhb {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace) {
    out << r.K << ',' << r.k << ',' << r.oracle_calls << ',' << format_real(r.f_x) << ','
        << format_real(r.grad_norm_x) << ',' << format_real(r.grad_norm_xbar) << ','
        << format_real(r.f_xbar) << ',' << format_real(r.v_norm) << ',' << format_real(r.s_sum) << ','
        << format_real(r.h) << ',' << format_real(r.ell) << ',' << format_real(r.best_value) << ','
        << to_string(r.event) << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot open " + path.string() + " for writing");
  write_trace_csv(out, trace);
  if (!out) throw FileError("write failed: " + path.string());
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_field(std::string_view s, std::size_t line_no) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw MalformedTrace("bad field '" + std::string(s) + "' on line " + std::to_string(line_no));
  return v;
}

}  // namespace

RunTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw MalformedTrace("missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) throw MalformedTrace("unexpected header: " + line);

  RunTrace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 13)
      throw MalformedTrace("expected 13 columns on line " + std::to_string(line_no));
    IterationRecord r;
    r.K = parse_field<std::int64_t>(f[0], line_no);
    r.k = parse_field<std::int64_t>(f[1], line_no);
    r.oracle_calls = parse_field<std::int64_t>(f[2], line_no);
    r.f_x = parse_field<double>(f[3], line_no);
    r.grad_norm_x = parse_field<double>(f[4], line_no);
    r.grad_norm_xbar = parse_field<double>(f[5], line_no);
    r.f_xbar = parse_field<double>(f[6], line_no);
    r.v_norm = parse_field<double>(f[7], line_no);
    r.s_sum = parse_field<double>(f[8], line_no);
    r.h = parse_field<double>(f[9], line_no);
    r.ell = parse_field<double>(f[10], line_no);
    r.best_value = parse_field<double>(f[11], line_no);
    const auto ev = parse_event(f[12]);
    if (!ev) throw MalformedTrace("unknown event on line " + std::to_string(line_no));
    r.event = *ev;
    trace.push_back(r);
  }
  return trace;
}

RunTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path.string());
  return read_trace_csv(in);
}

}  // namespace rhb
