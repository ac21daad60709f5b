#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "rhb/types.hpp"

namespace rhb {

inline constexpr const char* kTraceHeader =
    "K,k,oracle_calls,f_x,grad_norm_x,grad_norm_xbar,f_xbar,v_norm,s_sum,h,ell,best_value,event";

// Renders a real with 17 significant digits (round-trips exactly).
std::string format_real(double v);

void write_trace_csv(std::ostream& out, const RunTrace& trace);
void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace);

// Throws MalformedTrace on a bad header, wrong column count, or unparsable field.
RunTrace read_trace_csv(std::istream& in);
RunTrace read_trace_csv(const std::filesystem::path& path);

}  // namespace rhb
