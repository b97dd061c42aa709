#pragma once

#include <string>

#include "ua/algebra.hpp"
#include "ua/term.hpp"

namespace ua {

/// Algebra file format (JSON):
///   {"signature":[{"name":"+","arity":2},...],
///    "size":5,
///    "tables":{"+":[...row-major...],"0":[0]},
///    "name":"L5",              // optional
///    "element_names":[...]}    // optional
/// Syntax errors, arity mismatches and out-of-range entries are reported
/// distinctly.  Arities above 8 are rejected (tables are fully materialized).
Algebra parse_algebra(const std::string& text);
Algebra load_algebra(const std::string& path);
std::string print_algebra(const Algebra& a);

}  // namespace ua
