#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumtrans/applications.hpp"
#include "sumtrans/field.hpp"
#include "sumtrans/kernel.hpp"
#include "sumtrans/problem.hpp"
#include "sumtrans/solver.hpp"

namespace sumtrans::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Malformed input; the message starts with the offending JSON path or the
/// parser position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

json load_json_file(const std::string& filename);
json parse_json_text(const std::string& text, const std::string& source = "<input>");

// Kernels:
//   {"type":"log","weight":w}
//   {"type":"log_linear","weight":w,"slope":c}
//   {"type":"table","neg_knots":[[t,v],...],"pos_knots":[[t,v],...],
//    "end_slopes":[l,r], "zero":"-inf"|v, "strictly_concave":bool}
//   A table without "zero" extends its inner segments and is undefined at 0.
Kernel parse_kernel(const json& j, const std::string& path = "kernel");

// Fields:
//   {"type":"neg_abs","scale":a,"center":c}     -a|t - c|
//   {"type":"neg_square","scale":a,"center":c}  -a(t - c)^2
//   {"type":"table","knots":[[t,v],...],"end_slopes":[l,r]}
//   {"type":"discrete","points":[[x,v],...]}    v may be "-inf"
//   {"type":"restrict_semiaxis","inner":{...}}
Field parse_field(const json& j, const std::string& path = "field");

struct ProblemFile {
  std::vector<Kernel> kernels;
  Field field;
  SolveOptions solve;
  SearchOptions search;

  Problem problem() const { return Problem(kernels, field, search); }
};

/// {"kernels":[...], "field":{...}, "options":{tol,max_iter,starts,seed,grid_density}}
ProblemFile parse_problem(const json& j);

struct InterpolationFile {
  InterpolationProblem problem;
  std::string mode;  // "points" or "hermite_fejer"
  SolveOptions solve;
  SearchOptions search;
};

/// {"factors":[kernel...], "weight":field, "x":[...], "alpha":[...],
///  "mode":"points"|"hermite_fejer"}
InterpolationFile parse_interpolation(const json& j);

/// Rounds to 9 significant digits.
double round9(double v);
/// Rounded number, or the string "-inf".
ordered_json number(double v);
ordered_json number_array(std::span<const double> values);

}  // namespace sumtrans::io
