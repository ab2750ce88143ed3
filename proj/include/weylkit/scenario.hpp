#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "weylkit/equivalence.hpp"

namespace weylkit {

/// Named object in a scenario document. The `transform` entry pairs a
/// Herglotz function with a transform spec so it can be sampled.
struct TransformObject {
  std::string function;
  std::string spec;
};

using ScenarioObject =
    std::variant<MatrixMeasure, HerglotzMatrixFunction, WeylTransformSpec,
                 OrdinaryTripletModel, BTInfTriplet, PqsSystem, LinearRelation,
                 PiecewiseLinear, TransformObject, Matrix>;

struct ScenarioTask {
  std::string op;
  std::string raw_args;  // JSON text of the task entry
};

/// Parsed scenario document: versioned named objects plus an ordered task
/// list. Values are JSON with complex scalars as [re, im] pairs, matrices
/// as row-major nested arrays and intervals as [a, b].
class ScenarioDocument {
 public:
  static ScenarioDocument parse_file(const std::string& path, double tol);
  static ScenarioDocument parse_text(const std::string& text, double tol);

  int version = 1;
  std::uint64_t seed = 0;
  std::map<std::string, ScenarioObject> objects;
  std::vector<ScenarioTask> tasks;

  const ScenarioObject& object(const std::string& name) const;
};

struct RunResult {
  int exit_code = 0;  // 0 all pass, 2 some verdict failed
  std::vector<ScenarioReport> reports;
};

/// Executes the tasks in order, writing one report per task plus a summary
/// under out_dir. Input errors surface as exceptions (CLI exit 1).
RunResult run_document(const ScenarioDocument& doc, const std::string& out_dir,
                       double tol_default);

/// Evaluates a named object (Herglotz function, transform, Weyl function
/// of a triplet model, or transfer function) along a complex path grid
/// "x0,y0:x1,y1:count" and writes a CSV table; grid points where the value
/// is undefined get a nonzero status sentinel instead of failing the run.
int sample_object(const ScenarioDocument& doc, const std::string& object_name,
                  const std::string& grid_spec, const std::string& out_path,
                  double tol);

/// Writes a report with the dated header line; everything after the first
/// line is deterministic for a fixed document and seed.
void write_report_file(const ScenarioReport& report, const std::string& path);

}  // namespace weylkit
