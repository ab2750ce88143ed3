#pragma once

#include <optional>
#include <span>
#include <vector>

#include "weylkit/realization.hpp"
#include "weylkit/report.hpp"
#include "weylkit/triplets.hpp"

namespace weylkit {

/// Output of the non-uniqueness construction: M2 = M1 + B on the upper
/// half-plane (B* below), realized through the half-plane-constant field
/// and a real shift of C, plus B2 = B1 + B. The shift B is dissipative
/// with Re B = Im B = (1 + ||Im B1||) I, so B2 is dissipative and the
/// hat-Weyl gap ||M_hat_1(i) - M_hat_2(i)|| equals ||Re B||.
struct Counterexample {
  HerglotzMatrixFunction m2;
  Matrix b2;
  Matrix b_shift;
  std::string omega_description;
};

Counterexample construct_counterexample(const HerglotzMatrixFunction& m1,
                                        const Matrix& b1, cxd z0, double tol);

/// Verifies the counterexample contracts on a probe grid: transform
/// equality where defined, and the strictly positive hat-Weyl gap.
ScenarioReport counterexample_report(const HerglotzMatrixFunction& m1, const Matrix& b1,
                                     cxd z0, std::span<const cxd> probes_upper,
                                     double tol);

/// The constant-Weyl-function pair with equal transforms, its
/// characteristic function, the ac-density relation, and the total kernel
/// of the first pencil on the lower half-plane.
ScenarioReport momentum_golden(int dim = 2, int grid_points = 50, double tol = 1e-12);

enum class UniquenessCase { kA1, kA2, kA3, kA4 };

const char* to_string(UniquenessCase c);
UniquenessCase uniqueness_case_from_string(const std::string& s);

struct PipelineInput {
  HerglotzMatrixFunction weyl;
  WeylTransformSpec spec;
  std::optional<OrdinaryTripletModel> model;

  static PipelineInput from_model(const OrdinaryTripletModel& model,
                                  const WeylTransformSpec& spec, double tol);
  static PipelineInput from_function(const HerglotzMatrixFunction& weyl,
                                     const WeylTransformSpec& spec);
};

struct PipelineOptions {
  double working_window = 10.0;          // [-T, T] window for the ac proxies
  std::optional<double> t0;              // common derivative point (case a4)
  std::vector<double> y_sequence{0.4, 0.2, 0.1, 0.05};
};

struct PipelineResult {
  ScenarioReport report;
  std::optional<Matrix> unitary;
};

/// Positive pipeline: checks the case hypothesis, transform equality on
/// the probes, the lemma conclusions, equality of the hat-Weyl functions;
/// when both inputs carry finite models it realizes the hat triplets as
/// systems, decides unitary similarity, and verifies that the returned
/// unitary intertwines the reference relations and the boundary-operator
/// extensions. A violated hypothesis is reported by name and stops the
/// pipeline.
PipelineResult uniqueness_pipeline(const PipelineInput& first,
                                   const PipelineInput& second,
                                   std::span<const cxd> probes, UniquenessCase c,
                                   double tol, const PipelineOptions& options = {});

}  // namespace weylkit
