#include "weylkit/equivalence.hpp"

#include <algorithm>
#include <cmath>

namespace weylkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Effective ac part of a Herglotz function over a bounded window: the
// declared pieces plus the half-plane term's density S/pi.
MatrixMeasure effective_ac(const HerglotzMatrixFunction& f, double window, double tol) {
  auto [ac, sing] = f.sigma().lebesgue_decompose();
  if (op_norm(f.s()) == 0.0) return ac;
  MatrixMeasure spread = MatrixMeasure::from_parts(
      f.dim(), {}, {{-window - 1.0, window + 1.0, f.s() / kPi}}, tol);
  return ac.plus(spread, tol);
}

Matrix hat_weyl_value(const HerglotzMatrixFunction& f, const WeylTransformSpec& spec,
                      cxd z, double tol) {
  const Matrix k_inv = guarded_inverse(spec.k, tol, "K");
  return k_inv * (f.evaluate(z) - hermitian_part(spec.b)) * k_inv.adjoint();
}

}  // namespace

Counterexample construct_counterexample(const HerglotzMatrixFunction& m1,
                                        const Matrix& b1, cxd z0, double tol) {
  const int d = m1.dim();
  if (b1.rows() != d || b1.cols() != d)
    throw std::invalid_argument("B1 must match the function dimension");
  if (z0.imag() <= 0.0)
    throw std::invalid_argument("z0 must lie in the upper half-plane");
  const Matrix pencil = b1 - m1.evaluate(z0);
  if (!is_invertible(pencil, tol))
    throw SingularityError("B1 - M1(z0) is singular at z0 = " + format_complex(z0));

  const double beta = 1.0 + op_norm(imaginary_part(b1));
  const Matrix shift = beta * (cxd(1.0, 1.0) * identity(d));
  HerglotzMatrixFunction m2(Matrix(m1.c() + beta * identity(d)), m1.d(), m1.sigma(),
                            Matrix(m1.s() + beta * identity(d)), tol);
  Counterexample out{std::move(m2), Matrix(b1 + shift), shift, ""};
  if (is_psd(Matrix(-imaginary_part(b1)), tol)) {
    out.omega_description = "the whole upper half-plane (B1 is accumulative)";
  } else {
    out.omega_description =
        "a neighborhood of z0 = " + format_complex(z0) + " where B1 - M1 stays invertible";
  }
  return out;
}

ScenarioReport counterexample_report(const HerglotzMatrixFunction& m1, const Matrix& b1,
                                     cxd z0, std::span<const cxd> probes_upper,
                                     double tol) {
  const Counterexample ce = construct_counterexample(m1, b1, z0, tol);
  const int d = m1.dim();
  const WeylTransformSpec s1(b1, identity(d), kDefaultTol);
  const WeylTransformSpec s2(ce.b2, identity(d), kDefaultTol);

  ScenarioReport report("construct_counterexample");
  double transform_residual = 0.0;
  for (cxd z : probes_upper) {
    const Matrix t1 = weyl_transform(m1, s1, z, kDefaultTol);
    const Matrix t2 = weyl_transform(ce.m2, s2, z, kDefaultTol);
    transform_residual = std::max(transform_residual, op_norm(t1 - t2));
  }
  report.add("transform_equality", transform_residual, tol);

  const Matrix gap_matrix = hat_weyl_value(m1, s1, cxd(0.0, 1.0), kDefaultTol) -
                            hat_weyl_value(ce.m2, s2, cxd(0.0, 1.0), kDefaultTol);
  const double gap = op_norm(gap_matrix);
  const double re_norm = op_norm(hermitian_part(ce.b_shift));
  report.add("hat_weyl_gap_equals_re_shift", std::abs(gap - re_norm),
             tol * std::max(1.0, re_norm));
  report.add("hat_weyl_gap_positive", gap > 0.0 ? 0.0 : 1.0, 0.5);
  report.add_note("hat-Weyl gap " + std::to_string(gap) + ", equality region: " +
                  ce.omega_description);
  return report;
}

ScenarioReport momentum_golden(int dim, int grid_points, double tol) {
  if (dim < 1 || grid_points < 1) throw std::invalid_argument("bad golden parameters");
  const Matrix id = identity(dim);
  const HerglotzMatrixFunction m1(Matrix::Zero(dim, dim), Matrix::Zero(dim, dim),
                                  MatrixMeasure(dim), id, kDefaultTol);
  const HerglotzMatrixFunction m2(Matrix::Zero(dim, dim), Matrix::Zero(dim, dim),
                                  MatrixMeasure(dim), Matrix(3.0 * id), kDefaultTol);
  const WeylTransformSpec s1(Matrix(cxd(0.0, -1.0) * id), id, kDefaultTol);
  const WeylTransformSpec s2(Matrix(cxd(0.0, 1.0) * id), id, kDefaultTol);

  std::vector<cxd> grid_upper, grid_lower;
  for (int j = 0; j < grid_points; ++j) {
    const double x = -2.0 + 4.0 * j / std::max(1, grid_points - 1);
    const double y = 0.3 + 2.7 * (j % 7) / 6.0;
    grid_upper.emplace_back(x, y);
    grid_lower.emplace_back(x, -y);
  }

  ScenarioReport report("momentum_golden");

  double equality = 0.0, constant_value = 0.0, w2_value = 0.0, w2_constancy = 0.0;
  const Matrix w2_ref = 0.5 * id;
  const Matrix upper_constant = cxd(0.0, 0.5) * id;
  Matrix w2_first;
  for (size_t j = 0; j < grid_upper.size(); ++j) {
    const cxd z = grid_upper[j];
    const Matrix t1 = weyl_transform(m1, s1, z, kDefaultTol);
    const Matrix t2 = weyl_transform(m2, s2, z, kDefaultTol);
    equality = std::max(equality, op_norm(t1 - t2));
    constant_value = std::max(constant_value, op_norm(t1 - upper_constant));
    const Matrix w2 = characteristic_function(m2, s2.b, id, id, z, kDefaultTol);
    if (j == 0) w2_first = w2;
    w2_value = std::max(w2_value, op_norm(w2 - w2_ref));
    w2_constancy = std::max(w2_constancy, op_norm(w2 - w2_first));
  }
  report.add("transform_equality", equality, tol);
  report.add("transform_constant_value", constant_value, tol);
  report.add("characteristic_function_value", w2_value, tol);
  report.add("characteristic_function_constancy", w2_constancy, tol);

  // Lemma conclusions; the ac-density relation carries the whole content
  // here since both spectral measures vanish and only the half-plane
  // terms differ.
  const ScenarioReport lemma = basic_lemma_check(m1, s1, m2, s2, grid_upper, tol);
  for (const auto& item : lemma.checks())
    report.add("lemma_" + item.label, item.residual, item.tolerance);
  const TildeData t1 = tilde_data(m1, s1, kDefaultTol);
  const TildeData t2 = tilde_data(m2, s2, kDefaultTol);
  const Matrix ac_gap_per_unit = t2.ac_mass(0.0, 1.0) - t1.ac_mass(0.0, 1.0);
  report.add("ac_gap_matches_two_over_pi",
             op_norm(ac_gap_per_unit - (2.0 / kPi) * id), tol);

  // On the lower half-plane the first pencil collapses entirely while the
  // second stays invertible.
  double collapse = 0.0;
  bool second_invertible = true;
  for (cxd z : grid_lower) {
    collapse = std::max(collapse, op_norm(Matrix(s1.b - m1.evaluate(z))));
    second_invertible =
        second_invertible && is_invertible(Matrix(s2.b - m2.evaluate(z)), kDefaultTol);
  }
  report.add("lower_halfplane_total_kernel", collapse, tol);
  report.add("lower_halfplane_second_pencil_invertible", second_invertible ? 0.0 : 1.0,
             0.5);
  report.add_note("transform value on the upper half-plane is +0.5i times the identity");
  return report;
}

const char* to_string(UniquenessCase c) {
  switch (c) {
    case UniquenessCase::kA1: return "a1";
    case UniquenessCase::kA2: return "a2";
    case UniquenessCase::kA3: return "a3";
    case UniquenessCase::kA4: return "a4";
  }
  return "?";
}

UniquenessCase uniqueness_case_from_string(const std::string& s) {
  if (s == "a1") return UniquenessCase::kA1;
  if (s == "a2") return UniquenessCase::kA2;
  if (s == "a3") return UniquenessCase::kA3;
  if (s == "a4") return UniquenessCase::kA4;
  throw std::invalid_argument("unknown uniqueness case '" + s + "'");
}

PipelineInput PipelineInput::from_model(const OrdinaryTripletModel& model,
                                        const WeylTransformSpec& spec, double tol) {
  return PipelineInput{model.to_herglotz(tol), spec, model};
}

PipelineInput PipelineInput::from_function(const HerglotzMatrixFunction& weyl,
                                           const WeylTransformSpec& spec) {
  return PipelineInput{weyl, spec, std::nullopt};
}

PipelineResult uniqueness_pipeline(const PipelineInput& first,
                                   const PipelineInput& second,
                                   std::span<const cxd> probes, UniquenessCase c,
                                   double tol, const PipelineOptions& options) {
  ScenarioReport report(std::string("uniqueness_pipeline_") + to_string(c));
  if (probes.empty()) throw std::invalid_argument("empty probe set");

  std::vector<cxd> upper, lower;
  for (cxd z : probes) (z.imag() > 0.0 ? upper : lower).push_back(z);

  // --- case hypothesis ---
  bool hypothesis_ok = true;
  switch (c) {
    case UniquenessCase::kA1: {
      const bool eq1 = effective_ac(first.weyl, options.working_window, kDefaultTol)
                           .window_equivalent_to_lebesgue(options.working_window, kDefaultTol);
      const bool eq2 = effective_ac(second.weyl, options.working_window, kDefaultTol)
                           .window_equivalent_to_lebesgue(options.working_window, kDefaultTol);
      hypothesis_ok = !eq1 && !eq2;
      report.add("case_a1_ac_not_window_lebesgue", hypothesis_ok ? 0.0 : 1.0, 0.5);
      if (!hypothesis_ok)
        report.add_note(
            "hypothesis (a1) violated: the ac spectral measure is equivalent to the "
            "Lebesgue measure on the working window");
      break;
    }
    case UniquenessCase::kA2: {
      hypothesis_ok = !upper.empty() && !lower.empty();
      report.add("case_a2_probes_in_both_half_planes", hypothesis_ok ? 0.0 : 1.0, 0.5);
      if (!hypothesis_ok)
        report.add_note("hypothesis (a2) violated: probes must meet both half-planes");
      break;
    }
    case UniquenessCase::kA3: {
      const auto covers = [&](const HerglotzMatrixFunction& f) {
        const MatrixMeasure ac = effective_ac(f, options.working_window, kDefaultTol);
        double cursor = -options.working_window;
        for (const auto& p : ac.ac_pieces()) {
          if (p.hi <= cursor) continue;
          if (p.lo > cursor + kDefaultTol) return false;
          cursor = p.hi;
          if (cursor >= options.working_window) return true;
        }
        return cursor >= options.working_window;
      };
      hypothesis_ok = !covers(first.weyl) && !covers(second.weyl);
      report.add("case_a3_ac_support_not_full_window", hypothesis_ok ? 0.0 : 1.0, 0.5);
      if (!hypothesis_ok)
        report.add_note(
            "hypothesis (a3) violated: the ac support covers the working window");
      break;
    }
    case UniquenessCase::kA4: {
      if (!options.t0)
        throw std::invalid_argument("case a4 requires a derivative point t0");
      const ScenarioReport wd = weak_derivative_check(first.weyl, second.weyl,
                                                      *options.t0, options.y_sequence,
                                                      tol);
      for (const auto& item : wd.checks())
        report.add("case_a4_" + item.label, item.residual, item.tolerance);
      hypothesis_ok = wd.pass();
      if (!hypothesis_ok)
        report.add_note("hypothesis (a4) violated: weak derivatives differ at t0");
      break;
    }
  }
  if (c != UniquenessCase::kA2 && upper.empty())
    throw std::invalid_argument("cases a1/a3/a4 require upper half-plane probes");
  if (!hypothesis_ok) return {report, std::nullopt};

  // --- transform equality on the probes ---
  const auto mismatch = [&](std::span<const cxd> zs) {
    double r = 0.0;
    for (cxd z : zs)
      r = std::max(r, op_norm(weyl_transform(first.weyl, first.spec, z, kDefaultTol) -
                              weyl_transform(second.weyl, second.spec, z, kDefaultTol)));
    return r;
  };
  report.add("transform_equality_upper", mismatch(upper), tol);
  if (c == UniquenessCase::kA2) report.add("transform_equality_lower", mismatch(lower), tol);
  if (!report.pass()) {
    report.add_note("transform equality fails on the probe set");
    return {report, std::nullopt};
  }

  // --- lemma conclusions; all four cases yield the strong form ---
  if (c == UniquenessCase::kA2) {
    const ScenarioReport full = full_equality_check(first.weyl, first.spec, second.weyl,
                                                    second.spec, upper, lower, tol);
    for (const auto& item : full.checks())
      if (item.label.rfind("transform_equality", 0) != 0)
        report.add("conclusion_" + item.label, item.residual, item.tolerance);
  } else {
    const ScenarioReport lemma =
        basic_lemma_check(first.weyl, first.spec, second.weyl, second.spec, upper, tol);
    for (const auto& item : lemma.checks())
      if (item.label != "transform_equality")
        report.add("conclusion_" + item.label, item.residual, item.tolerance);
    const TildeData t1 = tilde_data(first.weyl, first.spec, kDefaultTol);
    const TildeData t2 = tilde_data(second.weyl, second.spec, kDefaultTol);
    report.add("conclusion_im_b_equality",
               op_norm(imaginary_part(t1.b) - imaginary_part(t2.b)), tol);
    double ac_eq = 0.0;
    const double w = options.working_window;
    for (double lo = -w; lo < w - 0.5; lo += 1.0)
      ac_eq = std::max(ac_eq, op_norm(t1.ac_mass(lo, lo + 1.0) - t2.ac_mass(lo, lo + 1.0)));
    report.add("conclusion_sigma_ac_equality", ac_eq, tol);
  }

  // --- hat-Weyl equality ---
  double hat_gap = 0.0;
  for (cxd z : upper)
    hat_gap = std::max(hat_gap, op_norm(hat_weyl_value(first.weyl, first.spec, z, kDefaultTol) -
                                        hat_weyl_value(second.weyl, second.spec, z, kDefaultTol)));
  report.add("hat_weyl_equality", hat_gap, tol);

  if (!first.model || !second.model) {
    report.add_note("no finite models supplied; realization step skipped");
    return {report, std::nullopt};
  }

  // --- realization of the hat triplets as systems ---
  const OrdinaryTripletModel hat1 =
      hat_transform(*first.model, first.spec.k, first.spec.b, kDefaultTol);
  const OrdinaryTripletModel hat2 =
      hat_transform(*second.model, second.spec.k, second.spec.b, kDefaultTol);

  double hat_model_consistency = 0.0;
  for (cxd z : upper)
    hat_model_consistency = std::max(
        hat_model_consistency,
        std::max(op_norm(hat1.weyl_function(z, kDefaultTol) -
                         hat_weyl_value(first.weyl, first.spec, z, kDefaultTol)),
                 op_norm(hat2.weyl_function(z, kDefaultTol) -
                         hat_weyl_value(second.weyl, second.spec, z, kDefaultTol))));
  report.add("hat_model_consistency", hat_model_consistency, std::max(tol, 1e-10));

  const int k = hat1.base().deficiency();
  const PqsSystem sys1(hat1.reference_matrix(), hat1.gamma_full(),
                       Matrix::Zero(k, k), kDefaultTol);
  const PqsSystem sys2(hat2.reference_matrix(), hat2.gamma_full(),
                       Matrix::Zero(k, k), kDefaultTol);
  const bool simple = sys1.is_simple(kDefaultTol) && sys2.is_simple(kDefaultTol);
  report.add("systems_simple", simple ? 0.0 : 1.0, 0.5);
  if (!simple) {
    report.add_note("a derived system is not simple; the uniqueness theorem does not apply");
    return {report, std::nullopt};
  }

  const std::optional<Matrix> u = decide_unitary_similarity(sys1, sys2, kDefaultTol);
  report.add("realization_decision", u ? 0.0 : 1.0, 0.5);
  if (!u) return {report, std::nullopt};

  const SimilarityResiduals res = verify_similarity(sys1, sys2, *u);
  const double rtol = std::max(tol, 1e-8);
  report.add("similarity_unitarity", res.unitarity, rtol);
  report.add("similarity_k_intertwine", res.k_intertwine, rtol);
  report.add("similarity_a_intertwine", res.a_intertwine, rtol);

  // Consequences transported by the same unitary: the reference relations
  // and the boundary-operator extensions.
  const LinearRelation ref1 = first.model->reference_relation(kDefaultTol);
  const LinearRelation ref2 = second.model->reference_relation(kDefaultTol);
  const double ref_gap = ref1.map_by(*u, kDefaultTol).graph().distance(ref2.graph());
  report.add("reference_relation_intertwine", ref_gap, rtol);

  const Matrix ext1 = first.model->extension_operator(first.spec.b);
  const Matrix ext2 = second.model->extension_operator(second.spec.b);
  report.add("extension_intertwine", op_norm(*u * ext1 - ext2 * *u), rtol);

  return {report, u};
}

}  // namespace weylkit
