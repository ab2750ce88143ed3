#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weylkit/equivalence.hpp"
#include "weylkit/scenario.hpp"

namespace py = pybind11;
using namespace weylkit;

namespace {

IntervalSet build_set(const std::vector<std::pair<double, double>>& intervals,
                      const std::vector<double>& points) {
  IntervalSet s;
  for (const auto& [a, b] : intervals) s.add_interval(a, b);
  for (double t : points) s.add_point(t);
  return s;
}

}  // namespace

PYBIND11_MODULE(_weylkit, m) {
  m.doc() = "finite-dimensional boundary-triplet and Weyl-function calculus";
  m.attr("DEFAULT_TOL") = kDefaultTol;

  py::register_exception<SingularityError>(m, "SingularityError");

  py::enum_<PointClass>(m, "PointClass")
      .value("RESOLVENT", PointClass::kResolvent)
      .value("POINT_SPECTRUM", PointClass::kPointSpectrum)
      .value("RESIDUAL_SPECTRUM", PointClass::kResidualSpectrum);

  py::class_<Subspace>(m, "Subspace")
      .def_static("from_span", &Subspace::from_span, py::arg("ambient_dim"),
                  py::arg("span"), py::arg("tol") = kDefaultTol)
      .def_property_readonly("ambient_dim", &Subspace::ambient_dim)
      .def_property_readonly("dim", &Subspace::dim)
      .def_property_readonly("basis", &Subspace::basis)
      .def("distance", &Subspace::distance)
      .def("equals", &Subspace::equals, py::arg("other"), py::arg("tol") = kDefaultTol);

  py::class_<RelationParts>(m, "RelationParts")
      .def_readonly("dom", &RelationParts::dom)
      .def_readonly("ran", &RelationParts::ran)
      .def_readonly("ker", &RelationParts::ker)
      .def_readonly("mul", &RelationParts::mul);

  py::class_<LinearRelation>(m, "LinearRelation")
      .def_static(
          "from_graph",
          [](const Matrix& span, double tol) { return LinearRelation::from_graph(span, tol); },
          py::arg("span"), py::arg("tol") = kDefaultTol)
      .def_static("graph_of", &LinearRelation::graph_of, py::arg("matrix"),
                  py::arg("tol") = kDefaultTol)
      .def_property_readonly("dim_in", &LinearRelation::dim_in)
      .def_property_readonly("dim_out", &LinearRelation::dim_out)
      .def_property_readonly("dim", &LinearRelation::dim)
      .def("adjoint", &LinearRelation::adjoint)
      .def("parts", &LinearRelation::parts, py::arg("tol") = kDefaultTol)
      .def("classify_point", &LinearRelation::classify_point, py::arg("z"),
           py::arg("tol") = kDefaultTol)
      .def("equals", &LinearRelation::equals, py::arg("other"),
           py::arg("tol") = kDefaultTol);

  py::class_<MatrixMeasure>(m, "MatrixMeasure")
      .def(py::init<int>(), py::arg("value_dim"))
      .def_static(
          "from_parts",
          [](int dim, const std::vector<std::pair<double, Matrix>>& atoms,
             const std::vector<std::tuple<double, double, Matrix>>& pieces, double tol) {
            std::vector<Atom> as;
            for (const auto& [t, w] : atoms) as.push_back({t, w});
            std::vector<DensityPiece> ps;
            for (const auto& [a, b, d] : pieces) ps.push_back({a, b, d});
            return MatrixMeasure::from_parts(dim, std::move(as), std::move(ps), tol);
          },
          py::arg("value_dim"), py::arg("atoms"), py::arg("ac_pieces"),
          py::arg("tol") = kDefaultTol)
      .def_property_readonly("value_dim", &MatrixMeasure::value_dim)
      .def_property_readonly("atoms",
                             [](const MatrixMeasure& s) {
                               std::vector<std::pair<double, Matrix>> out;
                               for (const auto& a : s.atoms())
                                 out.emplace_back(a.point, a.weight);
                               return out;
                             })
      .def_property_readonly("ac_pieces",
                             [](const MatrixMeasure& s) {
                               std::vector<std::tuple<double, double, Matrix>> out;
                               for (const auto& p : s.ac_pieces())
                                 out.emplace_back(p.lo, p.hi, p.density);
                               return out;
                             })
      .def(
          "apply",
          [](const MatrixMeasure& s, const std::vector<std::pair<double, double>>& iv,
             const std::vector<double>& pts) { return s.apply(build_set(iv, pts)); },
          py::arg("intervals"), py::arg("points") = std::vector<double>{})
      .def("lebesgue_decompose", &MatrixMeasure::lebesgue_decompose)
      .def("cauchy_transform", &MatrixMeasure::cauchy_transform)
      .def("poisson_transform", &MatrixMeasure::poisson_transform);

  m.def("spectral_measure", &spectral_measure, py::arg("hermitian"),
        py::arg("tol") = kDefaultTol);

  py::class_<PiecewiseLinear>(m, "PiecewiseLinear")
      .def(py::init<std::vector<std::pair<double, double>>>())
      .def("__call__", &PiecewiseLinear::operator())
      .def("average", &PiecewiseLinear::average);

  m.def("weight_measure", &weight_measure, py::arg("sigma"), py::arg("phi"),
        py::arg("tol") = kDefaultTol);

  py::class_<StieltjesResult>(m, "StieltjesResult")
      .def_readonly("estimate", &StieltjesResult::estimate)
      .def_readonly("window_mass", &StieltjesResult::window_mass)
      .def_readonly("converged", &StieltjesResult::converged)
      .def_readonly("extrapolation_residual", &StieltjesResult::extrapolation_residual)
      .def_readonly("note", &StieltjesResult::note);

  m.def(
      "stieltjes_invert",
      [](const std::function<Matrix(double, double)>& im_f, double lo, double hi,
         const std::vector<double>& ys, double tol) {
        return stieltjes_invert(im_f, lo, hi, ys, tol);
      },
      py::arg("im_f"), py::arg("window_lo"), py::arg("window_hi"),
      py::arg("y_sequence"), py::arg("tol") = 1e-6);

  py::class_<HerglotzMatrixFunction>(m, "HerglotzMatrixFunction")
      .def(py::init<Matrix, Matrix, MatrixMeasure, Matrix, double>(), py::arg("C"),
           py::arg("D"), py::arg("sigma"), py::arg("S"), py::arg("tol") = kDefaultTol)
      .def_static("constant", &HerglotzMatrixFunction::constant, py::arg("C"),
                  py::arg("tol") = kDefaultTol)
      .def_property_readonly("dim", &HerglotzMatrixFunction::dim)
      .def_property_readonly("C", &HerglotzMatrixFunction::c)
      .def_property_readonly("D", &HerglotzMatrixFunction::d)
      .def_property_readonly("S", &HerglotzMatrixFunction::s)
      .def_property_readonly("sigma", &HerglotzMatrixFunction::sigma)
      .def("evaluate", &HerglotzMatrixFunction::evaluate);

  py::class_<WeylTransformSpec>(m, "WeylTransformSpec")
      .def(py::init<Matrix, Matrix, double>(), py::arg("B"), py::arg("K"),
           py::arg("tol") = kDefaultTol)
      .def_readonly("B", &WeylTransformSpec::b)
      .def_readonly("K", &WeylTransformSpec::k);

  m.def("weyl_transform", &weyl_transform, py::arg("f"), py::arg("spec"), py::arg("z"),
        py::arg("tol") = kDefaultTol);

  py::class_<TildeData>(m, "TildeData")
      .def_readonly("sigma", &TildeData::sigma)
      .def_readonly("shift", &TildeData::shift)
      .def_readonly("C", &TildeData::c)
      .def_readonly("D", &TildeData::d)
      .def_readonly("B", &TildeData::b)
      .def("ac_mass", &TildeData::ac_mass);

  m.def("tilde_data", &tilde_data, py::arg("f"), py::arg("spec"),
        py::arg("tol") = kDefaultTol);

  py::class_<CheckItem>(m, "CheckItem")
      .def_readonly("label", &CheckItem::label)
      .def_readonly("residual", &CheckItem::residual)
      .def_readonly("tolerance", &CheckItem::tolerance)
      .def_readonly("passed", &CheckItem::pass);

  py::class_<ScenarioReport>(m, "ScenarioReport")
      .def_property_readonly("name", &ScenarioReport::name)
      .def_property_readonly("checks", &ScenarioReport::checks)
      .def_property_readonly("notes", &ScenarioReport::notes)
      .def("passed", &ScenarioReport::pass)
      .def("residual", &ScenarioReport::residual)
      .def("__str__", &ScenarioReport::to_string);

  m.def(
      "basic_lemma_check",
      [](const HerglotzMatrixFunction& f1, const WeylTransformSpec& s1,
         const HerglotzMatrixFunction& f2, const WeylTransformSpec& s2,
         const std::vector<cxd>& probes, double tol) {
        return basic_lemma_check(f1, s1, f2, s2, probes, tol);
      },
      py::arg("f1"), py::arg("spec1"), py::arg("f2"), py::arg("spec2"),
      py::arg("probes"), py::arg("tol") = 1e-8);
  m.def(
      "full_equality_check",
      [](const HerglotzMatrixFunction& f1, const WeylTransformSpec& s1,
         const HerglotzMatrixFunction& f2, const WeylTransformSpec& s2,
         const std::vector<cxd>& up, const std::vector<cxd>& low, double tol) {
        return full_equality_check(f1, s1, f2, s2, up, low, tol);
      },
      py::arg("f1"), py::arg("spec1"), py::arg("f2"), py::arg("spec2"),
      py::arg("probes_upper"), py::arg("probes_lower"), py::arg("tol") = 1e-8);
  m.def("weak_derivative_check", &weak_derivative_check, py::arg("f1"), py::arg("f2"),
        py::arg("t0"), py::arg("y_sequence"), py::arg("tol") = 1e-6);

  py::class_<RecoveredParameters>(m, "RecoveredParameters")
      .def_readonly("C", &RecoveredParameters::c)
      .def_readonly("D", &RecoveredParameters::d)
      .def_readonly("sigma", &RecoveredParameters::sigma)
      .def_readonly("symmetry_residual", &RecoveredParameters::symmetry_residual)
      .def_readonly("converged", &RecoveredParameters::converged);

  m.def("recover_parameters", &recover_parameters, py::arg("evaluator"),
        py::arg("window_lo"), py::arg("window_hi"), py::arg("y_sequence"),
        py::arg("tol") = 1e-6);

  py::class_<LftBlocks>(m, "LftBlocks")
      .def(py::init([](Matrix x1, Matrix x2, Matrix x3, Matrix x4) {
             return LftBlocks{std::move(x1), std::move(x2), std::move(x3), std::move(x4)};
           }),
           py::arg("X1"), py::arg("X2"), py::arg("X3"), py::arg("X4"));
  m.def("lft_weyl", &lft_weyl, py::arg("f"), py::arg("x"), py::arg("z"),
        py::arg("tol") = kDefaultTol);
  m.def("characteristic_function", &characteristic_function, py::arg("f"), py::arg("B"),
        py::arg("K"), py::arg("J"), py::arg("z"), py::arg("tol") = kDefaultTol);

  py::class_<NondenseSymmetric>(m, "NondenseSymmetric")
      .def(py::init<Matrix, Matrix, double>(), py::arg("A00"), py::arg("A10"),
           py::arg("tol") = kDefaultTol)
      .def_property_readonly("ambient_dim", &NondenseSymmetric::ambient_dim)
      .def_property_readonly("domain_dim", &NondenseSymmetric::domain_dim)
      .def_property_readonly("deficiency", &NondenseSymmetric::deficiency)
      .def("extension_matrix", &NondenseSymmetric::extension_matrix)
      .def("as_relation", &NondenseSymmetric::as_relation, py::arg("tol") = kDefaultTol)
      .def("defect_space_at", &NondenseSymmetric::defect_space_at, py::arg("z"),
           py::arg("tol") = kDefaultTol);

  m.def("adjoint_decomposition", &adjoint_decomposition, py::arg("s"),
        py::arg("extension"), py::arg("tol") = kDefaultTol);

  py::class_<DualBoundaryValues>(m, "DualBoundaryValues")
      .def_readonly("g0", &DualBoundaryValues::g0)
      .def_readonly("g1", &DualBoundaryValues::g1)
      .def_readonly("g0t", &DualBoundaryValues::g0t)
      .def_readonly("g1t", &DualBoundaryValues::g1t);

  py::class_<OrdinaryBoundaryValues>(m, "OrdinaryBoundaryValues")
      .def_readonly("g0", &OrdinaryBoundaryValues::g0)
      .def_readonly("g1", &OrdinaryBoundaryValues::g1);

  py::class_<BTInfTriplet>(m, "BTInfTriplet")
      .def(py::init<NondenseSymmetric, Matrix, Matrix, Matrix, double>(),
           py::arg("base"), py::arg("B0"), py::arg("gamma"), py::arg("forbidden"),
           py::arg("tol") = kDefaultTol)
      .def_property_readonly("base", &BTInfTriplet::base)
      .def_property_readonly("a0", &BTInfTriplet::a0)
      .def_property_readonly("gamma", &BTInfTriplet::gamma_g)
      .def_property_readonly("forbidden", &BTInfTriplet::forbidden)
      .def("boundary_maps", &BTInfTriplet::boundary_maps, py::arg("f"), py::arg("fprime"),
           py::arg("tol") = 1e-8)
      .def("weyl_function", &BTInfTriplet::weyl_function, py::arg("z"),
           py::arg("tol") = kDefaultTol)
      .def("extension_from_boundary", &BTInfTriplet::extension_from_boundary,
           py::arg("theta"), py::arg("tol") = kDefaultTol)
      .def("green_identity_residual", &BTInfTriplet::green_identity_residual);

  py::class_<OrdinaryTripletModel>(m, "OrdinaryTripletModel")
      .def(py::init<NondenseSymmetric, Matrix, Matrix, double>(), py::arg("base"),
           py::arg("gamma"), py::arg("B0"), py::arg("tol") = kDefaultTol)
      .def_property_readonly("base", &OrdinaryTripletModel::base)
      .def_property_readonly("gamma", &OrdinaryTripletModel::gamma_g)
      .def_property_readonly("B0", &OrdinaryTripletModel::b0)
      .def("reference_matrix", &OrdinaryTripletModel::reference_matrix)
      .def("weyl_function", &OrdinaryTripletModel::weyl_function, py::arg("z"),
           py::arg("tol") = kDefaultTol)
      .def("to_herglotz", &OrdinaryTripletModel::to_herglotz, py::arg("tol") = kDefaultTol)
      .def("extension_operator", &OrdinaryTripletModel::extension_operator)
      .def("boundary_maps", &OrdinaryTripletModel::boundary_maps, py::arg("f"),
           py::arg("fprime"), py::arg("tol") = 1e-8)
      .def("green_identity_residual", &OrdinaryTripletModel::green_identity_residual);

  m.def("hat_transform", &hat_transform, py::arg("model"), py::arg("K"), py::arg("B"),
        py::arg("tol") = kDefaultTol);
  m.def("hat_coordinate", &hat_coordinate, py::arg("T"), py::arg("K"), py::arg("B"),
        py::arg("tol") = kDefaultTol);
  m.def("dual_pair_triplet", &dual_pair_triplet, py::arg("model"), py::arg("K"),
        py::arg("B"), py::arg("tol") = kDefaultTol);
  m.def("mobius_transform", &mobius_transform, py::arg("triplet"), py::arg("lambda0"),
        py::arg("tol") = kDefaultTol);
  m.def("schur_compression", &schur_compression, py::arg("triplet"), py::arg("z"),
        py::arg("tol") = kDefaultTol);

  py::class_<ExtensionPointCheck>(m, "ExtensionPointCheck")
      .def_readonly("via_extension", &ExtensionPointCheck::via_extension)
      .def_readonly("via_weyl", &ExtensionPointCheck::via_weyl)
      .def_readonly("agree", &ExtensionPointCheck::agree);

  m.def("classify_extension_point",
        py::overload_cast<const OrdinaryTripletModel&, const Matrix&, cxd, double>(
            &classify_extension_point),
        py::arg("model"), py::arg("theta"), py::arg("z"), py::arg("tol") = kDefaultTol);

  py::class_<PqsSystem>(m, "PqsSystem")
      .def(py::init<Matrix, Matrix, Matrix, double>(), py::arg("A"), py::arg("K"),
           py::arg("F"), py::arg("tol") = kDefaultTol)
      .def_property_readonly("state_dim", &PqsSystem::state_dim)
      .def_property_readonly("input_dim", &PqsSystem::input_dim)
      .def_property_readonly("A", &PqsSystem::a)
      .def_property_readonly("K", &PqsSystem::k)
      .def_property_readonly("F", &PqsSystem::f)
      .def("transfer_function", &PqsSystem::transfer_function, py::arg("z"),
           py::arg("tol") = kDefaultTol)
      .def("is_simple", &PqsSystem::is_simple, py::arg("tol") = kDefaultTol)
      .def("markov_parameters", &PqsSystem::markov_parameters, py::arg("count"))
      .def("conjugated", &PqsSystem::conjugated, py::arg("U"),
           py::arg("tol") = kDefaultTol);

  py::class_<SimilarityResiduals>(m, "SimilarityResiduals")
      .def_readonly("unitarity", &SimilarityResiduals::unitarity)
      .def_readonly("k_intertwine", &SimilarityResiduals::k_intertwine)
      .def_readonly("a_intertwine", &SimilarityResiduals::a_intertwine)
      .def_readonly("f_gap", &SimilarityResiduals::f_gap);

  m.def("decide_unitary_similarity", &decide_unitary_similarity, py::arg("s1"),
        py::arg("s2"), py::arg("tol") = kDefaultTol);
  m.def("verify_similarity", &verify_similarity, py::arg("s1"), py::arg("s2"),
        py::arg("U"));
  m.def("random_system", &random_system, py::arg("n"), py::arg("k"),
        py::arg("spectral_radius"), py::arg("seed"), py::arg("hermitian") = false);

  py::class_<Counterexample>(m, "Counterexample")
      .def_readonly("m2", &Counterexample::m2)
      .def_readonly("b2", &Counterexample::b2)
      .def_readonly("b_shift", &Counterexample::b_shift)
      .def_readonly("omega_description", &Counterexample::omega_description);

  m.def("construct_counterexample", &construct_counterexample, py::arg("m1"),
        py::arg("b1"), py::arg("z0"), py::arg("tol") = kDefaultTol);
  m.def(
      "counterexample_report",
      [](const HerglotzMatrixFunction& m1, const Matrix& b1, cxd z0,
         const std::vector<cxd>& probes, double tol) {
        return counterexample_report(m1, b1, z0, probes, tol);
      },
      py::arg("m1"), py::arg("b1"), py::arg("z0"), py::arg("probes"),
      py::arg("tol") = 1e-12);
  m.def("momentum_golden", &momentum_golden, py::arg("dim") = 2,
        py::arg("grid_points") = 50, py::arg("tol") = 1e-12);

  py::enum_<UniquenessCase>(m, "UniquenessCase")
      .value("A1", UniquenessCase::kA1)
      .value("A2", UniquenessCase::kA2)
      .value("A3", UniquenessCase::kA3)
      .value("A4", UniquenessCase::kA4);

  py::class_<PipelineInput>(m, "PipelineInput")
      .def_static("from_model", &PipelineInput::from_model, py::arg("model"),
                  py::arg("spec"), py::arg("tol") = kDefaultTol)
      .def_static("from_function", &PipelineInput::from_function, py::arg("weyl"),
                  py::arg("spec"));

  py::class_<PipelineOptions>(m, "PipelineOptions")
      .def(py::init<>())
      .def_readwrite("working_window", &PipelineOptions::working_window)
      .def_readwrite("t0", &PipelineOptions::t0)
      .def_readwrite("y_sequence", &PipelineOptions::y_sequence);

  py::class_<PipelineResult>(m, "PipelineResult")
      .def_readonly("report", &PipelineResult::report)
      .def_readonly("unitary", &PipelineResult::unitary);

  m.def(
      "uniqueness_pipeline",
      [](const PipelineInput& a, const PipelineInput& b, const std::vector<cxd>& probes,
         UniquenessCase c, double tol, const PipelineOptions& options) {
        return uniqueness_pipeline(a, b, probes, c, tol, options);
      },
      py::arg("first"), py::arg("second"), py::arg("probes"), py::arg("case_"),
      py::arg("tol") = 1e-8, py::arg("options") = PipelineOptions{});
}
