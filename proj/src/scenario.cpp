#include "weylkit/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace weylkit {

namespace {

using nlohmann::json;

cxd parse_complex(const json& j) {
  if (j.is_number()) return cxd(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cxd(j[0].get<double>(), j[1].get<double>());
  throw std::invalid_argument("complex scalar must be a number or [re, im]: " + j.dump());
}

Matrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix must be a nonempty array of rows: " + j.dump());
  const size_t rows = j.size();
  const size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw std::invalid_argument("matrix rows have inconsistent lengths");
    for (size_t c = 0; c < cols; ++c) m(r, c) = parse_complex(j[r][c]);
  }
  return m;
}

std::vector<cxd> parse_probes(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("probes must be a nonempty array");
  std::vector<cxd> out;
  for (const auto& e : j) out.push_back(parse_complex(e));
  return out;
}

std::vector<double> parse_reals(const json& j) {
  std::vector<double> out;
  for (const auto& e : j) out.push_back(e.get<double>());
  return out;
}

MatrixMeasure parse_measure(const json& j, double tol) {
  const int dim = j.at("value_dim").get<int>();
  std::vector<Atom> atoms;
  if (j.contains("atoms"))
    for (const auto& a : j["atoms"])
      atoms.push_back({a.at(0).get<double>(), parse_matrix(a.at(1))});
  std::vector<DensityPiece> pieces;
  if (j.contains("ac_pieces"))
    for (const auto& p : j["ac_pieces"])
      pieces.push_back(
          {p.at(0).get<double>(), p.at(1).get<double>(), parse_matrix(p.at(2))});
  return MatrixMeasure::from_parts(dim, std::move(atoms), std::move(pieces), tol);
}

ScenarioObject parse_object(const json& j, const ScenarioDocument& doc, double tol) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "measure") return parse_measure(j, tol);
  if (type == "herglotz") {
    std::optional<MatrixMeasure> sigma;
    if (j.contains("measure")) {
      if (j["measure"].is_string()) {
        sigma = std::get<MatrixMeasure>(doc.object(j["measure"].get<std::string>()));
      } else {
        sigma = parse_measure(j["measure"], tol);
      }
    }
    int dim = sigma ? sigma->value_dim() : 0;
    if (j.contains("C")) dim = static_cast<int>(parse_matrix(j["C"]).rows());
    else if (j.contains("dim")) dim = j["dim"].get<int>();
    if (dim == 0) throw std::invalid_argument("herglotz object needs C, dim or a measure");
    if (!sigma) sigma = MatrixMeasure(dim);
    const Matrix zero = Matrix::Zero(dim, dim);
    const Matrix c = j.contains("C") ? parse_matrix(j["C"]) : zero;
    const Matrix d = j.contains("D") ? parse_matrix(j["D"]) : zero;
    const Matrix s = j.contains("S") ? parse_matrix(j["S"]) : zero;
    return HerglotzMatrixFunction(c, d, *sigma, s, tol);
  }
  if (type == "transform_spec")
    return WeylTransformSpec(parse_matrix(j.at("B")), parse_matrix(j.at("K")), tol);
  if (type == "ordinary_model") {
    NondenseSymmetric base(parse_matrix(j.at("A00")), parse_matrix(j.at("A10")), tol);
    const int k = base.deficiency();
    const Matrix gamma =
        j.contains("gamma") ? parse_matrix(j["gamma"]) : Matrix(Matrix::Identity(k, k));
    const Matrix b0 =
        j.contains("B0") ? parse_matrix(j["B0"]) : Matrix(Matrix::Zero(k, k));
    return OrdinaryTripletModel(std::move(base), gamma, b0, tol);
  }
  if (type == "bt_inf") {
    NondenseSymmetric base(parse_matrix(j.at("A00")), parse_matrix(j.at("A10")), tol);
    const int k = base.deficiency();
    const Matrix gamma =
        j.contains("gamma") ? parse_matrix(j["gamma"]) : Matrix(Matrix::Identity(k, k));
    const Matrix b0 =
        j.contains("B0") ? parse_matrix(j["B0"]) : Matrix(Matrix::Zero(k, k));
    const Matrix f =
        j.contains("F") ? parse_matrix(j["F"]) : Matrix(Matrix::Zero(k, k));
    return BTInfTriplet(std::move(base), b0, gamma, f, tol);
  }
  if (type == "system")
    return PqsSystem(parse_matrix(j.at("A")), parse_matrix(j.at("K")),
                     parse_matrix(j.at("F")), tol);
  if (type == "relation")
    return LinearRelation::from_graph(j.at("dim_in").get<int>(),
                                      j.at("dim_out").get<int>(),
                                      parse_matrix(j.at("span")), tol);
  if (type == "weight") {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : j.at("breakpoints"))
      pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return PiecewiseLinear(std::move(pts));
  }
  if (type == "transform")
    return TransformObject{j.at("F").get<std::string>(), j.at("spec").get<std::string>()};
  if (type == "matrix") return parse_matrix(j.at("value"));
  throw std::invalid_argument("unknown object type '" + type + "'");
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[40];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

const HerglotzMatrixFunction& as_herglotz(const ScenarioDocument& doc,
                                          const std::string& name) {
  const auto* f = std::get_if<HerglotzMatrixFunction>(&doc.object(name));
  if (!f) throw std::invalid_argument("object '" + name + "' is not a Herglotz function");
  return *f;
}

const WeylTransformSpec& as_spec(const ScenarioDocument& doc, const std::string& name) {
  const auto* s = std::get_if<WeylTransformSpec>(&doc.object(name));
  if (!s) throw std::invalid_argument("object '" + name + "' is not a transform spec");
  return *s;
}

const OrdinaryTripletModel& as_model(const ScenarioDocument& doc,
                                     const std::string& name) {
  const auto* m = std::get_if<OrdinaryTripletModel>(&doc.object(name));
  if (!m) throw std::invalid_argument("object '" + name + "' is not an ordinary model");
  return *m;
}

const PqsSystem& as_system(const ScenarioDocument& doc, const std::string& name) {
  const auto* s = std::get_if<PqsSystem>(&doc.object(name));
  if (!s) throw std::invalid_argument("object '" + name + "' is not a system");
  return *s;
}

ScenarioReport run_triplet_checks(const ScenarioDocument& doc, const json& args,
                                  double tol) {
  ScenarioReport report("triplet_checks");
  const auto probes = parse_probes(args.at("probes"));
  if (args.contains("model")) {
    const auto& model = as_model(doc, args["model"].get<std::string>());
    report.add("green_identity", model.green_identity_residual(), std::max(tol, 1e-12));
    const HerglotzMatrixFunction h = model.to_herglotz(kDefaultTol);
    double rep = 0.0;
    for (cxd z : probes)
      rep = std::max(rep, op_norm(h.evaluate(z) - model.weyl_function(z, kDefaultTol)));
    report.add("weyl_representation", rep, std::max(tol, 1e-10));
  }
  if (args.contains("bt_inf")) {
    const auto* trip = std::get_if<BTInfTriplet>(&doc.object(args["bt_inf"].get<std::string>()));
    if (!trip) throw std::invalid_argument("object is not a bt_inf triplet");
    report.add("green_identity_dual", trip->green_identity_residual(),
               std::max(tol, 1e-12));
    double schur_gap = 0.0, defining_gap = 0.0;
    for (cxd z : probes) {
      const auto [direct, schur] = schur_compression(*trip, z, kDefaultTol);
      schur_gap = std::max(schur_gap, op_norm(direct - schur));
      const Matrix defect = trip->base().defect_space_at(z, kDefaultTol);
      const Matrix m = trip->weyl_function(z, kDefaultTol);
      for (int c = 0; c < defect.cols(); ++c) {
        const Vector f = defect.col(c);
        const auto bv = trip->boundary_maps(f, Vector(z * f), 1e-8);
        defining_gap = std::max(defining_gap, (bv.g1 - m * bv.g0).norm());
      }
    }
    report.add("schur_compression", schur_gap, std::max(tol, 1e-10));
    report.add("weyl_defining_relation", defining_gap, std::max(tol, 1e-10));
    const Matrix far = trip->weyl_function(cxd(0.0, 1e6), kDefaultTol);
    report.add("weyl_limit_at_infinity", op_norm(far - trip->forbidden()),
               std::max(tol, 1e-5));
  }
  return report;
}

ScenarioReport run_spectrum_correspondence(const ScenarioDocument& doc, const json& args,
                                           double tol) {
  ScenarioReport report("spectrum_correspondence");
  const auto& model = as_model(doc, args.at("model").get<std::string>());
  const Matrix theta = parse_matrix(args.at("Theta"));
  const auto lambdas = parse_probes(args.at("lambdas"));
  int agreements = 0;
  for (cxd lambda : lambdas) {
    const auto check = classify_extension_point(model, theta, lambda, kDefaultTol);
    if (check.agree) ++agreements;
    report.add_note(std::string("lambda = ") + format_complex(lambda) + ": extension " +
                    to_string(check.via_extension) + ", weyl " +
                    to_string(check.via_weyl));
  }
  report.add("classification_agreement",
             static_cast<double>(lambdas.size() - agreements), 0.5);
  (void)tol;
  return report;
}

ScenarioReport run_task(const ScenarioDocument& doc, const ScenarioTask& task,
                        double tol_default) {
  const json args = json::parse(task.raw_args);
  const double tol = args.contains("tol") ? args["tol"].get<double>() : tol_default;

  if (task.op == "momentum_golden") {
    const int dim = args.contains("dim") ? args["dim"].get<int>() : 2;
    const int grid = args.contains("grid_points") ? args["grid_points"].get<int>() : 50;
    return momentum_golden(dim, grid, args.contains("tol") ? tol : 1e-12);
  }
  if (task.op == "basic_lemma_check") {
    const auto probes = parse_probes(args.at("probes"));
    return basic_lemma_check(as_herglotz(doc, args.at("F1").get<std::string>()), as_spec(doc, args.at("spec1").get<std::string>()),
                             as_herglotz(doc, args.at("F2").get<std::string>()), as_spec(doc, args.at("spec2").get<std::string>()),
                             probes, tol);
  }
  if (task.op == "full_equality_check") {
    const auto up = parse_probes(args.at("probes"));
    const auto low = parse_probes(args.at("probes_lower"));
    return full_equality_check(as_herglotz(doc, args.at("F1").get<std::string>()),
                               as_spec(doc, args.at("spec1").get<std::string>()),
                               as_herglotz(doc, args.at("F2").get<std::string>()),
                               as_spec(doc, args.at("spec2").get<std::string>()), up, low, tol);
  }
  if (task.op == "weak_derivative_check") {
    return weak_derivative_check(as_herglotz(doc, args.at("F1").get<std::string>()),
                                 as_herglotz(doc, args.at("F2").get<std::string>()),
                                 args.at("t0").get<double>(),
                                 parse_reals(args.at("y_sequence")), tol);
  }
  if (task.op == "construct_counterexample") {
    return counterexample_report(as_herglotz(doc, args.at("M1").get<std::string>()),
                                 parse_matrix(args.at("B1")),
                                 parse_complex(args.at("z0")),
                                 parse_probes(args.at("probes")),
                                 args.contains("tol") ? tol : 1e-12);
  }
  if (task.op == "uniqueness_pipeline") {
    const auto input = [&](const char* model_key, const char* f_key,
                           const char* spec_key) {
      const WeylTransformSpec& spec = as_spec(doc, args.at(spec_key).get<std::string>());
      if (args.contains(model_key))
        return PipelineInput::from_model(as_model(doc, args[model_key].get<std::string>()), spec,
                                         kDefaultTol);
      return PipelineInput::from_function(as_herglotz(doc, args.at(f_key).get<std::string>()), spec);
    };
    PipelineOptions options;
    if (args.contains("window")) options.working_window = args["window"].get<double>();
    if (args.contains("t0")) options.t0 = args["t0"].get<double>();
    if (args.contains("y_sequence")) options.y_sequence = parse_reals(args["y_sequence"]);
    const auto probes = parse_probes(args.at("probes"));
    return uniqueness_pipeline(
               input("model1", "F1", "spec1"), input("model2", "F2", "spec2"), probes,
               uniqueness_case_from_string(args.at("case").get<std::string>()), tol,
               options)
        .report;
  }
  if (task.op == "decide_similarity") {
    ScenarioReport report("decide_similarity");
    const auto& s1 = as_system(doc, args.at("sys1").get<std::string>());
    const auto& s2 = as_system(doc, args.at("sys2").get<std::string>());
    const bool expected = args.contains("expect_equivalent")
                              ? args["expect_equivalent"].get<bool>()
                              : true;
    const auto u = decide_unitary_similarity(s1, s2, kDefaultTol);
    report.add("decision_as_expected", (u.has_value() == expected) ? 0.0 : 1.0, 0.5);
    if (u) {
      const auto res = verify_similarity(s1, s2, *u);
      report.add("unitarity", res.unitarity, std::max(tol, 1e-8));
      report.add("k_intertwine", res.k_intertwine, std::max(tol, 1e-8));
      report.add("a_intertwine", res.a_intertwine, std::max(tol, 1e-8));
    }
    return report;
  }
  if (task.op == "verify_similarity") {
    ScenarioReport report("verify_similarity");
    const auto res = verify_similarity(as_system(doc, args.at("sys1").get<std::string>()),
                                       as_system(doc, args.at("sys2").get<std::string>()),
                                       parse_matrix(args.at("U")));
    report.add("unitarity", res.unitarity, tol);
    report.add("k_intertwine", res.k_intertwine, tol);
    report.add("a_intertwine", res.a_intertwine, tol);
    report.add("f_gap", res.f_gap, tol);
    return report;
  }
  if (task.op == "triplet_checks") return run_triplet_checks(doc, args, tol);
  if (task.op == "spectrum_correspondence")
    return run_spectrum_correspondence(doc, args, tol);
  if (task.op == "evaluate_check") {
    ScenarioReport report("evaluate_check");
    const auto& f = as_herglotz(doc, args.at("function").get<std::string>());
    const cxd z = parse_complex(args.at("z"));
    const Matrix expected = parse_matrix(args.at("expected"));
    report.add("value", op_norm(f.evaluate(z) - expected), tol);
    return report;
  }
  throw std::invalid_argument("unknown task op '" + task.op + "'");
}

}  // namespace

const ScenarioObject& ScenarioDocument::object(const std::string& name) const {
  const auto it = objects.find(name);
  if (it == objects.end())
    throw std::invalid_argument("undefined object '" + name + "'");
  return it->second;
}

ScenarioDocument ScenarioDocument::parse_file(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read document '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), tol);
}

ScenarioDocument ScenarioDocument::parse_text(const std::string& text, double tol) {
  const json j = json::parse(text);  // parse errors carry line/position
  ScenarioDocument doc;
  doc.version = j.value("version", 1);
  if (doc.version != 1)
    throw std::invalid_argument("unsupported document version " +
                                std::to_string(doc.version));
  doc.seed = j.value("seed", static_cast<std::uint64_t>(0));
  if (j.contains("objects")) {
    for (const auto& [name, obj] : j["objects"].items())
      doc.objects.emplace(name, parse_object(obj, doc, tol));
  }
  if (j.contains("tasks")) {
    for (const auto& t : j["tasks"])
      doc.tasks.push_back({t.at("op").get<std::string>(), t.dump()});
  }
  return doc;
}

void write_report_file(const ScenarioReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write report '" + path + "'");
  out << "# weylkit report generated " << timestamp() << "\n";
  report.write(out);
}

RunResult run_document(const ScenarioDocument& doc, const std::string& out_dir,
                       double tol_default) {
  std::filesystem::create_directories(out_dir);
  RunResult result;
  for (size_t i = 0; i < doc.tasks.size(); ++i) {
    ScenarioReport report = run_task(doc, doc.tasks[i], tol_default);
    char name[64];
    std::snprintf(name, sizeof(name), "task_%02zu_%s.txt", i, doc.tasks[i].op.c_str());
    write_report_file(report, (std::filesystem::path(out_dir) / name).string());
    result.reports.push_back(std::move(report));
  }
  std::ofstream summary(std::filesystem::path(out_dir) / "summary.txt");
  summary << "# weylkit summary generated " << timestamp() << "\n";
  summary << "seed: " << doc.seed << "\n";
  bool all_pass = true;
  for (size_t i = 0; i < result.reports.size(); ++i) {
    const bool pass = result.reports[i].pass();
    all_pass = all_pass && pass;
    summary << "task " << i << " " << result.reports[i].name() << ": "
            << (pass ? "pass" : "fail") << "\n";
  }
  summary << "overall: " << (all_pass ? "pass" : "fail") << "\n";
  result.exit_code = all_pass ? 0 : 2;
  return result;
}

int sample_object(const ScenarioDocument& doc, const std::string& object_name,
                  const std::string& grid_spec, const std::string& out_path,
                  double tol) {
  // grid: "x0,y0:x1,y1:count" inclusive linear path
  double x0, y0, x1, y1;
  int count;
  if (std::sscanf(grid_spec.c_str(), "%lf,%lf:%lf,%lf:%d", &x0, &y0, &x1, &y1, &count) != 5 ||
      count < 1)
    throw std::invalid_argument("grid spec must be 'x0,y0:x1,y1:count'");

  const ScenarioObject& obj = doc.object(object_name);
  std::function<Matrix(cxd)> eval;
  int dim = 0;
  if (const auto* f = std::get_if<HerglotzMatrixFunction>(&obj)) {
    dim = f->dim();
    eval = [f, tol](cxd z) { return f->evaluate(z); };
  } else if (const auto* t = std::get_if<TransformObject>(&obj)) {
    const auto& f = as_herglotz(doc, t->function);
    const auto& s = as_spec(doc, t->spec);
    dim = s.dim();
    eval = [&f, &s, tol](cxd z) { return weyl_transform(f, s, z, tol); };
  } else if (const auto* m = std::get_if<OrdinaryTripletModel>(&obj)) {
    dim = m->base().deficiency();
    eval = [m, tol](cxd z) { return m->weyl_function(z, tol); };
  } else if (const auto* b = std::get_if<BTInfTriplet>(&obj)) {
    dim = b->base().deficiency();
    eval = [b, tol](cxd z) { return b->weyl_function(z, tol); };
  } else if (const auto* s = std::get_if<PqsSystem>(&obj)) {
    dim = s->input_dim();
    eval = [s, tol](cxd z) { return s->transfer_function(z, tol); };
  } else {
    throw std::invalid_argument("object '" + object_name +
                                "' cannot be sampled (needs a function-like object)");
  }

  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot write table '" + out_path + "'");
  out << "re_z,im_z,status";
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      out << ",m" << r << c << "_re,m" << r << c << "_im";
  out << "\n";
  for (int i = 0; i < count; ++i) {
    const double s = (count == 1) ? 0.0 : static_cast<double>(i) / (count - 1);
    const cxd z(x0 + s * (x1 - x0), y0 + s * (y1 - y0));
    Matrix value;
    int status = 0;
    try {
      value = eval(z);
    } catch (const SingularityError&) {
      value = Matrix::Zero(dim, dim);
      status = 1;  // sentinel row: the grid touched a singularity
    }
    out << csv_number(z.real()) << "," << csv_number(z.imag()) << "," << status;
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        out << "," << csv_number(value(r, c).real()) << ","
            << csv_number(value(r, c).imag());
    out << "\n";
  }
  return 0;
}

}  // namespace weylkit
