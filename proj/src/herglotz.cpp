#include "weylkit/herglotz.hpp"

#include <algorithm>
#include <cmath>

namespace weylkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Neville extrapolation of g(y) to y = 0 over a decreasing y sequence.
struct Extrapolated {
  Matrix value;
  double residual;
};

Extrapolated extrapolate_to_zero(const std::vector<double>& ys,
                                 const std::function<Matrix(double)>& g) {
  const size_t n = ys.size();
  std::vector<Matrix> table;
  table.reserve(n);
  for (double y : ys) table.push_back(g(y));
  Matrix prev_diag = table[0];
  for (size_t level = 1; level < n; ++level) {
    for (size_t i = 0; i + level < n; ++i) {
      const double y0 = ys[i], y1 = ys[i + level];
      table[i] = (table[i + 1] * y0 - table[i] * y1) / (y0 - y1);
    }
    if (level + 1 == n) break;
    prev_diag = table[0];
  }
  if (n == 1) return {table[0], op_norm(table[0])};
  return {table[0], op_norm(table[0] - prev_diag)};
}

void require_upper(std::span<const cxd> probes, const char* who) {
  if (probes.empty()) throw std::invalid_argument(std::string(who) + ": empty probe set");
  for (cxd z : probes)
    if (z.imag() <= 0.0)
      throw std::invalid_argument(std::string(who) +
                                  ": probe off the upper half-plane at " + format_complex(z));
}

// Elementary windows spanning both supports plus off-support ones, used
// for the ac-mass relations.
std::vector<std::pair<double, double>> window_family(const TildeData& t1,
                                                     const TildeData& t2) {
  std::vector<double> cuts;
  const auto collect = [&](const MatrixMeasure& m) {
    for (const auto& p : m.ac_pieces()) {
      cuts.push_back(p.lo);
      cuts.push_back(p.hi);
    }
  };
  collect(t1.sigma);
  collect(t2.sigma);
  double radius = std::max({1.0, t1.sigma.support_radius(), t2.sigma.support_radius()});
  cuts.push_back(-radius - 1.0);
  cuts.push_back(radius + 1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<std::pair<double, double>> windows;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) windows.emplace_back(cuts[i], cuts[i + 1]);
  windows.emplace_back(cuts.front(), cuts.back());
  return windows;
}

double singular_part_residual(const MatrixMeasure& s1, const MatrixMeasure& s2) {
  struct Entry {
    double t;
    Matrix w1, w2;
  };
  std::vector<Entry> entries;
  const int d = s1.value_dim();
  const auto feed = [&](const MatrixMeasure& m, bool first) {
    for (const auto& a : m.atoms()) {
      bool placed = false;
      for (auto& e : entries) {
        if (std::abs(e.t - a.point) <= 1e-8 * std::max(1.0, std::abs(a.point))) {
          (first ? e.w1 : e.w2) += a.weight;
          placed = true;
          break;
        }
      }
      if (!placed) {
        Entry e{a.point, Matrix::Zero(d, d), Matrix::Zero(d, d)};
        (first ? e.w1 : e.w2) = a.weight;
        entries.push_back(std::move(e));
      }
    }
  };
  feed(s1, true);
  feed(s2, false);
  double residual = 0.0;
  for (const auto& e : entries) residual = std::max(residual, op_norm(e.w1 - e.w2));
  return residual;
}

}  // namespace

HerglotzMatrixFunction::HerglotzMatrixFunction(Matrix c, Matrix d, MatrixMeasure sigma,
                                               Matrix s, double tol)
    : dim_(sigma.value_dim()),
      c_(std::move(c)),
      d_(std::move(d)),
      sigma_(std::move(sigma)),
      s_(std::move(s)) {
  if (c_.rows() != dim_ || c_.cols() != dim_ || d_.rows() != dim_ || d_.cols() != dim_ ||
      s_.rows() != dim_ || s_.cols() != dim_)
    throw std::invalid_argument("herglotz parameter dimensions disagree with the measure");
  if (!is_hermitian(c_, tol)) throw std::invalid_argument("C must be Hermitian");
  if (!is_psd(d_, tol)) throw std::invalid_argument("D must be Hermitian PSD");
  if (!is_psd(s_, tol)) throw std::invalid_argument("S must be Hermitian PSD");
  c_ = hermitian_part(c_);
  d_ = hermitian_part(d_);
  s_ = hermitian_part(s_);
}

HerglotzMatrixFunction HerglotzMatrixFunction::constant(const Matrix& c, double tol) {
  const int n = static_cast<int>(c.rows());
  return HerglotzMatrixFunction(c, Matrix::Zero(n, n), MatrixMeasure(n),
                                Matrix::Zero(n, n), tol);
}

HerglotzMatrixFunction HerglotzMatrixFunction::zero(int dim) {
  return constant(Matrix::Zero(dim, dim), kDefaultTol);
}

Matrix HerglotzMatrixFunction::evaluate(cxd z) const {
  if (z.imag() == 0.0) {
    if (op_norm(s_) > 0.0)
      throw SingularityError(
          "evaluation on the real axis: the half-plane term has full-line support");
    return c_ + z * d_ + sigma_.cauchy_transform(z);
  }
  const cxd unit = (z.imag() > 0.0) ? cxd(0.0, 1.0) : cxd(0.0, -1.0);
  return c_ + z * d_ + sigma_.cauchy_transform(z) + unit * s_;
}

WeylTransformSpec::WeylTransformSpec(Matrix b_in, Matrix k_in, double tol)
    : b(std::move(b_in)), k(std::move(k_in)) {
  if (b.rows() != b.cols() || k.rows() != k.cols() || b.rows() != k.rows())
    throw std::invalid_argument("transform spec requires square B, K of equal size");
  if (!is_invertible(k, tol))
    throw std::invalid_argument("transform spec requires invertible K");
}

Matrix weyl_transform(const HerglotzMatrixFunction& f, const WeylTransformSpec& spec,
                      cxd z, double tol) {
  if (spec.dim() != f.dim())
    throw std::invalid_argument("transform spec dimension disagrees with the function");
  const Matrix pencil = spec.b - f.evaluate(z);
  const Matrix inv =
      guarded_inverse(pencil, tol, "B - F(z) at z = " + format_complex(z));
  return spec.k.adjoint() * inv * spec.k;
}

Matrix TildeData::ac_mass(double lo, double hi) const {
  if (!(lo < hi)) throw std::invalid_argument("ac_mass requires lo < hi");
  auto [ac, sing] = sigma.lebesgue_decompose();
  return ac.apply(IntervalSet::interval(lo, hi)) + ((hi - lo) / kPi) * shift;
}

TildeData tilde_data(const HerglotzMatrixFunction& f, const WeylTransformSpec& spec,
                     double tol) {
  if (spec.dim() != f.dim())
    throw std::invalid_argument("transform spec dimension disagrees with the function");
  const Matrix k_inv = guarded_inverse(spec.k, tol, "K");
  TildeData t{f.sigma().congruence(k_inv), k_inv * f.s() * k_inv.adjoint(),
              k_inv * f.c() * k_inv.adjoint(), k_inv * f.d() * k_inv.adjoint(),
              k_inv * spec.b * k_inv.adjoint()};
  return t;
}

ScenarioReport basic_lemma_check(const HerglotzMatrixFunction& f1,
                                 const WeylTransformSpec& s1,
                                 const HerglotzMatrixFunction& f2,
                                 const WeylTransformSpec& s2,
                                 std::span<const cxd> probes_upper, double tol) {
  require_upper(probes_upper, "basic_lemma_check");
  ScenarioReport report("basic_lemma_check");

  double transform_residual = 0.0;
  for (cxd z : probes_upper)
    transform_residual = std::max(
        transform_residual, op_norm(weyl_transform(f1, s1, z, kDefaultTol) -
                                    weyl_transform(f2, s2, z, kDefaultTol)));
  report.add("transform_equality", transform_residual, tol);

  const TildeData t1 = tilde_data(f1, s1, kDefaultTol);
  const TildeData t2 = tilde_data(f2, s2, kDefaultTol);

  report.add("singular_parts", singular_part_residual(t1.sigma, t2.sigma), tol);

  const Matrix im_gap = imaginary_part(t2.b) - imaginary_part(t1.b);
  double ac_residual = 0.0;
  for (const auto& [lo, hi] : window_family(t1, t2)) {
    const Matrix lhs = t2.ac_mass(lo, hi) - t1.ac_mass(lo, hi);
    ac_residual = std::max(ac_residual, op_norm(lhs - ((hi - lo) / kPi) * im_gap));
  }
  report.add("ac_density_relation", ac_residual, tol);

  report.add("real_parameter_relation",
             op_norm((t1.c - hermitian_part(t1.b)) - (t2.c - hermitian_part(t2.b))),
             tol);
  report.add("linear_parameter", op_norm(t1.d - t2.d), tol);
  return report;
}

ScenarioReport full_equality_check(const HerglotzMatrixFunction& f1,
                                   const WeylTransformSpec& s1,
                                   const HerglotzMatrixFunction& f2,
                                   const WeylTransformSpec& s2,
                                   std::span<const cxd> probes_upper,
                                   std::span<const cxd> probes_lower, double tol) {
  require_upper(probes_upper, "full_equality_check");
  if (probes_lower.empty())
    throw std::invalid_argument("full_equality_check: empty lower probe set");
  for (cxd z : probes_lower)
    if (z.imag() >= 0.0)
      throw std::invalid_argument("full_equality_check: probe off the lower half-plane at " +
                                  format_complex(z));

  ScenarioReport report("full_equality_check");
  const auto mismatch = [&](std::span<const cxd> probes) {
    double r = 0.0;
    for (cxd z : probes)
      r = std::max(r, op_norm(weyl_transform(f1, s1, z, kDefaultTol) -
                              weyl_transform(f2, s2, z, kDefaultTol)));
    return r;
  };
  report.add("transform_equality_upper", mismatch(probes_upper), tol);
  report.add("transform_equality_lower", mismatch(probes_lower), tol);

  const TildeData t1 = tilde_data(f1, s1, kDefaultTol);
  const TildeData t2 = tilde_data(f2, s2, kDefaultTol);

  report.add("singular_parts", singular_part_residual(t1.sigma, t2.sigma), tol);
  double ac_residual = 0.0;
  for (const auto& [lo, hi] : window_family(t1, t2))
    ac_residual = std::max(ac_residual, op_norm(t1.ac_mass(lo, hi) - t2.ac_mass(lo, hi)));
  report.add("ac_equality", ac_residual, tol);
  report.add("im_b_equality", op_norm(imaginary_part(t1.b) - imaginary_part(t2.b)), tol);
  report.add("real_parameter_relation",
             op_norm((t1.c - hermitian_part(t1.b)) - (t2.c - hermitian_part(t2.b))),
             tol);
  report.add("linear_parameter", op_norm(t1.d - t2.d), tol);
  return report;
}

ScenarioReport weak_derivative_check(const HerglotzMatrixFunction& f1,
                                     const HerglotzMatrixFunction& f2, double t0,
                                     const std::vector<double>& y_sequence, double tol) {
  if (y_sequence.empty()) throw std::invalid_argument("empty y sequence");
  if (f1.sigma().atom_at(t0, kDefaultTol) || f2.sigma().atom_at(t0, kDefaultTol))
    throw std::invalid_argument("weak derivative undefined at an atom");

  const auto numeric = [&](const HerglotzMatrixFunction& f) {
    return extrapolate_to_zero(y_sequence, [&](double y) {
      return imaginary_part(f.evaluate(cxd(t0, y))) / kPi;
    });
  };
  const auto represented = [&](const HerglotzMatrixFunction& f) -> Matrix {
    return f.sigma().density_at(t0) + f.s() / kPi;
  };

  const Extrapolated n1 = numeric(f1);
  const Extrapolated n2 = numeric(f2);
  ScenarioReport report("weak_derivative_check");
  report.add("weak_derivative_equality", op_norm(n1.value - n2.value), tol);
  report.add("representation_consistency_1", op_norm(n1.value - represented(f1)), tol);
  report.add("representation_consistency_2", op_norm(n2.value - represented(f2)), tol);
  report.add_note("extrapolation residuals " + std::to_string(n1.residual) + ", " +
                  std::to_string(n2.residual));
  return report;
}

RecoveredParameters recover_parameters(const std::function<Matrix(cxd)>& evaluator,
                                       double window_lo, double window_hi,
                                       const std::vector<double>& y_sequence,
                                       double tol) {
  if (y_sequence.empty()) throw std::invalid_argument("empty y sequence");
  RecoveredParameters out;

  // D = lim F(iY)/(iY) along Y = 1/y, extrapolated in y.
  const Extrapolated dlim = extrapolate_to_zero(y_sequence, [&](double y) {
    const cxd z(0.0, 1.0 / y);
    return Matrix(evaluator(z) / z);
  });
  out.d = hermitian_part(dlim.value);
  if (dlim.residual > 1e-3 * std::max(1.0, op_norm(out.d))) {
    out.note += "linear-term limit residual " + std::to_string(dlim.residual) + "; ";
  }

  StieltjesResult inv = stieltjes_invert(
      [&](double x, double y) { return Matrix(imaginary_part(evaluator(cxd(x, y)))); },
      window_lo, window_hi, y_sequence, tol);
  out.sigma = inv.estimate;
  out.converged = inv.converged && dlim.residual <= 1e-3 * std::max(1.0, op_norm(out.d));
  out.note += inv.note;

  const cxd zi(0.0, 1.0);
  const Matrix c_raw =
      evaluator(zi) - zi * out.d - out.sigma.cauchy_transform(zi);
  out.c = hermitian_part(c_raw);
  out.symmetry_residual = op_norm(c_raw - out.c);
  return out;
}

Matrix lft_weyl(const HerglotzMatrixFunction& f, const LftBlocks& x, cxd z, double tol) {
  const int k = f.dim();
  for (const Matrix* m : {&x.x1, &x.x2, &x.x3, &x.x4})
    if (m->rows() != k || m->cols() != k)
      throw std::invalid_argument("LFT blocks must be k x k");
  Matrix full(2 * k, 2 * k);
  full << x.x1, x.x2, x.x3, x.x4;
  if (!is_invertible(full, tol))
    throw std::invalid_argument("LFT block matrix is not invertible");
  const Matrix fz = f.evaluate(z);
  const Matrix pencil = x.x1 + x.x2 * fz;
  const Matrix inv = guarded_inverse(
      pencil, tol, "X1 + X2 F(z) at z = " + format_complex(z));
  return (x.x3 + x.x4 * fz) * inv;
}

Matrix characteristic_function(const HerglotzMatrixFunction& f, const Matrix& b,
                               const Matrix& k, const Matrix& j, cxd z, double tol) {
  const int n = f.dim();
  if (b.rows() != n || b.cols() != n || k.rows() != n || k.cols() != n ||
      j.rows() != n || j.cols() != n)
    throw std::invalid_argument("characteristic function blocks must match the function");
  if (!is_hermitian(j, tol) || op_norm(j * j - identity(n)) > tol * 10.0)
    throw std::invalid_argument("J must be a signature matrix");
  const Matrix inv = guarded_inverse(b.adjoint() - f.evaluate(z), tol,
                                     "B* - F(z) at z = " + format_complex(z));
  return identity(n) + cxd(0.0, 2.0) * k.adjoint() * inv * k * j;
}

}  // namespace weylkit
