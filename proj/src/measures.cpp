#include "weylkit/measures.hpp"

#include <algorithm>
#include <cmath>

namespace weylkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double point_eps(double t) { return 1e-12 * std::max(1.0, std::abs(t)); }

// Gauss-Legendre nodes/weights on [-1,1] via Golub-Welsch.
struct GaussRule {
  Eigen::VectorXd nodes, weights;
};

const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    constexpr int n = 8;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
      const double b = k / std::sqrt(4.0 * k * k - 1.0);
      jac(k, k - 1) = b;
      jac(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    GaussRule r;
    r.nodes = es.eigenvalues();
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
      const double v = es.eigenvectors()(0, i);
      r.weights(i) = 2.0 * v * v;
    }
    return r;
  }();
  return rule;
}

// Composite Gauss-Legendre integral of a matrix-valued function, with the
// panel width tied to the smoothing scale y of the integrand.
Matrix integrate_matrix(const std::function<Matrix(double)>& f, double a, double b,
                        double scale, int dim) {
  Matrix acc = Matrix::Zero(dim, dim);
  if (b <= a) return acc;
  const double width = b - a;
  const double target = std::clamp(scale * 0.5, width / 20000.0, width);
  const int panels = std::max(1, static_cast<int>(std::ceil(width / target)));
  const auto& rule = gauss_rule();
  const double h = width / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int i = 0; i < rule.nodes.size(); ++i) {
      const double x = lo + 0.5 * h * (rule.nodes(i) + 1.0);
      acc += (0.5 * h * rule.weights(i)) * f(x);
    }
  }
  return acc;
}

Matrix clip_to_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

IntervalSet IntervalSet::interval(double a, double b) {
  IntervalSet s;
  s.add_interval(a, b);
  return s;
}

IntervalSet IntervalSet::point(double t) {
  IntervalSet s;
  s.add_point(t);
  return s;
}

IntervalSet& IntervalSet::add_interval(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("interval requires a < b");
  intervals_.emplace_back(a, b);
  normalize();
  return *this;
}

IntervalSet& IntervalSet::add_point(double t) {
  points_.push_back(t);
  normalize();
  return *this;
}

void IntervalSet::normalize() {
  std::sort(intervals_.begin(), intervals_.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : intervals_) {
    if (!merged.empty() && iv.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, iv.second);
    } else {
      merged.push_back(iv);
    }
  }
  intervals_ = std::move(merged);
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  // points already inside an interval carry no extra information
  std::erase_if(points_, [&](double t) {
    for (const auto& iv : intervals_)
      if (t >= iv.first && t < iv.second) return true;
    return false;
  });
}

bool IntervalSet::contains_point(double t) const {
  for (const auto& iv : intervals_)
    if (t >= iv.first && t < iv.second) return true;
  for (double p : points_)
    if (std::abs(p - t) <= point_eps(t)) return true;
  return false;
}

double IntervalSet::overlap_length(double lo, double hi) const {
  double total = 0.0;
  for (const auto& iv : intervals_) {
    const double a = std::max(lo, iv.first);
    const double b = std::min(hi, iv.second);
    if (b > a) total += b - a;
  }
  return total;
}

double IntervalSet::total_length() const {
  double total = 0.0;
  for (const auto& iv : intervals_) total += iv.second - iv.first;
  return total;
}

MatrixMeasure::MatrixMeasure(int value_dim) : value_dim_(value_dim) {
  if (value_dim < 1) throw std::invalid_argument("value_dim must be positive");
}

MatrixMeasure MatrixMeasure::from_parts(int value_dim, std::vector<Atom> atoms,
                                        std::vector<DensityPiece> pieces, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  MatrixMeasure m(value_dim);

  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.point < b.point; });
  for (auto& a : atoms) {
    if (a.weight.rows() != value_dim || a.weight.cols() != value_dim)
      throw std::invalid_argument("atom weight has wrong dimension");
    if (!is_psd(a.weight, tol))
      throw std::invalid_argument("atom weight is not Hermitian PSD");
    a.weight = hermitian_part(a.weight);
    if (op_norm(a.weight) == 0.0) continue;
    if (!m.atoms_.empty() && a.point - m.atoms_.back().point <= tol) {
      m.atoms_.back().weight += a.weight;  // merge coincident points
    } else {
      m.atoms_.push_back(a);
    }
  }

  std::sort(pieces.begin(), pieces.end(),
            [](const DensityPiece& a, const DensityPiece& b) { return a.lo < b.lo; });
  for (auto& p : pieces) {
    if (!(p.lo < p.hi)) throw std::invalid_argument("density piece requires lo < hi");
    if (p.density.rows() != value_dim || p.density.cols() != value_dim)
      throw std::invalid_argument("density has wrong dimension");
    if (!is_psd(p.density, tol))
      throw std::invalid_argument("density is not Hermitian PSD");
    p.density = hermitian_part(p.density);
    if (op_norm(p.density) == 0.0) continue;
    if (!m.pieces_.empty() && p.lo < m.pieces_.back().hi - tol)
      throw std::invalid_argument("density pieces overlap");
    m.pieces_.push_back(p);
  }
  return m;
}

Matrix MatrixMeasure::apply(const IntervalSet& set) const {
  Matrix acc = Matrix::Zero(value_dim_, value_dim_);
  for (const auto& a : atoms_)
    if (set.contains_point(a.point)) acc += a.weight;
  for (const auto& p : pieces_) acc += set.overlap_length(p.lo, p.hi) * p.density;
  return acc;
}

std::pair<MatrixMeasure, MatrixMeasure> MatrixMeasure::lebesgue_decompose() const {
  MatrixMeasure ac(value_dim_), s(value_dim_);
  ac.pieces_ = pieces_;
  s.atoms_ = atoms_;
  return {ac, s};
}

Matrix MatrixMeasure::cauchy_transform(cxd z) const {
  if (z.imag() == 0.0 && on_support(z.real(), kDefaultTol))
    throw SingularityError("cauchy_transform evaluated on the support at " +
                           format_complex(z));
  Matrix acc = Matrix::Zero(value_dim_, value_dim_);
  for (const auto& a : atoms_) {
    const double t = a.point;
    acc += (1.0 / (t - z) - t / (1.0 + t * t)) * a.weight;
  }
  for (const auto& p : pieces_) {
    // d/dt [log(t-z) - log(1+t^2)/2] = 1/(t-z) - t/(1+t^2)
    const cxd log_term = std::log(cxd(p.hi) - z) - std::log(cxd(p.lo) - z);
    const double sq = 0.5 * std::log((1.0 + p.hi * p.hi) / (1.0 + p.lo * p.lo));
    acc += (log_term - sq) * p.density;
  }
  return acc;
}

Matrix MatrixMeasure::poisson_transform(double x, double y) const {
  if (y <= 0.0) throw std::invalid_argument("poisson_transform requires y > 0");
  Matrix acc = Matrix::Zero(value_dim_, value_dim_);
  for (const auto& a : atoms_) {
    const double dt = a.point - x;
    acc += (y / (dt * dt + y * y)) * a.weight;
  }
  for (const auto& p : pieces_) {
    const double v = std::atan((p.hi - x) / y) - std::atan((p.lo - x) / y);
    acc += v * p.density;
  }
  return acc;
}

Matrix MatrixMeasure::density_at(double t) const {
  for (const auto& p : pieces_)
    if (t >= p.lo && t < p.hi) return p.density;
  return Matrix::Zero(value_dim_, value_dim_);
}

bool MatrixMeasure::atom_at(double t, double tol) const {
  for (const auto& a : atoms_)
    if (std::abs(a.point - t) <= tol) return true;
  return false;
}

bool MatrixMeasure::on_support(double t, double tol) const {
  if (atom_at(t, tol)) return true;
  for (const auto& p : pieces_)
    if (t >= p.lo - tol && t <= p.hi + tol) return true;
  return false;
}

double MatrixMeasure::support_radius() const {
  double r = 0.0;
  for (const auto& a : atoms_) r = std::max(r, std::abs(a.point));
  for (const auto& p : pieces_) r = std::max({r, std::abs(p.lo), std::abs(p.hi)});
  return r;
}

MatrixMeasure MatrixMeasure::congruence(const Matrix& k_inv) const {
  if (k_inv.rows() != k_inv.cols() || k_inv.rows() != value_dim_)
    throw std::invalid_argument("congruence matrix has wrong dimension");
  MatrixMeasure out(value_dim_);
  out.atoms_ = atoms_;
  out.pieces_ = pieces_;
  for (auto& a : out.atoms_) a.weight = k_inv * a.weight * k_inv.adjoint();
  for (auto& p : out.pieces_) p.density = k_inv * p.density * k_inv.adjoint();
  return out;
}

MatrixMeasure MatrixMeasure::scaled(double c) const {
  if (c < 0.0) throw std::invalid_argument("negative scale");
  MatrixMeasure out(value_dim_);
  if (c == 0.0) return out;
  out.atoms_ = atoms_;
  out.pieces_ = pieces_;
  for (auto& a : out.atoms_) a.weight *= c;
  for (auto& p : out.pieces_) p.density *= c;
  return out;
}

MatrixMeasure MatrixMeasure::plus(const MatrixMeasure& other, double tol) const {
  if (other.value_dim_ != value_dim_)
    throw std::invalid_argument("measures have different value dimensions");
  std::vector<Atom> atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());

  // Refine overlapping pieces at the union of all endpoints.
  std::vector<double> cuts;
  for (const auto& p : pieces_) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  for (const auto& p : other.pieces_) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<DensityPiece> pieces;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const double mid = 0.5 * (lo + hi);
    Matrix d = density_at(mid) + other.density_at(mid);
    if (op_norm(d) > 0.0) pieces.push_back({lo, hi, d});
  }
  return from_parts(value_dim_, std::move(atoms), std::move(pieces), tol);
}

bool MatrixMeasure::window_equivalent_to_lebesgue(double window, double tol) const {
  double cursor = -window;
  for (const auto& p : pieces_) {
    if (p.hi <= cursor) continue;
    if (p.lo > cursor + tol) return false;  // uncovered gap
    const double scale = std::max(1.0, op_norm(p.density));
    if (min_eigenvalue_hermitian(p.density) <= tol * scale) return false;
    cursor = p.hi;
    if (cursor >= window) return true;
  }
  return cursor >= window;
}

MatrixMeasure spectral_measure(const Matrix& hermitian, double tol) {
  if (hermitian.rows() != hermitian.cols())
    throw std::invalid_argument("spectral_measure requires a square matrix");
  if (!is_hermitian(hermitian, tol))
    throw std::invalid_argument("spectral_measure requires a Hermitian matrix");
  const int n = static_cast<int>(hermitian.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(hermitian));
  const Eigen::VectorXd ev = es.eigenvalues();
  const double cluster_gap = tol * std::max(1.0, std::abs(ev(n - 1)) + std::abs(ev(0)));

  std::vector<Atom> atoms;
  int start = 0;
  while (start < n) {
    int stop = start + 1;
    while (stop < n && ev(stop) - ev(stop - 1) <= cluster_gap) ++stop;
    const Matrix v = es.eigenvectors().middleCols(start, stop - start);
    double point = 0.0;
    for (int i = start; i < stop; ++i) point += ev(i);
    point /= (stop - start);
    atoms.push_back({point, v * v.adjoint()});
    start = stop;
  }
  return MatrixMeasure::from_parts(n, std::move(atoms), {}, tol);
}

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> breakpoints)
    : pts_(std::move(breakpoints)) {
  if (pts_.empty()) throw std::invalid_argument("piecewise-linear needs breakpoints");
  std::sort(pts_.begin(), pts_.end());
  for (size_t i = 0; i + 1 < pts_.size(); ++i)
    if (pts_[i + 1].first <= pts_[i].first)
      throw std::invalid_argument("piecewise-linear breakpoints must be strictly increasing");
}

PiecewiseLinear PiecewiseLinear::constant(double v) { return PiecewiseLinear({{0.0, v}}); }

double PiecewiseLinear::operator()(double t) const {
  if (t <= pts_.front().first) return pts_.front().second;
  if (t >= pts_.back().first) return pts_.back().second;
  for (size_t i = 0; i + 1 < pts_.size(); ++i) {
    if (t <= pts_[i + 1].first) {
      const auto& [x0, v0] = pts_[i];
      const auto& [x1, v1] = pts_[i + 1];
      return v0 + (v1 - v0) * (t - x0) / (x1 - x0);
    }
  }
  return pts_.back().second;
}

double PiecewiseLinear::average(double a, double b) const {
  if (!(a < b)) throw std::invalid_argument("average requires a < b");
  // exact trapezoid integration segment by segment
  std::vector<double> cuts{a, b};
  for (const auto& [x, v] : pts_)
    if (x > a && x < b) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  double integral = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    integral += 0.5 * ((*this)(lo) + (*this)(hi)) * (hi - lo);
  }
  return integral / (b - a);
}

bool PiecewiseLinear::nonnegative() const {
  for (const auto& [x, v] : pts_)
    if (v < 0.0) return false;
  return true;
}

MatrixMeasure weight_measure(const MatrixMeasure& sigma, const PiecewiseLinear& phi,
                             double tol) {
  if (!phi.nonnegative())
    throw std::invalid_argument("weight function must be nonnegative");
  std::vector<Atom> atoms;
  for (const auto& a : sigma.atoms()) {
    const double w = phi(a.point);
    if (w > 0.0) atoms.push_back({a.point, w * a.weight});
  }
  std::vector<DensityPiece> pieces;
  for (const auto& p : sigma.ac_pieces()) {
    std::vector<double> cuts{p.lo, p.hi};
    for (const auto& [x, v] : phi.breakpoints())
      if (x > p.lo && x < p.hi) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double avg = phi.average(cuts[i], cuts[i + 1]);
      if (avg > 0.0) pieces.push_back({cuts[i], cuts[i + 1], avg * p.density});
    }
  }
  return MatrixMeasure::from_parts(sigma.value_dim(), std::move(atoms), std::move(pieces),
                                   tol);
}

namespace {

// Neville extrapolation of g(y) -> g(0) over a decreasing y sequence.
// Returns the full-order extrapolant and the gap to the previous order as
// a convergence indicator.
struct Extrapolation {
  Matrix value;
  double residual;
};

Extrapolation richardson(const std::vector<double>& ys,
                         const std::function<Matrix(double)>& g) {
  const size_t n = ys.size();
  std::vector<Matrix> table;
  table.reserve(n);
  for (double y : ys) table.push_back(g(y));
  if (n == 1) return {table[0], op_norm(table[0])};
  Matrix prev_diag = table[0];
  for (size_t level = 1; level < n; ++level) {
    for (size_t i = 0; i + level < n; ++i) {
      const double y0 = ys[i], y1 = ys[i + level];
      table[i] = (table[i + 1] * y0 - table[i] * y1) / (y0 - y1);
    }
    if (level + 1 == n) break;
    prev_diag = table[0];
  }
  return {table[0], op_norm(table[0] - prev_diag)};
}

}  // namespace

StieltjesResult stieltjes_invert(const std::function<Matrix(double, double)>& im_f,
                                 double window_lo, double window_hi,
                                 const std::vector<double>& y_sequence, double tol,
                                 const StieltjesOptions& options) {
  if (!(window_lo < window_hi)) throw std::invalid_argument("empty window");
  if (y_sequence.empty()) throw std::invalid_argument("empty y sequence");
  for (size_t i = 0; i + 1 < y_sequence.size(); ++i)
    if (y_sequence[i + 1] >= y_sequence[i])
      throw std::invalid_argument("y sequence must be strictly decreasing");
  if (y_sequence.back() <= 0.0) throw std::invalid_argument("y values must be positive");
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");

  const Matrix probe = im_f(0.5 * (window_lo + window_hi), y_sequence.front());
  const int d = static_cast<int>(probe.rows());
  const double y_min = y_sequence.back();

  const auto mass_over = [&](double a, double b, const std::vector<double>& ys) {
    return richardson(ys, [&](double y) {
      return integrate_matrix([&](double x) { return im_f(x, y); }, a, b, y, d) / kPi;
    });
  };

  // Total mass over the window.
  Extrapolation total = mass_over(window_lo, window_hi, y_sequence);

  // Atom scan: y * trace Im F(x+iy) is ~ the trace weight at an atom and
  // O(y) elsewhere.
  const double width = window_hi - window_lo;
  const int scan_n = std::max(512, static_cast<int>(std::ceil(4.0 * width / y_min)));
  std::vector<double> candidates;
  const auto peak = [&](double x) { return y_min * im_f(x, y_min).real().trace(); };
  double prev2 = 0.0, prev1 = 0.0;
  for (int i = 0; i <= scan_n; ++i) {
    const double x = window_lo + width * i / scan_n;
    const double v = peak(x);
    if (i >= 2 && prev1 > prev2 && prev1 >= v && prev1 > options.atom_mass_floor)
      candidates.push_back(window_lo + width * (i - 1) / scan_n);
    prev2 = prev1;
    prev1 = v;
  }

  std::vector<Atom> atoms;
  std::string note;
  for (double c : candidates) {
    // golden-section refinement of the peak location
    double a = std::max(window_lo, c - 2.0 * width / scan_n);
    double b = std::min(window_hi, c + 2.0 * width / scan_n);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = peak(x1), f2 = peak(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-13 * std::max(1.0, std::abs(c)); ++it) {
      if (f1 < f2) {
        a = x1; x1 = x2; f1 = f2;
        x2 = a + gr * (b - a); f2 = peak(x2);
      } else {
        b = x2; x2 = x1; f2 = f1;
        x1 = b - gr * (b - a); f1 = peak(x1);
      }
    }
    const double t0 = 0.5 * (a + b);

    // Mass concentration under interval halving separates the atom from a
    // locally constant density background: W(h) = W_atom + c*h.
    double h = std::min({0.1 * width, t0 - window_lo, window_hi - t0});
    for (double other : candidates)
      if (other != c) h = std::min(h, std::abs(other - c) / 3.0);
    if (h <= 0.0) continue;
    std::vector<double> ys;
    for (double y : y_sequence)
      if (y <= h / 10.0) ys.push_back(y);
    if (ys.empty()) ys.push_back(y_min);
    if (ys.size() == 1) note += "atom extrapolation at " + std::to_string(t0) +
                                " used a single y level; ";
    const Matrix w_h = mass_over(t0 - h, t0 + h, ys).value;
    const Matrix w_h2 = mass_over(t0 - h / 2.0, t0 + h / 2.0, ys).value;
    const Matrix w_atom = clip_to_psd(2.0 * w_h2 - w_h);
    if (w_atom.real().trace() > options.atom_mass_floor) atoms.push_back({t0, w_atom});
  }

  // Piecewise-constant density from pointwise Poisson limits, sampled away
  // from the detected atoms.
  std::vector<DensityPiece> pieces;
  const int cells = std::max(1, options.density_cells);
  for (int i = 0; i < cells; ++i) {
    const double lo = window_lo + width * i / cells;
    const double hi = window_lo + width * (i + 1) / cells;
    double x = 0.5 * (lo + hi);
    for (const auto& a : atoms) {
      if (std::abs(a.point - x) < 0.3 * (hi - lo)) {
        const double left = 0.25 * lo + 0.75 * x - 0.25 * (hi - lo);
        const double right = x + 0.25 * (hi - lo);
        x = (std::abs(a.point - left) > std::abs(a.point - right)) ? left : right;
      }
    }
    bool near_atom = false;
    for (const auto& a : atoms)
      if (std::abs(a.point - x) < 20.0 * y_min) near_atom = true;
    if (near_atom) continue;
    const Matrix dens =
        clip_to_psd(richardson(y_sequence, [&](double y) { return im_f(x, y); }).value / kPi);
    if (op_norm(dens) > 1e-8) pieces.push_back({lo, hi, dens});
  }

  StieltjesResult result{MatrixMeasure::from_parts(d, std::move(atoms), std::move(pieces),
                                                   std::max(tol, 1e-6)),
                         total.value, false, total.residual, ""};
  const double scale = std::max(1.0, op_norm(total.value));
  result.converged = total.residual <= 1e-3 * scale;
  if (!result.converged)
    note += "mass extrapolation residual " + std::to_string(total.residual) +
            " exceeds 1e-3 of the window mass; ";
  result.note = note;
  return result;
}

}  // namespace weylkit
