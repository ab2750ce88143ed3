#include "weylkit/triplets.hpp"

#include <cmath>

namespace weylkit {

namespace {

// (f, g) with the physicists' slot order: linear in f, conjugate in g.
cxd ip(const Vector& f, const Vector& g) { return g.dot(f); }

PointClass matrix_point_class(const Matrix& w, double tol) {
  return svd_rank(w, tol) < w.rows() ? PointClass::kPointSpectrum
                                     : PointClass::kResolvent;
}

}  // namespace

NondenseSymmetric::NondenseSymmetric(Matrix a00, Matrix a10, double tol)
    : a00_(std::move(a00)), a10_(std::move(a10)) {
  if (a00_.rows() != a00_.cols() || a00_.rows() < 1)
    throw std::invalid_argument("A00 must be square and nonempty");
  if (!is_hermitian(a00_, tol)) throw std::invalid_argument("A00 must be Hermitian");
  a00_ = hermitian_part(a00_);
  if (a10_.cols() != a00_.rows() || a10_.rows() < 1)
    throw std::invalid_argument("A10 must map the domain into a nontrivial defect space");
  d_ = static_cast<int>(a00_.rows());
  k_ = static_cast<int>(a10_.rows());
  n_ = d_ + k_;
}

Matrix NondenseSymmetric::domain_block() const {
  Matrix b(n_, d_);
  b.topRows(d_) = a00_;
  b.bottomRows(k_) = a10_;
  return b;
}

Matrix NondenseSymmetric::extension_matrix(const Matrix& b0) const {
  if (b0.rows() != k_ || b0.cols() != k_)
    throw std::invalid_argument("extension block must be k x k");
  Matrix full(n_, n_);
  full.topLeftCorner(d_, d_) = a00_;
  full.topRightCorner(d_, k_) = a10_.adjoint();
  full.bottomLeftCorner(k_, d_) = a10_;
  full.bottomRightCorner(k_, k_) = b0;
  return full;
}

bool NondenseSymmetric::is_extension(const Matrix& full, double tol) const {
  if (full.rows() != n_ || full.cols() != n_) return false;
  const double scale = std::max(1.0, op_norm(full));
  if (op_norm(full.leftCols(d_) - domain_block()) > tol * scale) return false;
  // membership of the columns on N in A* forces the A10* corner
  return op_norm(full.topRightCorner(d_, k_) - a10_.adjoint()) <= tol * scale;
}

LinearRelation NondenseSymmetric::as_relation(double tol) const {
  Matrix span(2 * n_, d_);
  span.topRows(n_) = Matrix::Identity(n_, n_).leftCols(d_);
  span.bottomRows(n_) = domain_block();
  return LinearRelation::from_graph(span, tol);
}

Subspace NondenseSymmetric::domain_subspace() const {
  return Subspace(n_, Matrix::Identity(n_, n_).leftCols(d_));
}

Subspace NondenseSymmetric::defect_subspace() const {
  return Subspace(n_, Matrix::Identity(n_, n_).rightCols(k_));
}

Matrix NondenseSymmetric::defect_space_at(cxd z, double tol) const {
  // (f, zf) lies in A* iff the domain block of (zI - extension) kills f.
  Matrix rows(d_, n_);
  rows.leftCols(d_) = z * Matrix::Identity(d_, d_) - a00_;
  rows.rightCols(k_) = -a10_.adjoint();
  return null_space(rows, tol);
}

LinearRelation adjoint_decomposition(const NondenseSymmetric& s, const Matrix& extension,
                                     double tol) {
  if (!s.is_extension(extension, tol))
    throw std::invalid_argument("matrix does not extend the symmetric operator");
  const int n = s.ambient_dim(), k = s.deficiency();
  Matrix span(2 * n, n + k);
  span.setZero();
  span.block(0, 0, n, n) = Matrix::Identity(n, n);
  span.block(n, 0, n, n) = extension;
  span.block(n + s.domain_dim(), n, k, k) = Matrix::Identity(k, k);
  return LinearRelation::from_graph(span, tol);
}

BTInfTriplet::BTInfTriplet(NondenseSymmetric base, Matrix b0, Matrix gamma_g,
                           Matrix forbidden, double tol)
    : base_(std::move(base)),
      b0_(std::move(b0)),
      gamma_g_(std::move(gamma_g)),
      forbidden_(std::move(forbidden)) {
  const int k = base_.deficiency();
  if (b0_.rows() != k || b0_.cols() != k)
    throw std::invalid_argument("B0 block must be k x k");
  if (gamma_g_.rows() != k || gamma_g_.cols() != k)
    throw std::invalid_argument("gamma must be a square map onto the defect space");
  if (!is_invertible(gamma_g_, tol))
    throw std::invalid_argument("gamma must be injective with range the defect space");
  if (forbidden_.rows() != k || forbidden_.cols() != k)
    throw std::invalid_argument("forbidden operator must be k x k");
}

Matrix BTInfTriplet::a0() const { return base_.extension_matrix(b0_); }

Matrix BTInfTriplet::gamma_full() const {
  Matrix g = Matrix::Zero(base_.ambient_dim(), base_.deficiency());
  g.bottomRows(base_.deficiency()) = gamma_g_;
  return g;
}

bool BTInfTriplet::in_adjoint(const Vector& f, const Vector& fprime, double tol) const {
  const int n = base_.ambient_dim();
  if (f.size() != n || fprime.size() != n) return false;
  const Vector r = fprime - a0() * f;
  const double scale = std::max({1.0, f.norm(), fprime.norm()});
  return r.head(base_.domain_dim()).norm() <= tol * scale;
}

DualBoundaryValues BTInfTriplet::boundary_maps(const Vector& f, const Vector& fprime,
                                               double tol) const {
  if (!in_adjoint(f, fprime, tol))
    throw std::invalid_argument("element does not belong to the adjoint relation");
  const int d = base_.domain_dim(), k = base_.deficiency();
  const Matrix ginv = guarded_inverse(gamma_g_, kDefaultTol, "gamma");
  const Matrix a0m = a0();
  DualBoundaryValues v;
  v.g0 = ginv * (fprime - a0m * f).tail(k);
  v.g1 = -gamma_g_.adjoint() * f.tail(k) + forbidden_ * v.g0;
  v.g0t = ginv * (fprime - a0m.adjoint() * f).tail(k);
  v.g1t = -gamma_g_.adjoint() * f.tail(k) + forbidden_.adjoint() * v.g0t;
  (void)d;
  return v;
}

Matrix BTInfTriplet::weyl_function(cxd z, double tol) const {
  const int n = base_.ambient_dim();
  const Matrix resolvent = guarded_inverse(
      a0() - z * Matrix::Identity(n, n), tol,
      "A0 - z at z = " + format_complex(z));
  const Matrix g = gamma_full();
  return forbidden_ + g.adjoint() * resolvent * g;
}

LinearRelation BTInfTriplet::extension_from_boundary(const Matrix& theta,
                                                     double tol) const {
  const int n = base_.ambient_dim(), d = base_.domain_dim(), k = base_.deficiency();
  if (theta.rows() != k || theta.cols() != k)
    throw std::invalid_argument("boundary operator must be k x k");
  // A* = {(f, A0 f + gamma h)}; Gamma0 = h, Gamma1 = -gamma* P_N f + F h.
  // ker(Gamma1 - Theta Gamma0): gamma* P_N f = (F - Theta) h.
  Matrix constraint(k, n + k);
  constraint.setZero();
  constraint.block(0, d, k, k) = gamma_g_.adjoint();
  constraint.rightCols(k) = -(forbidden_ - theta);
  const Matrix sol = null_space(constraint, tol);  // columns (f; h)
  const Matrix a0m = a0();
  const Matrix g = gamma_full();
  Matrix span(2 * n, sol.cols());
  span.topRows(n) = sol.topRows(n);
  span.bottomRows(n) = a0m * sol.topRows(n) + g * sol.bottomRows(k);
  return LinearRelation::from_graph(span, tol);
}

double BTInfTriplet::green_identity_residual() const {
  const int n = base_.ambient_dim(), d = base_.domain_dim(), k = base_.deficiency();
  const Matrix a0m = a0();
  std::vector<std::pair<Vector, Vector>> basis;
  for (int i = 0; i < n; ++i) {
    Vector f = Vector::Zero(n);
    f(i) = 1.0;
    basis.emplace_back(f, Vector(a0m * f));
  }
  for (int j = 0; j < k; ++j) {
    Vector fp = Vector::Zero(n);
    fp(d + j) = 1.0;
    basis.emplace_back(Vector::Zero(n), fp);
  }
  double residual = 0.0;
  std::vector<DualBoundaryValues> values;
  values.reserve(basis.size());
  for (const auto& [f, fp] : basis) values.push_back(boundary_maps(f, fp, 1e-8));
  for (size_t a = 0; a < basis.size(); ++a) {
    for (size_t b = 0; b < basis.size(); ++b) {
      const cxd lhs = ip(basis[a].second, basis[b].first) - ip(basis[a].first, basis[b].second);
      const cxd rhs = ip(values[a].g1, values[b].g0t) - ip(values[a].g0, values[b].g1t);
      residual = std::max(residual, std::abs(lhs - rhs));
    }
  }
  return residual;
}

OrdinaryTripletModel::OrdinaryTripletModel(NondenseSymmetric base, Matrix gamma_g,
                                           double tol)
    : OrdinaryTripletModel(std::move(base), std::move(gamma_g),
                           Matrix::Zero(0, 0), tol) {}

OrdinaryTripletModel::OrdinaryTripletModel(NondenseSymmetric base, Matrix gamma_g,
                                           Matrix b0, double tol)
    : base_(std::move(base)), gamma_g_(std::move(gamma_g)), b0_(std::move(b0)) {
  const int k = base_.deficiency();
  if (b0_.size() == 0) b0_ = Matrix::Zero(k, k);
  if (gamma_g_.rows() != k || gamma_g_.cols() != k)
    throw std::invalid_argument("gamma must be a square map onto the defect space");
  if (!is_invertible(gamma_g_, tol))
    throw std::invalid_argument("gamma must be injective with range the defect space");
  if (b0_.rows() != k || b0_.cols() != k || !is_hermitian(b0_, tol))
    throw std::invalid_argument("reference block must be Hermitian k x k");
  b0_ = hermitian_part(b0_);
}

Matrix OrdinaryTripletModel::reference_matrix() const {
  return base_.extension_matrix(b0_);
}

Matrix OrdinaryTripletModel::gamma_full() const {
  Matrix g = Matrix::Zero(base_.ambient_dim(), base_.deficiency());
  g.bottomRows(base_.deficiency()) = gamma_g_;
  return g;
}

bool OrdinaryTripletModel::in_adjoint(const Vector& f, const Vector& fprime,
                                      double tol) const {
  const int n = base_.ambient_dim();
  if (f.size() != n || fprime.size() != n) return false;
  const Vector r = fprime - reference_matrix() * f;
  const double scale = std::max({1.0, f.norm(), fprime.norm()});
  return r.head(base_.domain_dim()).norm() <= tol * scale;
}

OrdinaryBoundaryValues OrdinaryTripletModel::boundary_maps(const Vector& f,
                                                           const Vector& fprime,
                                                           double tol) const {
  if (!in_adjoint(f, fprime, tol))
    throw std::invalid_argument("element does not belong to the adjoint relation");
  const int k = base_.deficiency();
  OrdinaryBoundaryValues v;
  v.g0 = gamma_g_.adjoint() * f.tail(k);
  v.g1 = guarded_inverse(gamma_g_, kDefaultTol, "gamma") *
         (fprime - reference_matrix() * f).tail(k);
  return v;
}

Matrix OrdinaryTripletModel::weyl_function(cxd z, double tol) const {
  const int d = base_.domain_dim(), k = base_.deficiency();
  const Matrix res = guarded_inverse(
      base_.a00() - z * Matrix::Identity(d, d), tol,
      "A00 - z at z = " + format_complex(z));
  const Matrix ginv = guarded_inverse(gamma_g_, kDefaultTol, "gamma");
  const Matrix core =
      z * Matrix::Identity(k, k) - b0_ + base_.a10() * res * base_.a10().adjoint();
  return ginv * core * ginv.adjoint();
}

HerglotzMatrixFunction OrdinaryTripletModel::to_herglotz(double tol) const {
  const int k = base_.deficiency();
  const Matrix ginv = guarded_inverse(gamma_g_, kDefaultTol, "gamma");
  const MatrixMeasure a00_measure = spectral_measure(base_.a00(), tol);
  std::vector<Atom> atoms;
  Matrix c = -ginv * b0_ * ginv.adjoint();
  for (const auto& atom : a00_measure.atoms()) {
    const Matrix w =
        ginv * base_.a10() * atom.weight * base_.a10().adjoint() * ginv.adjoint();
    atoms.push_back({atom.point, w});
    c += (atom.point / (1.0 + atom.point * atom.point)) * w;
  }
  const Matrix d_coeff = ginv * ginv.adjoint();
  return HerglotzMatrixFunction(
      hermitian_part(c), d_coeff,
      MatrixMeasure::from_parts(k, std::move(atoms), {}, tol), Matrix::Zero(k, k), tol);
}

Matrix OrdinaryTripletModel::extension_operator(const Matrix& theta) const {
  const int k = base_.deficiency();
  if (theta.rows() != k || theta.cols() != k)
    throw std::invalid_argument("boundary operator must be k x k");
  const Matrix g = gamma_full();
  return reference_matrix() + g * theta * g.adjoint();
}

LinearRelation OrdinaryTripletModel::extension_from_boundary(const Matrix& theta,
                                                             double tol) const {
  return LinearRelation::graph_of(extension_operator(theta), tol);
}

LinearRelation OrdinaryTripletModel::reference_relation(double tol) const {
  const int n = base_.ambient_dim(), d = base_.domain_dim(), k = base_.deficiency();
  Matrix span = Matrix::Zero(2 * n, n);
  span.block(0, 0, n, d) = Matrix::Identity(n, n).leftCols(d);
  span.block(n, 0, n, d) = base_.domain_block();
  span.block(n + d, d, k, k) = Matrix::Identity(k, k);
  return LinearRelation::from_graph(span, tol);
}

double OrdinaryTripletModel::green_identity_residual() const {
  const int n = base_.ambient_dim(), d = base_.domain_dim(), k = base_.deficiency();
  const Matrix ref = reference_matrix();
  std::vector<std::pair<Vector, Vector>> basis;
  for (int i = 0; i < n; ++i) {
    Vector f = Vector::Zero(n);
    f(i) = 1.0;
    basis.emplace_back(f, Vector(ref * f));
  }
  for (int j = 0; j < k; ++j) {
    Vector fp = Vector::Zero(n);
    fp(d + j) = 1.0;
    basis.emplace_back(Vector::Zero(n), fp);
  }
  std::vector<OrdinaryBoundaryValues> values;
  values.reserve(basis.size());
  for (const auto& [f, fp] : basis) values.push_back(boundary_maps(f, fp, 1e-8));
  double residual = 0.0;
  for (size_t a = 0; a < basis.size(); ++a) {
    for (size_t b = 0; b < basis.size(); ++b) {
      const cxd lhs = ip(basis[a].second, basis[b].first) - ip(basis[a].first, basis[b].second);
      const cxd rhs = ip(values[a].g1, values[b].g0) - ip(values[a].g0, values[b].g1);
      residual = std::max(residual, std::abs(lhs - rhs));
    }
  }
  return residual;
}

OrdinaryTripletModel hat_transform(const OrdinaryTripletModel& model, const Matrix& k,
                                   const Matrix& b, double tol) {
  const int kk = model.base().deficiency();
  if (k.rows() != kk || k.cols() != kk || b.rows() != kk || b.cols() != kk)
    throw std::invalid_argument("hat transform blocks must be k x k");
  if (!is_invertible(k, tol))
    throw std::invalid_argument("hat transform requires invertible K");
  const Matrix re_b = hermitian_part(b);
  const Matrix new_gamma = model.gamma_g() * k;
  const Matrix new_b0 =
      model.b0() + model.gamma_g() * re_b * model.gamma_g().adjoint();
  return OrdinaryTripletModel(model.base(), new_gamma, new_b0, tol);
}

Matrix hat_coordinate(const Matrix& t, const Matrix& k, const Matrix& b, double tol) {
  const Matrix k_inv = guarded_inverse(k, tol, "K");
  return k_inv * (t - hermitian_part(b)) * k_inv.adjoint();
}

BTInfTriplet dual_pair_triplet(const OrdinaryTripletModel& model, const Matrix& k,
                               const Matrix& b, double tol) {
  const int kk = model.base().deficiency();
  if (k.rows() != kk || k.cols() != kk || b.rows() != kk || b.cols() != kk)
    throw std::invalid_argument("dual-pair blocks must be k x k");
  if (!is_invertible(k, tol))
    throw std::invalid_argument("dual-pair triplet requires invertible K");
  // Reference extension ker(G1 - B G0) = ref + gamma B gamma*; gamma field
  // -gamma K; forbidden operator 0.
  const Matrix b0 = model.b0() + model.gamma_g() * b * model.gamma_g().adjoint();
  return BTInfTriplet(model.base(), b0, Matrix(-model.gamma_g() * k),
                      Matrix::Zero(kk, kk), tol);
}

BTInfTriplet mobius_transform(const BTInfTriplet& triplet, double lambda0, double tol) {
  const NondenseSymmetric& base = triplet.base();
  const int n = base.ambient_dim(), d = base.domain_dim(), k = base.deficiency();
  if (!is_hermitian(triplet.b0(), tol))
    throw std::invalid_argument("mobius transform requires a selfadjoint reference extension");
  const Matrix a0 = triplet.a0();
  const Matrix shifted = a0 - lambda0 * Matrix::Identity(n, n);
  if (!is_invertible(shifted, tol))
    throw std::invalid_argument("lambda0 is an eigenvalue of the reference extension");
  // regular type: A - lambda0 injective on the domain
  Matrix w(n, d);
  w.topRows(d) = base.a00() - lambda0 * Matrix::Identity(d, d);
  w.bottomRows(k) = base.a10();
  if (svd_rank(w, tol) < d)
    throw std::invalid_argument("lambda0 is an eigenvalue of the restricted operator");

  // Adapted basis for S = (A - lambda0)^{-1}: dom S = ran(A - lambda0).
  const Matrix q_dom = orthonormal_basis(w, tol);
  const Matrix q_def = complement_basis(q_dom, n);
  Matrix q(n, n);
  q << q_dom, q_def;

  // S q_dom = E_D * G with G solving W G = q_dom (W has full column rank).
  const Matrix g = (w.adjoint() * w).ldlt().solve(w.adjoint() * q_dom);
  Matrix embed_dom = Matrix::Zero(n, d);
  embed_dom.topRows(d) = Matrix::Identity(d, d);
  const Matrix s_action = embed_dom * g;  // old coordinates, on dom S basis
  Matrix a00_s = q_dom.adjoint() * s_action;
  const Matrix a10_s = q_def.adjoint() * s_action;
  a00_s = hermitian_part(a00_s);
  NondenseSymmetric base_s(a00_s, a10_s, tol);

  // Reference extension (A0 - lambda0)^{-1} in the new basis.
  const Matrix s0_new = q.adjoint() * shifted.inverse() * q;
  const Matrix b0_s = s0_new.bottomRightCorner(k, k);
  if (op_norm(base_s.extension_matrix(b0_s) - s0_new) >
      100.0 * tol * std::max(1.0, op_norm(s0_new)))
    throw std::runtime_error("mobius transform produced an inconsistent reference extension");

  // Boundary data on {0} x N_S determines the new gamma field and the new
  // forbidden operator.
  const Matrix ginv = guarded_inverse(triplet.gamma_g(), kDefaultTol, "gamma");
  const Matrix l = ginv * ((lambda0 * Matrix::Identity(n, n) - a0) * q_def).bottomRows(k);
  const Matrix g2 = triplet.gamma_g().adjoint() * q_def.bottomRows(k);
  const Matrix gamma_s = guarded_inverse(l, tol, "transported gamma");
  const Matrix f_s = (g2 - triplet.forbidden() * l) * gamma_s;
  return BTInfTriplet(std::move(base_s), b0_s, gamma_s, f_s, tol);
}

std::pair<Matrix, Matrix> schur_compression(const BTInfTriplet& triplet, cxd z,
                                            double tol) {
  const NondenseSymmetric& base = triplet.base();
  const int n = base.ambient_dim(), d = base.domain_dim(), k = base.deficiency();
  const Matrix direct_full = guarded_inverse(
      triplet.a0() - z * Matrix::Identity(n, n), tol,
      "A0 - z at z = " + format_complex(z));
  const Matrix direct = direct_full.bottomRightCorner(k, k);
  const Matrix res00 = guarded_inverse(
      base.a00() - z * Matrix::Identity(d, d), tol,
      "A00 - z at z = " + format_complex(z));
  const Matrix schur = guarded_inverse(
      Matrix(triplet.b0() - z * Matrix::Identity(k, k) -
             base.a10() * res00 * base.a10().adjoint()),
      tol, "Schur complement at z = " + format_complex(z));
  return {direct, schur};
}

ExtensionPointCheck classify_extension_point(const OrdinaryTripletModel& model,
                                             const Matrix& theta, cxd lambda,
                                             double tol) {
  const int d = model.base().domain_dim();
  if (!is_invertible(Matrix(model.base().a00() - lambda * Matrix::Identity(d, d)), tol))
    throw std::invalid_argument(
        "lambda lies in the spectrum of the reference extension");
  ExtensionPointCheck out{
      model.extension_from_boundary(theta, tol).classify_point(lambda, tol),
      matrix_point_class(theta - model.weyl_function(lambda, tol), tol), false};
  out.agree = out.via_extension == out.via_weyl;
  return out;
}

ExtensionPointCheck classify_extension_point(const BTInfTriplet& triplet,
                                             const Matrix& theta, cxd lambda,
                                             double tol) {
  const int n = triplet.base().ambient_dim();
  if (!is_invertible(Matrix(triplet.a0() - lambda * Matrix::Identity(n, n)), tol))
    throw std::invalid_argument(
        "lambda lies in the spectrum of the reference extension");
  ExtensionPointCheck out{
      triplet.extension_from_boundary(theta, tol).classify_point(lambda, tol),
      matrix_point_class(theta - triplet.weyl_function(lambda, tol), tol), false};
  out.agree = out.via_extension == out.via_weyl;
  return out;
}

}  // namespace weylkit
