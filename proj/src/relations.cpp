#include "weylkit/relations.hpp"

namespace weylkit {

Subspace::Subspace(int ambient_dim, Matrix on_basis)
    : ambient_dim_(ambient_dim), basis_(std::move(on_basis)) {
  if (ambient_dim_ < 0) throw std::invalid_argument("negative ambient dimension");
  if (basis_.size() == 0) basis_ = Matrix(ambient_dim_, 0);
  if (basis_.rows() != ambient_dim_)
    throw std::invalid_argument("subspace basis has wrong ambient dimension");
  if (basis_.cols() > ambient_dim_)
    throw std::invalid_argument("subspace basis has more columns than ambient dimension");
}

Subspace Subspace::from_span(int ambient_dim, const Matrix& span, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  if (span.cols() > 0 && span.rows() != ambient_dim)
    throw std::invalid_argument("span rows do not match ambient dimension");
  Matrix fixed = span;
  if (fixed.cols() == 0) fixed = Matrix(ambient_dim, 0);
  return Subspace(ambient_dim, orthonormal_basis(fixed, tol));
}

Subspace Subspace::zero(int ambient_dim) { return Subspace(ambient_dim, Matrix(ambient_dim, 0)); }

Subspace Subspace::full(int ambient_dim) {
  return Subspace(ambient_dim, Matrix::Identity(ambient_dim, ambient_dim));
}

Matrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

bool Subspace::contains(const Vector& v, double tol) const {
  if (v.size() != ambient_dim_) throw std::invalid_argument("vector has wrong dimension");
  const double n = v.norm();
  if (n == 0.0) return true;
  return (v - basis_ * (basis_.adjoint() * v)).norm() <= tol * n;
}

bool Subspace::contains(const Subspace& other, double tol) const {
  if (other.dim() > dim()) return false;
  if (other.dim() == 0) return true;
  const Matrix residual = other.basis() - basis_ * (basis_.adjoint() * other.basis());
  return op_norm(residual) <= tol;
}

bool Subspace::equals(const Subspace& other, double tol) const {
  return dim() == other.dim() && distance(other) <= tol;
}

double Subspace::distance(const Subspace& other) const {
  if (ambient_dim_ != other.ambient_dim_)
    throw std::invalid_argument("subspaces live in different ambient spaces");
  return op_norm(projector() - other.projector());
}

Subspace Subspace::orthogonal_complement() const {
  return Subspace(ambient_dim_, complement_basis(basis_, ambient_dim_));
}

Subspace Subspace::intersect(const Subspace& other, double tol) const {
  // (A cap B) = (A^perp + B^perp)^perp
  return orthogonal_complement().sum(other.orthogonal_complement(), tol).orthogonal_complement();
}

Subspace Subspace::sum(const Subspace& other, double tol) const {
  if (ambient_dim_ != other.ambient_dim_)
    throw std::invalid_argument("subspaces live in different ambient spaces");
  Matrix joint(ambient_dim_, dim() + other.dim());
  joint << basis_, other.basis();
  return from_span(ambient_dim_, joint, tol);
}

const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::kResolvent: return "resolvent";
    case PointClass::kPointSpectrum: return "point_spectrum";
    case PointClass::kResidualSpectrum: return "residual_spectrum";
  }
  return "?";
}

LinearRelation::LinearRelation(int dim_in, int dim_out, Subspace graph)
    : dim_in_(dim_in), dim_out_(dim_out), graph_(std::move(graph)) {
  if (dim_in_ < 0 || dim_out_ < 0) throw std::invalid_argument("negative slot dimension");
  if (graph_.ambient_dim() != dim_in_ + dim_out_)
    throw std::invalid_argument("graph subspace does not match slot dimensions");
}

LinearRelation LinearRelation::from_graph(const Matrix& span, double tol) {
  if (span.rows() % 2 != 0)
    throw std::invalid_argument("square from_graph requires an even number of rows");
  const int n = static_cast<int>(span.rows()) / 2;
  return from_graph(n, n, span, tol);
}

LinearRelation LinearRelation::from_graph(int dim_in, int dim_out, const Matrix& span,
                                          double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  if (span.size() == 0 && span.rows() == 0)
    throw std::invalid_argument("empty graph span");
  return LinearRelation(dim_in, dim_out,
                        Subspace::from_span(dim_in + dim_out, span, tol));
}

LinearRelation LinearRelation::graph_of(const Matrix& a, double tol) {
  Matrix span(a.rows() + a.cols(), a.cols());
  span.topRows(a.cols()) = Matrix::Identity(a.cols(), a.cols());
  span.bottomRows(a.rows()) = a;
  return from_graph(static_cast<int>(a.cols()), static_cast<int>(a.rows()), span, tol);
}

Matrix LinearRelation::domain_rows() const { return graph_.basis().topRows(dim_in_); }

Matrix LinearRelation::range_rows() const { return graph_.basis().bottomRows(dim_out_); }

LinearRelation LinearRelation::adjoint() const {
  // T* = (JT)^perp with J(f,f') = (f', -f): dim T* = dim_in + dim_out - dim T.
  const Matrix top = domain_rows();
  const Matrix bot = range_rows();
  Matrix flipped(dim_out_ + dim_in_, graph_.dim());
  flipped.topRows(dim_out_) = bot;
  flipped.bottomRows(dim_in_) = -top;
  const Matrix basis = complement_basis(orthonormal_basis(flipped, kDefaultTol),
                                        dim_in_ + dim_out_);
  return LinearRelation(dim_out_, dim_in_, Subspace(dim_out_ + dim_in_, basis));
}

LinearRelation LinearRelation::inverse() const {
  Matrix swapped(dim_out_ + dim_in_, graph_.dim());
  swapped.topRows(dim_out_) = range_rows();
  swapped.bottomRows(dim_in_) = domain_rows();
  return LinearRelation(dim_out_, dim_in_,
                        Subspace::from_span(dim_out_ + dim_in_, swapped, kDefaultTol));
}

RelationParts LinearRelation::parts(double tol) const {
  const Matrix top = domain_rows();
  const Matrix bot = range_rows();
  Subspace dom = Subspace::from_span(dim_in_, top, tol);
  Subspace ran = Subspace::from_span(dim_out_, bot, tol);
  // ker = {f : (f,0) in T} = top * null(bot); mul = {g : (0,g) in T}.
  Subspace ker = Subspace::from_span(dim_in_, top * null_space(bot, tol), tol);
  Subspace mul = Subspace::from_span(dim_out_, bot * null_space(top, tol), tol);
  return RelationParts{std::move(dom), std::move(ran), std::move(ker), std::move(mul)};
}

LinearRelation LinearRelation::shift(cxd lambda, double tol) const {
  if (dim_in_ != dim_out_)
    throw std::invalid_argument("shift requires a square relation");
  const Matrix top = domain_rows();
  Matrix span(2 * dim_in_, graph_.dim());
  span.topRows(dim_in_) = top;
  span.bottomRows(dim_in_) = range_rows() - lambda * top;
  return from_graph(dim_in_, dim_out_, span, tol);
}

PointClass LinearRelation::classify_point(cxd lambda, double tol) const {
  if (dim_in_ != dim_out_)
    throw std::invalid_argument("classify_point requires a square relation");
  const RelationParts p = shift(lambda, tol).parts(tol);
  if (p.ker.dim() > 0) return PointClass::kPointSpectrum;
  if (p.ran.dim() == dim_out_) return PointClass::kResolvent;
  // ker trivial and proper closed range: residual. The continuous class
  // cannot occur in finite dimension.
  return PointClass::kResidualSpectrum;
}

LinearRelation LinearRelation::map_by(const Matrix& u, double tol) const {
  if (u.rows() != dim_in_ || u.cols() != dim_in_ || dim_in_ != dim_out_)
    throw std::invalid_argument("map_by expects a square matrix matching a square relation");
  Matrix span(2 * dim_in_, graph_.dim());
  span.topRows(dim_in_) = u * domain_rows();
  span.bottomRows(dim_in_) = u * range_rows();
  return from_graph(dim_in_, dim_out_, span, tol);
}

bool LinearRelation::contains(const LinearRelation& other, double tol) const {
  return graph_.contains(other.graph_, tol);
}

bool LinearRelation::equals(const LinearRelation& other, double tol) const {
  return dim_in_ == other.dim_in_ && dim_out_ == other.dim_out_ &&
         graph_.equals(other.graph_, tol);
}

}  // namespace weylkit
