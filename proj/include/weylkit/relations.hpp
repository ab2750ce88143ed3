#pragma once

#include "weylkit/linalg.hpp"

namespace weylkit {

/// Closed subspace of C^n carried by an orthonormal column basis.
class Subspace {
 public:
  Subspace(int ambient_dim, Matrix on_basis);

  static Subspace from_span(int ambient_dim, const Matrix& span, double tol);
  static Subspace zero(int ambient_dim);
  static Subspace full(int ambient_dim);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }

  Matrix projector() const;
  bool contains(const Vector& v, double tol) const;
  bool contains(const Subspace& other, double tol) const;
  bool equals(const Subspace& other, double tol) const;
  /// Operator-norm distance of the orthoprojectors (principal-angle test).
  double distance(const Subspace& other) const;

  Subspace orthogonal_complement() const;
  Subspace intersect(const Subspace& other, double tol) const;
  Subspace sum(const Subspace& other, double tol) const;

 private:
  int ambient_dim_;
  Matrix basis_;
};

enum class PointClass { kResolvent, kPointSpectrum, kResidualSpectrum };

const char* to_string(PointClass c);

struct RelationParts {
  Subspace dom, ran, ker, mul;
};

/// Linear relation from C^dim_in to C^dim_out, identified with its graph:
/// a subspace of C^(dim_in+dim_out) whose first block is the domain slot.
class LinearRelation {
 public:
  LinearRelation(int dim_in, int dim_out, Subspace graph);

  /// Column span of `span` (rows = dim_in + dim_out). The square overload
  /// splits the rows evenly.
  static LinearRelation from_graph(const Matrix& span, double tol);
  static LinearRelation from_graph(int dim_in, int dim_out, const Matrix& span,
                                   double tol);
  /// Graph of a matrix acting C^cols -> C^rows.
  static LinearRelation graph_of(const Matrix& a, double tol);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  int dim() const { return graph_.dim(); }
  const Subspace& graph() const { return graph_; }

  Matrix domain_rows() const;  // top block of the graph basis
  Matrix range_rows() const;   // bottom block

  LinearRelation adjoint() const;
  LinearRelation inverse() const;
  RelationParts parts(double tol) const;

  /// T - lambda (square relations only).
  LinearRelation shift(cxd lambda, double tol) const;
  PointClass classify_point(cxd lambda, double tol) const;

  /// {(Uf, Uf') : (f,f') in T} for square U on the respective slots.
  LinearRelation map_by(const Matrix& u, double tol) const;

  bool contains(const LinearRelation& other, double tol) const;
  bool equals(const LinearRelation& other, double tol) const;

 private:
  int dim_in_;
  int dim_out_;
  Subspace graph_;
};

}  // namespace weylkit
