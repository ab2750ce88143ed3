#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "weylkit/random.hpp"
#include "weylkit/relations.hpp"

using namespace weylkit;

namespace {
constexpr double kTol = 1e-10;

Matrix mat2(cxd a, cxd b, cxd c, cxd d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}
}  // namespace

TEST_CASE("from_graph identity relation on C^2") {
  const LinearRelation id = LinearRelation::graph_of(Matrix::Identity(2, 2), kTol);
  const RelationParts p = id.parts(kTol);
  CHECK(p.dom.dim() == 2);
  CHECK(p.ran.dim() == 2);
  CHECK(p.ker.dim() == 0);
  CHECK(p.mul.dim() == 0);
}

TEST_CASE("pure multivalued span {(0,e1)}") {
  Matrix span(2, 1);
  span << cxd(0), cxd(1);
  const LinearRelation t = LinearRelation::from_graph(span, kTol);
  const RelationParts p = t.parts(kTol);
  CHECK(p.dom.dim() == 0);
  CHECK(p.mul.dim() == 1);
  CHECK(p.mul.contains(Vector::Ones(1), kTol));
}

TEST_CASE("graph of the flip matrix is selfadjoint") {
  const Matrix h = mat2(0, 1, 1, 0);
  const LinearRelation t = LinearRelation::graph_of(h, kTol);
  // oracle: direct Hermitian check of the defining matrix
  CHECK(op_norm(h - h.adjoint()) == 0.0);
  CHECK(t.adjoint().equals(t, 1e-9));
  const RelationParts p = t.parts(kTol);
  CHECK(p.dom.dim() == 2);
  CHECK(p.ran.dim() == 2);
}

TEST_CASE("from_graph rejects bad input") {
  CHECK_THROWS_AS(LinearRelation::from_graph(Matrix(2, 1), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(LinearRelation::from_graph(Matrix(0, 0), kTol), std::invalid_argument);
  CHECK_THROWS_AS(LinearRelation::from_graph(Matrix::Identity(3, 3), kTol),
                  std::invalid_argument);
}

TEST_CASE("adjoint of a Hermitian graph is itself") {
  Rng rng(7);
  const Matrix h = rng.hermitian(3);
  const LinearRelation t = LinearRelation::graph_of(h, kTol);
  CHECK(t.adjoint().equals(t, 1e-9));
}

TEST_CASE("adjoint of nondense restriction equals direct-sum decomposition") {
  // A = restriction of a Hermitian matrix to span{e1}: A* should be the
  // full graph plus {0} x N with N = span{e2}, of dimension n + dim N.
  const Matrix h = mat2(0, 1, 1, 0);
  Matrix span(4, 1);
  span << cxd(1), cxd(0), cxd(0), cxd(1);  // (e1, H e1) = (e1, e2)
  const LinearRelation a = LinearRelation::from_graph(span, kTol);
  const LinearRelation astar = a.adjoint();
  CHECK(astar.dim() == 3);  // n + dim N = 2 + 1

  Matrix decomposed(4, 3);
  decomposed.setZero();
  decomposed.col(0) << cxd(1), cxd(0), cxd(0), cxd(1);
  decomposed.col(1) << cxd(0), cxd(1), cxd(1), cxd(0);
  decomposed.col(2) << cxd(0), cxd(0), cxd(0), cxd(1);
  CHECK(astar.equals(LinearRelation::from_graph(decomposed, kTol), 1e-9));
}

TEST_CASE("adjoint against the brute-force pairing oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
    const int m = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
    const int cols = 1 + static_cast<int>(rng.uniform(0.0, double(n + m) - 0.001));
    const Matrix span = rng.matrix(n + m, cols);
    const LinearRelation t = LinearRelation::from_graph(n, m, span, kTol);
    const LinearRelation tstar = t.adjoint();
    const Matrix oracle = oracles::adjoint_span_by_complement(span, n, m);
    CHECK(oracles::subspace_gap(tstar.graph().basis(), oracle) < 1e-8);
    // involution and the dimension law
    CHECK(tstar.adjoint().equals(t, 1e-8));
    CHECK(t.dim() + tstar.dim() == n + m);
  }
}

TEST_CASE("parts of the zero operator") {
  const LinearRelation z = LinearRelation::graph_of(Matrix::Zero(2, 2), kTol);
  const RelationParts p = z.parts(kTol);
  CHECK(p.ran.dim() == 0);
  CHECK(p.ker.dim() == 2);
}

TEST_CASE("mul of the adjoint of a nondense symmetric operator") {
  // 2x2 model with domain span{e1}: mul A* = N = span{e2}.
  Matrix span(4, 1);
  span << cxd(1), cxd(0), cxd(0.5), cxd(1);
  const LinearRelation a = LinearRelation::from_graph(span, kTol);
  const RelationParts p = a.adjoint().parts(kTol);
  CHECK(p.mul.dim() == 1);
  Vector e2(2);
  e2 << cxd(0), cxd(1);
  CHECK(p.mul.contains(e2, 1e-9));
}

TEST_CASE("classify_point basic and rank oracle") {
  Matrix d12 = Matrix::Zero(2, 2);
  d12(0, 0) = 1.0;
  d12(1, 1) = 2.0;
  const LinearRelation t = LinearRelation::graph_of(d12, kTol);
  CHECK(t.classify_point(cxd(3.0), kTol) == PointClass::kResolvent);
  CHECK(t.classify_point(cxd(1.0), kTol) == PointClass::kPointSpectrum);

  // span{(e1, 0)} in C^2 (+) C^2
  Matrix span(4, 1);
  span << cxd(1), cxd(0), cxd(0), cxd(0);
  const LinearRelation s = LinearRelation::from_graph(span, kTol);
  CHECK(s.classify_point(cxd(0.0), kTol) == PointClass::kPointSpectrum);
  CHECK(s.classify_point(cxd(1.0), kTol) == PointClass::kResidualSpectrum);
}

TEST_CASE("classify_point agrees with eigenvalues of random matrices") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
    const Matrix a = rng.matrix(n, n);
    const LinearRelation t = LinearRelation::graph_of(a, kTol);
    Eigen::ComplexEigenSolver<Matrix> es(a);
    for (int i = 0; i < n; ++i)
      CHECK(t.classify_point(es.eigenvalues()(i), 1e-8) == PointClass::kPointSpectrum);
    CHECK(t.classify_point(cxd(100.0, 3.0), kTol) == PointClass::kResolvent);
  }
}

TEST_CASE("symmetric relations are contained in their adjoints") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
    const int d = 1 + static_cast<int>(rng.uniform(0.0, double(n) - 1.001));
    const Matrix h = rng.hermitian(n);
    Matrix span(2 * n, d);
    span.topRows(n) = Matrix::Identity(n, n).leftCols(d);
    span.bottomRows(n) = h.leftCols(d);
    const LinearRelation a = LinearRelation::from_graph(span, kTol);
    CHECK(a.adjoint().contains(a, 1e-8));
  }
}

TEST_CASE("subspace sum, intersection and complement against projector oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform(0.0, 3.0));
    const Subspace a = Subspace::from_span(n, rng.matrix(n, 2), kTol);
    const Subspace b = Subspace::from_span(n, rng.matrix(n, 2), kTol);
    const Subspace meet = a.intersect(b, kTol);
    const Subspace join = a.sum(b, kTol);
    CHECK(a.dim() + b.dim() == meet.dim() + join.dim());
    CHECK(join.contains(a, 1e-8));
    CHECK(join.contains(b, 1e-8));
    const Matrix comp = oracles::complement_by_projector(a.basis(), n);
    CHECK(oracles::subspace_gap(a.orthogonal_complement().basis(), comp) < 1e-8);
  }
}
