#include "qict/opspace.hpp"

#include <iostream>

namespace qict {

namespace {

void check_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
  }
}

void check_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

Operator::Operator(const Matrix& m) {
  check_square(m, "Operator");
  Matrix sym = (m + m.adjoint()) / 2.0;
  double correction = (m - sym).cwiseAbs().maxCoeff();
  if (correction > tol::herm) {
    std::cerr << "qict: warning: symmetrized non-Hermitian input (max correction "
              << correction << ")\n";
  }
  mat_ = std::move(sym);
}

Operator Operator::identity(int d) { return Operator(Matrix::Identity(d, d)); }

Operator Operator::zero(int d) { return Operator(Matrix::Zero(d, d)); }

double Operator::hs_norm_sq() const { return (mat_ * mat_).trace().real(); }

double Operator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Operator& Operator::operator+=(const Operator& o) {
  check_same_dim(dim(), o.dim(), "Operator+");
  mat_ += o.mat_;
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  check_same_dim(dim(), o.dim(), "Operator-");
  mat_ -= o.mat_;
  return *this;
}

Operator& Operator::operator*=(double s) {
  mat_ *= s;
  return *this;
}

OperatorKet::OperatorKet(int dim, CVector coords) : dim_(dim), coords_(std::move(coords)) {
  if (coords_.size() != static_cast<Eigen::Index>(dim_) * dim_) {
    throw std::invalid_argument("OperatorKet: coords size must be dim^2");
  }
}

Superoperator::Superoperator(int dim, Matrix m) : dim_(dim), mat_(std::move(m)) {
  if (mat_.rows() != static_cast<Eigen::Index>(dim_) * dim_ || mat_.rows() != mat_.cols()) {
    throw std::invalid_argument("Superoperator: matrix must be d^2 x d^2");
  }
}

Superoperator Superoperator::identity(int d) {
  return Superoperator(d, Matrix::Identity(d * d, d * d));
}

Superoperator Superoperator::zero(int d) {
  return Superoperator(d, Matrix::Zero(d * d, d * d));
}

Operator Superoperator::apply(const Operator& x) const {
  check_same_dim(dim_, x.dim(), "Superoperator::apply");
  return devectorize(OperatorKet(dim_, mat_ * vectorize(x).coords()));
}

Superoperator& Superoperator::operator+=(const Superoperator& o) {
  check_same_dim(dim_, o.dim_, "Superoperator+");
  mat_ += o.mat_;
  return *this;
}

Superoperator& Superoperator::operator-=(const Superoperator& o) {
  check_same_dim(dim_, o.dim_, "Superoperator-");
  mat_ -= o.mat_;
  return *this;
}

Superoperator& Superoperator::operator*=(double s) {
  mat_ *= s;
  return *this;
}

Superoperator operator*(const Superoperator& a, const Superoperator& b) {
  check_same_dim(a.dim_, b.dim_, "Superoperator*");
  return Superoperator(a.dim_, a.mat_ * b.mat_);
}

DensityState::DensityState(const Operator& op) : op_(op) {
  if (std::abs(op_.trace() - 1.0) > 1e-8) {
    throw std::invalid_argument("DensityState: trace is " + std::to_string(op_.trace()) +
                                ", expected 1");
  }
  double lo = op_.min_eigenvalue();
  if (lo < -tol::pos) {
    throw std::invalid_argument("DensityState: negative eigenvalue " + std::to_string(lo));
  }
}

DensityState DensityState::completely_mixed(int d) {
  return DensityState(Operator(Matrix::Identity(d, d) / static_cast<double>(d)));
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("hs_inner: dimension mismatch");
  }
  return (a.adjoint() * b).trace();
}

Complex hs_inner(const Operator& a, const Operator& b) {
  Complex v = hs_inner(a.matrix(), b.matrix());
  if (std::abs(v.imag()) > tol::herm * std::max(1.0, std::abs(v.real()))) {
    throw std::logic_error("hs_inner: Hermitian inputs produced imaginary part " +
                           std::to_string(v.imag()));
  }
  return v;
}

OperatorKet vectorize(const Operator& a) {
  // Column stacking: coords[c*d + r] = A(r, c). Eigen stores column-major,
  // so this is a straight copy of the underlying buffer.
  const Matrix& m = a.matrix();
  CVector v = Eigen::Map<const CVector>(m.data(), m.size());
  return OperatorKet(a.dim(), std::move(v));
}

Operator devectorize(const OperatorKet& v) {
  int d = v.dim();
  Matrix m = Eigen::Map<const Matrix>(v.coords().data(), d, d);
  return Operator(m);
}

Superoperator dyad(const Operator& a, const Operator& b) {
  check_same_dim(a.dim(), b.dim(), "dyad");
  CVector va = vectorize(a).coords();
  CVector vb = vectorize(b).coords();
  return Superoperator(a.dim(), va * vb.adjoint());
}

Superoperator pseudoinverse(const Superoperator& s, double rel_cutoff) {
  Eigen::JacobiSVD<Matrix> svd(s.matrix(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax == 0.0) return Superoperator::zero(s.dim());
  RVector inv = RVector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_cutoff * smax) inv(i) = 1.0 / sv(i);
  }
  Matrix m = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
  return Superoperator(s.dim(), std::move(m));
}

Superoperator inverse(const Superoperator& s) {
  double cond = condition_number(s);
  if (!(cond < tol::cond_ceiling)) {
    throw std::runtime_error("Superoperator inverse: condition number " +
                             std::to_string(cond) + " exceeds ceiling");
  }
  return Superoperator(s.dim(), s.matrix().inverse());
}

Superoperator traceless_projection(const Superoperator& s) {
  int d = s.dim();
  Superoperator pbar =
      Superoperator::identity(d) - (1.0 / d) * dyad(Operator::identity(d), Operator::identity(d));
  return pbar * s * pbar;
}

double superop_trace(const Superoperator& s) {
  Complex t = s.matrix().trace();
  if (std::abs(t.imag()) > tol::herm * std::max(1.0, std::abs(t.real()))) {
    throw std::logic_error("superop_trace: imaginary part " + std::to_string(t.imag()));
  }
  return t.real();
}

double condition_number(const Superoperator& s) {
  Eigen::JacobiSVD<Matrix> svd(s.matrix());
  const auto& sv = svd.singularValues();
  double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

}  // namespace qict
