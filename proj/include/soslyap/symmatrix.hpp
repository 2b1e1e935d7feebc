#ifndef SOSLYAP_SYMMATRIX_HPP
#define SOSLYAP_SYMMATRIX_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "soslyap/rational_linalg.hpp"

namespace soslyap {

// Symmetric matrix of doubles, dense lower-triangle storage.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(size_t dim) : dim_(dim), a_(dim * (dim + 1) / 2, 0.0) {}

  static SymMatrix identity(size_t dim) {
    SymMatrix m(dim);
    for (size_t i = 0; i < dim; ++i) m.set(i, i, 1.0);
    return m;
  }

  static SymMatrix from_eigen(const Eigen::MatrixXd& e) {
    SymMatrix m(e.rows());
    for (size_t i = 0; i < m.dim_; ++i)
      for (size_t j = 0; j <= i; ++j) m.set(i, j, 0.5 * (e(i, j) + e(j, i)));
    return m;
  }

  size_t dim() const { return dim_; }

  double operator()(size_t i, size_t j) const {
    return a_[idx(std::max(i, j), std::min(i, j))];
  }

  void set(size_t i, size_t j, double v) {
    a_[idx(std::max(i, j), std::min(i, j))] = v;
  }

  Eigen::MatrixXd to_eigen() const {
    Eigen::MatrixXd e(dim_, dim_);
    for (size_t i = 0; i < dim_; ++i)
      for (size_t j = 0; j < dim_; ++j) e(i, j) = (*this)(i, j);
    return e;
  }

  RatMatrix to_rational() const {
    RatMatrix m(dim_, dim_);
    for (size_t i = 0; i < dim_; ++i)
      for (size_t j = 0; j < dim_; ++j) m(i, j) = rat_from_double((*this)(i, j));
    return m;
  }

 private:
  size_t idx(size_t i, size_t j) const {
    if (i >= dim_) throw std::out_of_range("SymMatrix index");
    return i * (i + 1) / 2 + j;
  }

  size_t dim_ = 0;
  std::vector<double> a_;
};

inline double eig_min(const SymMatrix& m) {
  if (m.dim() == 0) throw std::invalid_argument("eig_min: empty matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.to_eigen(),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline double eig_min(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace soslyap

#endif
