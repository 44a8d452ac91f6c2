#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kcurv/gap_report.hpp"

namespace kcurv {

using cplx = std::complex<double>;

// Kind of a tensor slot: holomorphic (dz) or antiholomorphic (dz-bar).
enum class Slot : std::uint8_t { Holo, AntiHolo };

inline Slot opposite(Slot s) {
  return s == Slot::Holo ? Slot::AntiHolo : Slot::Holo;
}

struct IndexSignature {
  int dim = 1;                // complex dimension m >= 1
  std::vector<Slot> slots;    // ordered slot kinds, may be empty (scalar)

  IndexSignature() = default;
  IndexSignature(int m, std::vector<Slot> s);

  int rank() const { return static_cast<int>(slots.size()); }
  std::size_t extent() const;  // dim^rank
  bool operator==(const IndexSignature&) const = default;
};

// Signature of a curvature-type tensor: (holo, anti, holo, anti).
IndexSignature curvature_signature(int m);

// Dense complex tensor at a chart point, row-major in slot order.
// Immutable-by-convention value type; all frame-algebra helpers below assume
// components are expressed in a unitary frame (identity metric) unless noted.
class ComplexTensor {
 public:
  ComplexTensor() = default;
  explicit ComplexTensor(IndexSignature sig);

  static ComplexTensor zeros(int m, std::vector<Slot> slots);

  const IndexSignature& signature() const { return sig_; }
  int dim() const { return sig_.dim; }
  int rank() const { return sig_.rank(); }
  std::size_t size() const { return data_.size(); }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  std::size_t flat_index(std::span<const int> idx) const;

  cplx& at(std::span<const int> idx) { return data_[flat_index(idx)]; }
  const cplx& at(std::span<const int> idx) const {
    return data_[flat_index(idx)];
  }

  template <typename... I>
  cplx& operator()(I... idx) {
    const int ix[] = {static_cast<int>(idx)...};
    return at(std::span<const int>(ix, sizeof...(I)));
  }
  template <typename... I>
  const cplx& operator()(I... idx) const {
    const int ix[] = {static_cast<int>(idx)...};
    return at(std::span<const int>(ix, sizeof...(I)));
  }

  ComplexTensor& operator+=(const ComplexTensor& o);
  ComplexTensor& operator-=(const ComplexTensor& o);
  ComplexTensor& operator*=(cplx a);

  friend ComplexTensor operator+(ComplexTensor a, const ComplexTensor& b) {
    return a += b;
  }
  friend ComplexTensor operator-(ComplexTensor a, const ComplexTensor& b) {
    return a -= b;
  }
  friend ComplexTensor operator*(cplx a, ComplexTensor t) { return t *= a; }

  double max_abs() const;

 private:
  IndexSignature sig_;
  std::vector<cplx> data_;
};

// N x N complex Hermitian matrix. Construction validates Hermitian symmetry
// entrywise against an absolute tolerance (default 1e-12; widen for data that
// came through finite differences).
class HermitianMatrix {
 public:
  static constexpr double kDefaultTol = 1e-12;

  HermitianMatrix() = default;
  explicit HermitianMatrix(Eigen::MatrixXcd entries, double tol = kDefaultTol);

  static HermitianMatrix identity(int n);
  static HermitianMatrix zero(int n);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXcd& mat() const { return mat_; }

  double trace_real() const { return mat_.trace().real(); }

 private:
  Eigen::MatrixXcd mat_;
};

// Largest deviation |A(i,j) - conj(A(j,i))| over all entries.
double hermitian_violation(const Eigen::MatrixXcd& a);

// Contraction of two slots of opposite kind in a unitary frame (plain sum
// over the paired index). Throws on like-kind or out-of-range slots.
ComplexTensor contract(const ComplexTensor& t, int slot_a, int slot_b);

// Checks the algebraic symmetries of a curvature-type tensor Q with slot
// pattern (holo, anti, holo, anti):
//   Q_{ab.cd.} = Q_{cb.ad.},  Q_{ab.cd.} = Q_{ad.cb.},
//   conj(Q_{ab.cd.}) = Q_{ba.dc.}.
// Reported as a GapReport with lhs = max violation and rhs = 0.
GapReport check_kahler_symmetries(const ComplexTensor& t, double tol);

// Eigenvalues of a Hermitian matrix in ascending order.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h);

// Re-expresses tensor components in a unitary frame for the metric g
// (holomorphic slots transform by the inverse Cholesky factor of g,
// antiholomorphic slots by its conjugate). Full-contraction scalars are
// unchanged. Throws if g is not positive definite.
ComplexTensor frame_normalize(const HermitianMatrix& g, const ComplexTensor& t);
Eigen::MatrixXcd frame_normalize(const Eigen::MatrixXcd& g,
                                 const Eigen::MatrixXcd& t);

// Norm conventions for the curvature apparatus:
//   |E|^2 = 2 sum |E_{ab.}|^2 for Hermitian 2-tensors,
//   |Q|^2 = 4 sum |Q_{ab.cd.}|^2 for curvature-type 4-tensors,
//   <X,Y> = 4 Re sum X conj(Y) for curvature-type 4-tensors.
double hermitian_norm_sq(const HermitianMatrix& e);
double curvature_norm_sq(const ComplexTensor& t);
double curvature_inner(const ComplexTensor& x, const ComplexTensor& y);

}  // namespace kcurv
