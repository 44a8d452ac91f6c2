#include "kcurv/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kcurv {

IndexSignature::IndexSignature(int m, std::vector<Slot> s)
    : dim(m), slots(std::move(s)) {
  if (m < 1) throw std::invalid_argument("IndexSignature: dim must be >= 1");
}

std::size_t IndexSignature::extent() const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < slots.size(); ++i) n *= static_cast<std::size_t>(dim);
  return n;
}

IndexSignature curvature_signature(int m) {
  return IndexSignature(m, {Slot::Holo, Slot::AntiHolo, Slot::Holo, Slot::AntiHolo});
}

ComplexTensor::ComplexTensor(IndexSignature sig)
    : sig_(std::move(sig)), data_(sig_.extent(), cplx(0.0, 0.0)) {}

ComplexTensor ComplexTensor::zeros(int m, std::vector<Slot> slots) {
  return ComplexTensor(IndexSignature(m, std::move(slots)));
}

std::size_t ComplexTensor::flat_index(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank())
    throw std::invalid_argument("ComplexTensor: index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= sig_.dim)
      throw std::out_of_range("ComplexTensor: index out of range");
    flat = flat * static_cast<std::size_t>(sig_.dim) + static_cast<std::size_t>(idx[k]);
  }
  return flat;
}

ComplexTensor& ComplexTensor::operator+=(const ComplexTensor& o) {
  if (!(sig_ == o.sig_)) throw std::invalid_argument("tensor add: signature mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexTensor& ComplexTensor::operator-=(const ComplexTensor& o) {
  if (!(sig_ == o.sig_)) throw std::invalid_argument("tensor sub: signature mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexTensor& ComplexTensor::operator*=(cplx a) {
  for (auto& v : data_) v *= a;
  return *this;
}

double ComplexTensor::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double hermitian_violation(const Eigen::MatrixXcd& a) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst;
}

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd entries, double tol)
    : mat_(std::move(entries)) {
  if (mat_.rows() != mat_.cols())
    throw std::invalid_argument("HermitianMatrix: matrix must be square");
  const double v = hermitian_violation(mat_);
  if (v > tol) {
    std::ostringstream os;
    os << "HermitianMatrix: not Hermitian (violation " << v << " > tol " << tol
       << ")";
    throw std::invalid_argument(os.str());
  }
}

HermitianMatrix HermitianMatrix::identity(int n) {
  return HermitianMatrix(Eigen::MatrixXcd::Identity(n, n));
}

HermitianMatrix HermitianMatrix::zero(int n) {
  return HermitianMatrix(Eigen::MatrixXcd::Zero(n, n));
}

ComplexTensor contract(const ComplexTensor& t, int slot_a, int slot_b) {
  const auto& sig = t.signature();
  const int r = sig.rank();
  if (slot_a < 0 || slot_a >= r || slot_b < 0 || slot_b >= r || slot_a == slot_b)
    throw std::invalid_argument("contract: slot index out of range");
  if (sig.slots[slot_a] == sig.slots[slot_b])
    throw std::invalid_argument("cannot contract like-kind slots");

  const int m = sig.dim;
  std::vector<Slot> out_slots;
  for (int k = 0; k < r; ++k)
    if (k != slot_a && k != slot_b) out_slots.push_back(sig.slots[k]);
  ComplexTensor out(IndexSignature(m, out_slots));

  std::vector<int> out_idx(out_slots.size(), 0);
  std::vector<int> in_idx(r, 0);
  const std::size_t n_out = out.size();
  for (std::size_t f = 0; f < n_out; ++f) {
    // decode row-major flat index of the output
    std::size_t rem = f;
    for (int k = static_cast<int>(out_idx.size()) - 1; k >= 0; --k) {
      out_idx[k] = static_cast<int>(rem % m);
      rem /= m;
    }
    cplx sum(0.0, 0.0);
    for (int s = 0; s < m; ++s) {
      int pos = 0;
      for (int k = 0; k < r; ++k) {
        if (k == slot_a || k == slot_b)
          in_idx[k] = s;
        else
          in_idx[k] = out_idx[pos++];
      }
      sum += t.at(in_idx);
    }
    out.data()[f] = sum;
  }
  return out;
}

GapReport check_kahler_symmetries(const ComplexTensor& t, double tol) {
  if (!(t.signature() == curvature_signature(t.dim())))
    throw std::invalid_argument(
        "check_kahler_symmetries: expected slot pattern (holo, anti, holo, anti)");
  const int m = t.dim();
  double v_swap13 = 0.0, v_swap24 = 0.0, v_conj = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          const cplx q = t(a, b, c, d);
          v_swap13 = std::max(v_swap13, std::abs(q - t(c, b, a, d)));
          v_swap24 = std::max(v_swap24, std::abs(q - t(a, d, c, b)));
          v_conj = std::max(v_conj, std::abs(std::conj(q) - t(b, a, d, c)));
        }
  const double worst = std::max({v_swap13, v_swap24, v_conj});
  return make_gap_report("kahler_symmetry", worst, 0.0, tol,
                         "swap13=" + std::to_string(v_swap13) +
                             " swap24=" + std::to_string(v_swap24) +
                             " conj=" + std::to_string(v_conj));
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.mat());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
  std::vector<double> ev(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + h.dim());
  std::sort(ev.begin(), ev.end());
  return ev;
}

namespace {

// Multiplies one slot of t by the matrix a: out_{..p..} = sum_q a(p,q) t_{..q..}.
ComplexTensor mode_multiply(const ComplexTensor& t, int slot,
                            const Eigen::MatrixXcd& a) {
  const auto& sig = t.signature();
  const int m = sig.dim;
  const int r = sig.rank();
  ComplexTensor out(sig);

  // stride of the chosen slot in the row-major layout
  std::size_t stride = 1;
  for (int k = slot + 1; k < r; ++k) stride *= static_cast<std::size_t>(m);
  const std::size_t block = stride * static_cast<std::size_t>(m);
  const std::size_t total = t.size();

  for (std::size_t base = 0; base < total; base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      for (int p = 0; p < m; ++p) {
        cplx sum(0.0, 0.0);
        for (int q = 0; q < m; ++q)
          sum += a(p, q) * t.data()[base + static_cast<std::size_t>(q) * stride + off];
        out.data()[base + static_cast<std::size_t>(p) * stride + off] = sum;
      }
    }
  }
  return out;
}

Eigen::MatrixXcd inverse_cholesky_factor(const Eigen::MatrixXcd& g) {
  Eigen::LLT<Eigen::MatrixXcd> llt(g);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("metric not positive definite at point");
  const Eigen::MatrixXcd l = llt.matrixL();
  return l.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXcd::Identity(g.rows(), g.cols()));
}

}  // namespace

ComplexTensor frame_normalize(const HermitianMatrix& g, const ComplexTensor& t) {
  if (g.dim() != t.dim())
    throw std::invalid_argument("frame_normalize: dimension mismatch");
  const Eigen::MatrixXcd a = inverse_cholesky_factor(g.mat());
  const Eigen::MatrixXcd a_conj = a.conjugate();
  ComplexTensor out = t;
  for (int k = 0; k < t.rank(); ++k)
    out = mode_multiply(out, k, t.signature().slots[k] == Slot::Holo ? a : a_conj);
  return out;
}

Eigen::MatrixXcd frame_normalize(const Eigen::MatrixXcd& g,
                                 const Eigen::MatrixXcd& t) {
  const Eigen::MatrixXcd a = inverse_cholesky_factor(g);
  return a * t * a.adjoint();
}

double hermitian_norm_sq(const HermitianMatrix& e) {
  return 2.0 * e.mat().squaredNorm();
}

double curvature_norm_sq(const ComplexTensor& t) {
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) s += std::norm(t.data()[i]);
  return 4.0 * s;
}

double curvature_inner(const ComplexTensor& x, const ComplexTensor& y) {
  if (!(x.signature() == y.signature()))
    throw std::invalid_argument("curvature_inner: signature mismatch");
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    s += x.data()[i] * std::conj(y.data()[i]);
  return 4.0 * s.real();
}

}  // namespace kcurv
