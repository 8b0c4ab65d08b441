#include "meyer/enumerate.hpp"

#include <cmath>

namespace meyer {

namespace {

struct Level {
  Vector<double> row;      // row of the left inverse that recovers the last free coefficient
  Vector<double> abs_row;  // |row|, for the half-width bound
};

void descend(const Matrix<double>& basis, const std::vector<Level>& levels, const Vector<double>& center,
             const Vector<double>& half, Eigen::Index free_count, const Vector<double>& offset, VectorXl& z,
             const std::function<void(const VectorXl&, const Vector<double>&)>& visit) {
  if (free_count == 0) {
    visit(z, offset);
    return;
  }
  const Eigen::Index idx = free_count - 1;
  const Level& level = levels[static_cast<std::size_t>(idx)];
  const double mid = level.row.dot(center - offset);
  const double width = level.abs_row.dot(half);
  const double slack = 1e-9 * (1.0 + std::abs(mid) + width);
  const auto first = static_cast<std::int64_t>(std::ceil(mid - width - slack));
  const auto last = static_cast<std::int64_t>(std::floor(mid + width + slack));
  for (std::int64_t k = first; k <= last; ++k) {
    z[idx] = k;
    const Vector<double> next = offset + basis.col(idx) * static_cast<double>(k);
    descend(basis, levels, center, half, idx, next, z, visit);
  }
  z[idx] = 0;
}

}  // namespace

void enumerate_box_preimage(const Matrix<double>& basis, const Vector<double>& lo, const Vector<double>& hi,
                            const std::function<void(const VectorXl&, const Vector<double>&)>& visit) {
  const Eigen::Index d = basis.rows();
  if (basis.cols() != d || lo.size() != d || hi.size() != d) throw InputError("enumeration dimensions disagree");
  if (std::abs(basis.determinant()) == 0.0) throw InputError("singular basis");
  for (Eigen::Index i = 0; i < d; ++i) {
    if (hi[i] < lo[i]) return;
  }
  std::vector<Level> levels(static_cast<std::size_t>(d));
  for (Eigen::Index k = 1; k <= d; ++k) {
    const Matrix<double> cols = basis.leftCols(k);
    const Matrix<double> pinv = cols.completeOrthogonalDecomposition().pseudoInverse();
    Level& level = levels[static_cast<std::size_t>(k - 1)];
    level.row = pinv.row(k - 1).transpose();
    level.abs_row = level.row.cwiseAbs();
  }
  const Vector<double> center = (lo + hi) / 2.0;
  const Vector<double> half = (hi - lo) / 2.0;
  const Vector<double> offset = Vector<double>::Zero(d);
  VectorXl z = VectorXl::Zero(d);
  descend(basis, levels, center, half, d, offset, z, visit);
}

}  // namespace meyer
