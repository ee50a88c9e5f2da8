#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mrdepth/error.hpp"

namespace mrdepth {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// n x d observations, one row per point. Immutable after construction;
// represents the empirical distribution of the rows.
class DataSet {
 public:
  explicit DataSet(RowMatrix rows) : rows_(std::move(rows)) {
    if (rows_.rows() < 1) throw Error(ErrorKind::EmptySample, "dataset has no rows");
    if (rows_.cols() < 1) throw Error(ErrorKind::InvalidArgument, "dataset has zero columns");
    if (!rows_.allFinite()) throw Error(ErrorKind::InvalidArgument, "dataset contains non-finite values");
  }

  static DataSet from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw Error(ErrorKind::EmptySample, "dataset has no rows");
    const std::size_t d = rows.front().size();
    RowMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != d) {
        throw Error(ErrorKind::DimensionMismatch,
                    "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                        " columns, expected " + std::to_string(d));
      }
      for (std::size_t j = 0; j < d; ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
      }
    }
    return DataSet(std::move(m));
  }

  std::size_t n() const noexcept { return static_cast<std::size_t>(rows_.rows()); }
  std::size_t d() const noexcept { return static_cast<std::size_t>(rows_.cols()); }
  const RowMatrix& matrix() const noexcept { return rows_; }
  auto row(std::size_t i) const { return rows_.row(static_cast<Eigen::Index>(i)); }

  void require_dim(const Vector& v) const {
    if (static_cast<std::size_t>(v.size()) != d()) {
      throw Error(ErrorKind::DimensionMismatch, "point has dimension " + std::to_string(v.size()) +
                                                    ", dataset has " + std::to_string(d()));
    }
  }

 private:
  RowMatrix rows_;
};

inline Vector make_point(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace mrdepth
