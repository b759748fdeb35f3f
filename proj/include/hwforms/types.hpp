#ifndef HWFORMS_TYPES_HPP
#define HWFORMS_TYPES_HPP

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/Sparse>

#include <stdexcept>
#include <string>

namespace hwforms {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

using Vec4 = Eigen::Matrix<double, 4, 1>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec12 = Eigen::Matrix<double, 12, 1>;
using Vec66 = Eigen::Matrix<double, 66, 1>;

using RowVec4 = Eigen::Matrix<double, 1, 4>;
using Mat3x4 = Eigen::Matrix<double, 3, 4>;
using Mat3x6 = Eigen::Matrix<double, 3, 6>;
using Mat3x12 = Eigen::Matrix<double, 3, 12>;
using Mat12 = Eigen::Matrix<double, 12, 12>;
using Mat66 = Eigen::Matrix<double, 66, 66>;

using SparseMat = Eigen::SparseMatrix<double>;

/// Thrown when an input file or mesh fails validation.
class MeshError : public std::runtime_error {
public:
  explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a state reaches J <= 0 under a logarithmic energy law.
/// The Newton loop catches this and halves the increment.
class InadmissibleState : public std::runtime_error {
public:
  explicit InadmissibleState(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a Newton load step cannot be completed.
class SolveError : public std::runtime_error {
public:
  explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hwforms

#endif
