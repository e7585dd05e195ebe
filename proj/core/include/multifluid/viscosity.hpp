#pragma once

// Viscosity matrices of the mixture. M = {mu_ij} couples the shear stress of
// constituent i to the rate of deformation of constituent j; Lambda = {lambda_ij}
// is the second-viscosity matrix. Well-posedness needs M > 0 and
// H = Lambda + (2/3) M >= 0, both read on the symmetric part.

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "multifluid/mixture.hpp"

namespace multifluid {

using Matrix = Eigen::MatrixXd;

enum class ViscosityProvenance { constant, concentration_dependent };

struct ViscosityMatrices {
  Matrix shear;   ///< M
  Matrix second;  ///< Lambda
  ViscosityProvenance provenance = ViscosityProvenance::constant;

  std::size_t size() const { return static_cast<std::size_t>(shear.rows()); }
  /// H = Lambda + (2/3) M
  Matrix bulk_combination() const;
  /// 2 M + Lambda, the coefficient matrix of the one-dimensional stress.
  Matrix stress_coefficients() const;
};

/// Builds matrices from constants; throws InvalidInput for non-square or
/// mismatched shapes or non-finite entries. An empty `second` means Lambda = 0.
ViscosityMatrices make_constant_matrices(Matrix shear, Matrix second = {});

enum class OffDiagonalRule {
  simple,       ///< mu0_ij = sqrt(mu_i mu_j), empiric constants zero
  exponential,  ///< mu0_ij xi_i xi_j exp((a_ij xi_i + b_ij xi_j) / (xi_i + xi_j))
};

struct ViscosityModel {
  std::vector<double> pure_viscosities;
  Matrix empiric_alpha;  ///< a_ij; empty means zero
  Matrix empiric_beta;   ///< b_ij; empty means zero
  OffDiagonalRule rule = OffDiagonalRule::simple;
  Matrix second;  ///< constant Lambda; empty means zero

  std::size_t size() const { return pure_viscosities.size(); }
  void validate() const;
};

/// Simple-rule shear matrix mu_ij = nv_i nv_j + nv_i (nv - nv_i) delta_ij with
/// nv_i = sqrt(mu_i) xi_i and nv = sum nv_i.
Matrix shear_matrix(const ViscosityModel& model, const ConcentrationVector& xi);

struct OffDiagonalValue {
  double value;
  /// Set when xi_i + xi_j = 0; the exponent is then undefined and the value is
  /// the zero limit forced by the prefactor.
  bool degenerate;
};

OffDiagonalValue offdiag_general(const ViscosityModel& model, std::size_t i, std::size_t j,
                                 const ConcentrationVector& xi);

/// Shear matrix from offdiag_general off the diagonal and the completion
/// mu_ii = mu_i xi_i^2 + sum_{j != i} mu_ij on it. Works for both rules.
Matrix shear_matrix_general(const ViscosityModel& model, const ConcentrationVector& xi);

/// Concentration-dependent matrices for the model's rule.
ViscosityMatrices evaluate_model(const ViscosityModel& model, const ConcentrationVector& xi);

/// Eigenvalues of (A + A^T) / 2 in ascending order.
Eigen::VectorXd symmetric_eigenvalues(const Matrix& a);

struct PositivityVerdict {
  static constexpr double kSemiDefiniteTolerance = 1e-12;

  bool shear_positive_definite;
  bool bulk_positive_semidefinite;
  double min_eig_shear;
  double min_eig_bulk;

  bool pass() const { return shear_positive_definite && bulk_positive_semidefinite; }
  std::string describe() const;
};

PositivityVerdict bulk_constraint_check(const ViscosityMatrices& matrices);

/// S_i = sum_j (2 mu_ij + lambda_ij) du_j/dx.
std::vector<double> stress_1d(const ViscosityMatrices& matrices, std::span<const double> dudx);

}  // namespace multifluid
