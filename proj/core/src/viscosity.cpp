#include "multifluid/viscosity.hpp"

#include <cmath>
#include <sstream>

#include "multifluid/error.hpp"

namespace multifluid {

namespace {

void check_square(const Matrix& m, const char* name) {
  if (m.rows() != m.cols()) throw InvalidInput(std::string(name) + " must be square");
  if (!m.allFinite()) throw InvalidInput(std::string(name) + " has non-finite entries");
}

double entry_or_zero(const Matrix& m, std::size_t i, std::size_t j) {
  if (m.size() == 0) return 0.0;
  return m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

Matrix zero_if_empty(const Matrix& m, std::size_t n) {
  if (m.size() == 0) return Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  return m;
}

}  // namespace

Matrix ViscosityMatrices::bulk_combination() const { return second + (2.0 / 3.0) * shear; }

Matrix ViscosityMatrices::stress_coefficients() const { return 2.0 * shear + second; }

ViscosityMatrices make_constant_matrices(Matrix shear, Matrix second) {
  check_square(shear, "shear viscosity matrix");
  if (shear.rows() == 0) throw InvalidInput("shear viscosity matrix is empty");
  second = zero_if_empty(second, static_cast<std::size_t>(shear.rows()));
  check_square(second, "second viscosity matrix");
  if (second.rows() != shear.rows()) {
    throw InvalidInput("shear and second viscosity matrices differ in size");
  }
  return {std::move(shear), std::move(second), ViscosityProvenance::constant};
}

void ViscosityModel::validate() const {
  const auto n = static_cast<Eigen::Index>(size());
  if (n == 0) throw InvalidInput("viscosity model has no constituents");
  for (double mu : pure_viscosities) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw InvalidInput("pure viscosities must be non-negative");
  }
  for (const Matrix* m : {&empiric_alpha, &empiric_beta, &second}) {
    if (m->size() == 0) continue;
    check_square(*m, "viscosity model matrix");
    if (m->rows() != n) throw InvalidInput("viscosity model matrix size does not match constituents");
  }
}

Matrix shear_matrix(const ViscosityModel& model, const ConcentrationVector& xi) {
  const std::size_t n = model.size();
  if (xi.size() != n) throw InvalidInput("concentration size does not match viscosity model");
  Eigen::VectorXd nv(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    nv(static_cast<Eigen::Index>(i)) = std::sqrt(model.pure_viscosities[i]) * xi[i];
  }
  const double nv_sum = nv.sum();
  Matrix m = nv * nv.transpose();
  for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, i) += nv(i) * (nv_sum - nv(i));
  return m;
}

OffDiagonalValue offdiag_general(const ViscosityModel& model, std::size_t i, std::size_t j,
                                 const ConcentrationVector& xi) {
  if (i == j) throw InvalidInput("offdiag_general needs distinct indices");
  if (i >= model.size() || j >= model.size()) throw InvalidInput("viscosity index out of range");
  const double xi_i = xi[i];
  const double xi_j = xi[j];
  if (xi_i + xi_j == 0.0) return {0.0, true};
  const double mu0 = std::sqrt(model.pure_viscosities[i] * model.pure_viscosities[j]);
  double exponent = 0.0;
  if (model.rule == OffDiagonalRule::exponential) {
    exponent = (entry_or_zero(model.empiric_alpha, i, j) * xi_i +
                entry_or_zero(model.empiric_beta, i, j) * xi_j) /
               (xi_i + xi_j);
  }
  return {mu0 * xi_i * xi_j * std::exp(exponent), false};
}

Matrix shear_matrix_general(const ViscosityModel& model, const ConcentrationVector& xi) {
  const std::size_t n = model.size();
  if (xi.size() != n) throw InvalidInput("concentration size does not match viscosity model");
  const auto en = static_cast<Eigen::Index>(n);
  Matrix m = Matrix::Zero(en, en);
  for (std::size_t i = 0; i < n; ++i) {
    double off_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double mu_ij = offdiag_general(model, i, j, xi).value;
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = mu_ij;
      off_sum += mu_ij;
    }
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
        model.pure_viscosities[i] * xi[i] * xi[i] + off_sum;
  }
  return m;
}

ViscosityMatrices evaluate_model(const ViscosityModel& model, const ConcentrationVector& xi) {
  Matrix shear = model.rule == OffDiagonalRule::simple ? shear_matrix(model, xi)
                                                       : shear_matrix_general(model, xi);
  return {std::move(shear), zero_if_empty(model.second, model.size()),
          ViscosityProvenance::concentration_dependent};
}

Eigen::VectorXd symmetric_eigenvalues(const Matrix& a) {
  check_square(a, "matrix");
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

std::string PositivityVerdict::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << (pass() ? "pass" : "fail") << ": min eig sym(M) = " << min_eig_shear
     << (shear_positive_definite ? " > 0" : " <= 0 (M not positive definite)")
     << ", min eig sym(H) = " << min_eig_bulk
     << (bulk_positive_semidefinite ? " >= 0" : " < 0 (H not positive semi-definite)");
  return os.str();
}

PositivityVerdict bulk_constraint_check(const ViscosityMatrices& matrices) {
  check_square(matrices.shear, "shear viscosity matrix");
  check_square(matrices.second, "second viscosity matrix");
  if (matrices.shear.rows() != matrices.second.rows()) {
    throw InvalidInput("shear and second viscosity matrices differ in size");
  }
  if (matrices.shear.rows() == 0) throw InvalidInput("viscosity matrices are empty");
  const double min_m = symmetric_eigenvalues(matrices.shear).minCoeff();
  const double min_h = symmetric_eigenvalues(matrices.bulk_combination()).minCoeff();
  return {min_m > 0.0, min_h >= -PositivityVerdict::kSemiDefiniteTolerance, min_m, min_h};
}

std::vector<double> stress_1d(const ViscosityMatrices& matrices, std::span<const double> dudx) {
  const std::size_t n = matrices.size();
  if (dudx.size() != n) throw InvalidInput("gradient vector size does not match viscosity matrices");
  const Matrix coeff = matrices.stress_coefficients();
  std::vector<double> stress(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      stress[i] += coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * dudx[j];
    }
  }
  return stress;
}

}  // namespace multifluid
