#include "oog/hamiltonian.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "linalg.hpp"
#include "oog/error.hpp"

namespace oog {
namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be positive and finite");
  }
}

struct DcalCheck {
  double sigma_min;
  double scale;
  bool positive_definite;
};

DcalCheck check_dcal(const Matrix& Dcal, const Matrix& DrtDr, const Matrix& DptDp, double gamma,
                     double epsilon) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(Dcal, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "symmetric eigensolver failed on Dcal");
  }
  const auto& lambda = eig.eigenvalues();
  const auto norm2 = [](const Matrix& S) {
    if (S.size() == 0) return 0.0;
    return Eigen::SelfAdjointEigenSolver<Matrix>(S, Eigen::EigenvaluesOnly)
        .eigenvalues()
        .cwiseAbs()
        .maxCoeff();
  };
  return {lambda.cwiseAbs().minCoeff(),
          gamma * norm2(DrtDr) + norm2(DptDp) + gamma * epsilon,
          lambda.minCoeff() > 0.0};
}

Matrix symmetrized(const Matrix& S) { return 0.5 * (S + S.transpose()); }

}  // namespace

HamiltonianParts build_hamiltonian(const TwoOutputPlant& plant, double epsilon, double gamma,
                                   double tau_sing) {
  require_positive(epsilon, "regularization epsilon");
  require_positive(gamma, "level gamma");

  const Eigen::Index n = plant.states();
  const Matrix& A = plant.A();
  const Matrix& B = plant.B();
  const Matrix& Cp = plant.Cp();
  const Matrix& Dp = plant.Dp();
  const Matrix& Cr = plant.Cr();
  const Matrix& Dr = plant.Dr();

  const Matrix DrtDr = Dr.transpose() * Dr;
  const Matrix DptDp = Dp.transpose() * Dp;
  HamiltonianParts parts;
  parts.gamma = gamma;
  parts.epsilon = epsilon;
  parts.Dcal = symmetrized(gamma * DrtDr - DptDp);
  parts.Dcal.diagonal().array() += gamma * epsilon;

  const DcalCheck check = check_dcal(parts.Dcal, DrtDr, DptDp, gamma, epsilon);
  if (!(check.sigma_min > tau_sing * check.scale)) {
    std::ostringstream msg;
    msg << "Dcal is numerically singular (sigma_min " << check.sigma_min << " <= " << tau_sing
        << " * " << check.scale << ") at gamma " << gamma << ", epsilon " << epsilon;
    throw Error(ErrorCode::SingularDcal, msg.str());
  }

  // S = Dp^T Cp - gamma Dr^T Cr; both K and B Dcal^{-1} B^T need Dcal^{-1}.
  const Matrix S = Dp.transpose() * Cp - gamma * Dr.transpose() * Cr;
  Matrix DinvBt;
  if (check.positive_definite) {
    Eigen::LLT<Matrix> llt(parts.Dcal);
    parts.K = llt.solve(S);
    DinvBt = llt.solve(B.transpose());
  } else {
    Eigen::PartialPivLU<Matrix> lu(parts.Dcal);
    parts.K = lu.solve(S);
    DinvBt = lu.solve(B.transpose());
  }

  const Matrix Acl = A + B * parts.K;
  const Matrix R = symmetrized(B * DinvBt);
  const Matrix Q = symmetrized(-gamma * Cr.transpose() * (Cr + Dr * parts.K) +
                               Cp.transpose() * (Cp + Dp * parts.K));

  parts.Mgamma.resize(2 * n, 2 * n);
  parts.Mgamma << Acl, -R, Q, -Acl.transpose();
  if (!parts.Mgamma.allFinite()) {
    throw Error(ErrorCode::SingularDcal, "Hamiltonian has non-finite entries");
  }
  return parts;
}

HamiltonianParts build_regularized_hamiltonian(const TwoOutputPlant& plant, double epsilon0,
                                               double gamma, int max_tries, double tau_sing) {
  require_positive(epsilon0, "regularization epsilon");
  if (max_tries < 0) throw Error(ErrorCode::InvalidArgument, "max_tries must be >= 0");

  std::ostringstream history;
  for (int k = 0; k <= max_tries; ++k) {
    const double epsilon = epsilon0 * std::pow(1.0 + kRegularizationStep, k);
    try {
      return build_hamiltonian(plant, epsilon, gamma, tau_sing);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularDcal) throw;
      history << (k ? "; " : "") << e.what();
    }
  }
  throw Error(ErrorCode::RegularizationFailed,
              "no regularization in " + std::to_string(max_tries + 1) +
                  " tries made Dcal invertible: " + history.str());
}

double retry_regularization(const TwoOutputPlant& plant, double epsilon0, double gamma,
                            int max_tries, double tau_sing) {
  return build_regularized_hamiltonian(plant, epsilon0, gamma, max_tries, tau_sing).epsilon;
}

ImagEigs imaginary_eigenvalues(const Matrix& M, double tau_im, double tau_merge) {
  const Eigen::VectorXcd lambda = detail::general_eigenvalues(M);

  std::vector<std::pair<double, double>> hits;  // (frequency, residual)
  for (const auto& l : lambda) {
    if (l.imag() < 0.0) continue;
    const double residual = std::abs(l.real());
    if (residual <= tau_im * (1.0 + std::abs(l))) hits.emplace_back(std::abs(l.imag()), residual);
  }
  std::sort(hits.begin(), hits.end());

  ImagEigs out;
  for (const auto& [omega, residual] : hits) {
    if (!out.frequencies.empty() &&
        omega - out.frequencies.back() <= tau_merge * (1.0 + out.frequencies.back())) {
      out.residuals.back() = std::max(out.residuals.back(), residual);
      continue;
    }
    out.frequencies.push_back(omega);
    out.residuals.push_back(residual);
  }
  return out;
}

}  // namespace oog
