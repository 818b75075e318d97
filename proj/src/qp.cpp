// Copyright 2026 The quadref Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quadref/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "quadref/error.hpp"

namespace quadref::qp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRegularization = 1e-9;

// Equality constraints eliminated: x = x_p + Z y.
struct NullSpace {
  VectorXd particular;
  MatrixXd basis;
  MatrixXd range;         // Q1, orthonormal basis of range(A_eq')
  MatrixXd r_upper;       // R11, rank x rank
  Eigen::VectorXi perm;   // column permutation of A_eq'
  int rank = 0;
  bool consistent = true;
};

NullSpace EliminateEqualities(const Problem& p) {
  const int n = p.num_variables();
  const int me = static_cast<int>(p.eq_rhs.size());
  NullSpace ns;
  if (me == 0) {
    ns.particular = VectorXd::Zero(n);
    ns.basis = MatrixXd::Identity(n, n);
    ns.range.resize(n, 0);
    return ns;
  }
  Eigen::ColPivHouseholderQR<MatrixXd> qr(p.eq_matrix.transpose());
  qr.setThreshold(1e-12);
  const int r = static_cast<int>(qr.rank());
  const MatrixXd q = qr.householderQ() * MatrixXd::Identity(n, n);
  const MatrixXd rr = qr.matrixQR().triangularView<Eigen::Upper>();
  ns.rank = r;
  ns.perm = qr.colsPermutation().indices();
  ns.range = q.leftCols(r);
  ns.basis = q.rightCols(n - r);
  ns.r_upper = rr.topLeftCorner(r, r);

  // A_eq' P = Q R  =>  R' (Q' x) = P' b.
  VectorXd pb(me);
  for (int i = 0; i < me; ++i) pb(i) = p.eq_rhs(ns.perm(i));
  VectorXd y1 = VectorXd::Zero(r);
  if (r > 0) {
    y1 = ns.r_upper.transpose().triangularView<Eigen::Lower>().solve(pb.head(r));
  }
  const double scale = 1.0 + p.eq_rhs.lpNorm<Eigen::Infinity>();
  for (int i = r; i < me; ++i) {
    const double lhs = rr.block(0, i, r, 1).col(0).dot(y1);
    if (std::abs(lhs - pb(i)) > 1e-9 * scale) ns.consistent = false;
  }
  ns.particular = ns.range * y1;
  return ns;
}

// Goldfarb-Idnani dual active-set method for
//   minimize 1/2 y' G y + g' y  subject to  C y <= d,
// given the inverse Cholesky factor J = L^{-T} of G.
class DualActiveSet {
 public:
  DualActiveSet(const MatrixXd& j_init, const VectorXd& g, const MatrixXd& c,
                const VectorXd& d, const VectorXd& feas_tol)
      : n_(static_cast<int>(g.size())),
        m_(static_cast<int>(d.size())),
        c_(c),
        d_(d),
        j_(j_init),
        r_(MatrixXd::Zero(n_, n_)),
        in_active_(m_, false),
        row_norm_(m_),
        feas_tol_(feas_tol) {
    y_ = -(j_ * (j_.transpose() * g));
    for (int i = 0; i < m_; ++i) row_norm_(i) = std::max(1.0, c_.row(i).norm());
  }

  enum class Outcome { kOptimal, kInfeasible, kMaxIter };

  Outcome Run(int max_iter, int* iterations) {
    int iter = 0;
    while (true) {
      // Most violated constraint, scaled by its row norm.
      int p = -1;
      double worst = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (in_active_[i]) continue;
        const double slack = d_(i) - c_.row(i).dot(y_);
        if (slack >= -feas_tol_(i)) continue;
        const double scaled = slack / row_norm_(i);
        if (scaled < worst) {
          worst = scaled;
          p = i;
        }
      }
      if (p < 0) {
        *iterations = iter;
        return Outcome::kOptimal;
      }

      double u_new = 0.0;
      while (true) {
        if (++iter > max_iter) {
          *iterations = iter;
          return Outcome::kMaxIter;
        }
        const VectorXd np = -c_.row(p).transpose();
        const VectorXd dvec = j_.transpose() * np;
        const VectorXd z = j_.rightCols(n_ - q_) * dvec.tail(n_ - q_);
        VectorXd r(q_);
        if (q_ > 0) {
          r = r_.topLeftCorner(q_, q_).triangularView<Eigen::Upper>().solve(
              dvec.head(q_));
        }

        // Partial (dual) step length.
        double t1 = kInf;
        int drop = -1;
        for (int k = 0; k < q_; ++k) {
          if (r(k) > 0.0) {
            const double ratio = u_[k] / r(k);
            if (ratio < t1) {
              t1 = ratio;
              drop = k;
            }
          }
        }
        // Full (primal) step length.
        const double slack = d_(p) - c_.row(p).dot(y_);  // n_p' y - b_p, < 0
        const double zn = z.dot(np);
        double t2 = kInf;
        if (z.lpNorm<Eigen::Infinity>() > 1e-14 * (1.0 + np.norm()) && zn > 0.0) {
          t2 = -slack / zn;
        }
        const double t = std::min(t1, t2);
        if (!std::isfinite(t)) return Outcome::kInfeasible;

        if (!std::isfinite(t2)) {
          for (int k = 0; k < q_; ++k) u_[k] -= t * r(k);
          u_new += t;
          DropConstraint(drop);
          continue;
        }

        y_ += t * z;
        for (int k = 0; k < q_; ++k) u_[k] -= t * r(k);
        u_new += t;
        if (t2 <= t1) {
          AddConstraint(p, j_.transpose() * np, u_new);
          break;
        }
        DropConstraint(drop);
      }
    }
  }

  const VectorXd& y() const { return y_; }
  const std::vector<int>& active() const { return active_; }
  const std::vector<double>& multipliers() const { return u_; }

 private:
  void AddConstraint(int index, VectorXd dvec, double multiplier) {
    for (int j = n_ - 1; j >= q_ + 1; --j) {
      double cc = dvec(j - 1);
      double ss = dvec(j);
      const double h = std::hypot(cc, ss);
      if (h == 0.0) continue;
      dvec(j) = 0.0;
      ss /= h;
      cc /= h;
      if (cc < 0.0) {
        cc = -cc;
        ss = -ss;
        dvec(j - 1) = -h;
      } else {
        dvec(j - 1) = h;
      }
      const double xny = ss / (1.0 + cc);
      for (int k = 0; k < n_; ++k) {
        const double a = j_(k, j - 1);
        const double b = j_(k, j);
        j_(k, j - 1) = a * cc + b * ss;
        j_(k, j) = xny * (a + j_(k, j - 1)) - b;
      }
    }
    r_.col(q_).head(q_ + 1) = dvec.head(q_ + 1);
    ++q_;
    active_.push_back(index);
    u_.push_back(multiplier);
    in_active_[index] = true;
  }

  void DropConstraint(int pos) {
    in_active_[active_[pos]] = false;
    active_.erase(active_.begin() + pos);
    u_.erase(u_.begin() + pos);
    for (int i = pos; i < q_ - 1; ++i) r_.col(i) = r_.col(i + 1);
    r_.col(q_ - 1).setZero();
    --q_;
    for (int j = pos; j < q_; ++j) {
      double cc = r_(j, j);
      double ss = r_(j + 1, j);
      const double h = std::hypot(cc, ss);
      if (h == 0.0) continue;
      cc /= h;
      ss /= h;
      r_(j + 1, j) = 0.0;
      if (cc < 0.0) {
        r_(j, j) = -h;
        cc = -cc;
        ss = -ss;
      } else {
        r_(j, j) = h;
      }
      const double xny = ss / (1.0 + cc);
      for (int k = j + 1; k < q_; ++k) {
        const double a = r_(j, k);
        const double b = r_(j + 1, k);
        r_(j, k) = a * cc + b * ss;
        r_(j + 1, k) = xny * (a + r_(j, k)) - b;
      }
      for (int k = 0; k < n_; ++k) {
        const double a = j_(k, j);
        const double b = j_(k, j + 1);
        j_(k, j) = a * cc + b * ss;
        j_(k, j + 1) = xny * (j_(k, j) + a) - b;
      }
    }
  }

  int n_;
  int m_;
  const MatrixXd& c_;
  const VectorXd& d_;
  MatrixXd j_;
  MatrixXd r_;
  VectorXd y_;
  int q_ = 0;
  std::vector<int> active_;
  std::vector<double> u_;
  std::vector<bool> in_active_;
  VectorXd row_norm_;
  VectorXd feas_tol_;
};

// Least-squares multipliers for the equalities and the given active
// inequalities so that H x + c + A' lambda is as small as possible.
void FitMultipliers(const Problem& p, const MatrixXd& h, const VectorXd& x,
                    const std::vector<int>& active, VectorXd* eq_duals,
                    VectorXd* active_duals) {
  const int n = p.num_variables();
  const int me = static_cast<int>(p.eq_rhs.size());
  const int q = static_cast<int>(active.size());
  MatrixXd a(n, me + q);
  if (me > 0) a.leftCols(me) = p.eq_matrix.transpose();
  for (int k = 0; k < q; ++k) a.col(me + k) = p.ineq_matrix.row(active[k]).transpose();
  const VectorXd rhs = -(h * x + p.linear_cost);
  VectorXd sol = VectorXd::Zero(me + q);
  if (me + q > 0) sol = a.completeOrthogonalDecomposition().solve(rhs);
  *eq_duals = sol.head(me);
  *active_duals = sol.tail(q);
}

// Re-solves the equality-constrained problem on the final active set with a
// slightly regularized KKT matrix, then refines against the exact one.
bool PolishOnActiveSet(const Problem& p, const MatrixXd& h,
                       const std::vector<int>& active, Solution* out) {
  const int n = p.num_variables();
  const int me = static_cast<int>(p.eq_rhs.size());
  const int q = static_cast<int>(active.size());
  const int m = me + q;
  MatrixXd k_exact = MatrixXd::Zero(n + m, n + m);
  VectorXd rhs(n + m);
  k_exact.topLeftCorner(n, n) = h;
  rhs.head(n) = -p.linear_cost;
  if (me > 0) {
    k_exact.block(n, 0, me, n) = p.eq_matrix;
    k_exact.block(0, n, n, me) = p.eq_matrix.transpose();
    rhs.segment(n, me) = p.eq_rhs;
  }
  for (int k = 0; k < q; ++k) {
    k_exact.block(n + me + k, 0, 1, n) = p.ineq_matrix.row(active[k]);
    k_exact.block(0, n + me + k, n, 1) = p.ineq_matrix.row(active[k]).transpose();
    rhs(n + me + k) = p.ineq_rhs(active[k]);
  }
  MatrixXd k_reg = k_exact;
  k_reg.topLeftCorner(n, n).diagonal().array() += kRegularization;
  k_reg.bottomRightCorner(m, m).diagonal().array() -= 1e-12;
  Eigen::PartialPivLU<MatrixXd> lu(k_reg);
  VectorXd sol = lu.solve(rhs);
  for (int it = 0; it < 5; ++it) {
    const VectorXd resid = rhs - k_exact * sol;
    if (resid.lpNorm<Eigen::Infinity>() < 1e-14) break;
    sol += lu.solve(resid);
  }
  if (!sol.allFinite()) return false;
  for (int k = 0; k < q; ++k) {
    if (sol(n + me + k) < -1e-10) return false;
  }
  out->x_opt = sol.head(n);
  out->eq_duals = sol.segment(n, me);
  out->ineq_duals.setZero();
  for (int k = 0; k < q; ++k) {
    out->ineq_duals(active[k]) = std::max(0.0, sol(n + me + k));
  }
  out->objective = Objective(p, out->x_opt);
  return true;
}

}  // namespace

Problem Problem::Unconstrained(const MatrixXd& hessian,
                               const VectorXd& linear_cost) {
  const auto n = linear_cost.size();
  return Problem{hessian,          linear_cost,      MatrixXd(0, n),
                 VectorXd(0),      MatrixXd(0, n),   VectorXd(0)};
}

const char* ToString(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "Optimal";
    case Status::kInfeasible:
      return "Infeasible";
    case Status::kMaxIter:
      return "MaxIter";
  }
  return "?";
}

double KktResiduals::max() const {
  return std::max({stationarity, primal, complementarity});
}

void Validate(const Problem& p) {
  const auto n = p.linear_cost.size();
  if (p.hessian.rows() != n || p.hessian.cols() != n) {
    throw Error(ErrorKind::kConfig, "qp: hessian must be n x n");
  }
  if (p.eq_matrix.cols() != n || p.eq_matrix.rows() != p.eq_rhs.size()) {
    throw Error(ErrorKind::kConfig, "qp: equality block dimension mismatch");
  }
  if (p.ineq_matrix.cols() != n || p.ineq_matrix.rows() != p.ineq_rhs.size()) {
    throw Error(ErrorKind::kConfig, "qp: inequality block dimension mismatch");
  }
  if (!p.hessian.allFinite() || !p.linear_cost.allFinite() ||
      !p.eq_matrix.allFinite() || !p.eq_rhs.allFinite() ||
      !p.ineq_matrix.allFinite() || !p.ineq_rhs.allFinite()) {
    throw Error(ErrorKind::kConfig, "qp: non-finite problem data");
  }
  if (n == 0) return;
  const double scale = std::max(1.0, p.hessian.lpNorm<Eigen::Infinity>());
  if ((p.hessian - p.hessian.transpose()).lpNorm<Eigen::Infinity>() >
      1e-12 * scale) {
    throw Error(ErrorKind::kConfig, "qp: hessian is not symmetric");
  }
  const MatrixXd shifted =
      p.hessian + kRegularization * MatrixXd::Identity(n, n);
  if (Eigen::LLT<MatrixXd>(shifted).info() != Eigen::Success) {
    throw Error(ErrorKind::kConfig, "qp: hessian is not positive semidefinite");
  }
}

double Objective(const Problem& p, const VectorXd& x) {
  return 0.5 * x.dot(p.hessian * x) + p.linear_cost.dot(x);
}

KktResiduals ComputeKktResiduals(const Problem& p, const Solution& s) {
  const auto n = p.linear_cost.size();
  if (s.x_opt.size() != n || s.eq_duals.size() != p.eq_rhs.size() ||
      s.ineq_duals.size() != p.ineq_rhs.size()) {
    throw Error(ErrorKind::kConfig, "qp: solution dimension mismatch");
  }
  KktResiduals res;
  VectorXd grad = p.hessian * s.x_opt + p.linear_cost;
  if (p.eq_rhs.size() > 0) grad += p.eq_matrix.transpose() * s.eq_duals;
  if (p.ineq_rhs.size() > 0) grad += p.ineq_matrix.transpose() * s.ineq_duals;
  res.stationarity = n > 0 ? grad.lpNorm<Eigen::Infinity>() : 0.0;
  if (p.eq_rhs.size() > 0) {
    res.primal = (p.eq_matrix * s.x_opt - p.eq_rhs).lpNorm<Eigen::Infinity>();
  }
  for (Eigen::Index i = 0; i < p.ineq_rhs.size(); ++i) {
    const double slack = p.ineq_rhs(i) - p.ineq_matrix.row(i).dot(s.x_opt);
    res.primal = std::max(res.primal, -slack);
    res.complementarity =
        std::max(res.complementarity, std::abs(s.ineq_duals(i) * slack));
  }
  return res;
}

Solution Solve(const Problem& problem, const Options& options) {
  if (!(options.tol > 0.0)) {
    throw Error(ErrorKind::kConfig, "qp: tolerance must be positive");
  }
  Validate(problem);
  const int n = problem.num_variables();
  const int me = static_cast<int>(problem.eq_rhs.size());
  const int mi = static_cast<int>(problem.ineq_rhs.size());
  const MatrixXd h = 0.5 * (problem.hessian + problem.hessian.transpose());

  Solution sol;
  sol.x_opt = VectorXd::Zero(n);
  sol.eq_duals = VectorXd::Zero(me);
  sol.ineq_duals = VectorXd::Zero(mi);

  const NullSpace ns = EliminateEqualities(problem);
  if (!ns.consistent) {
    sol.status = Status::kInfeasible;
    sol.x_opt = ns.particular;
    sol.objective = Objective(problem, sol.x_opt);
    return sol;
  }
  const int nz = static_cast<int>(ns.basis.cols());
  const MatrixXd hz = h * ns.basis;
  MatrixXd g_red = ns.basis.transpose() * hz;
  g_red = 0.5 * (g_red + g_red.transpose());
  const VectorXd c_red =
      ns.basis.transpose() * (h * ns.particular + problem.linear_cost);
  const MatrixXd a_red = problem.ineq_matrix * ns.basis;
  const VectorXd b_red = problem.ineq_rhs - problem.ineq_matrix * ns.particular;

  Eigen::LLT<MatrixXd> llt(g_red);
  bool regularize = llt.info() != Eigen::Success;
  if (!regularize && nz > 0) {
    const VectorXd pivots = llt.matrixLLT().diagonal();
    regularize = pivots.cwiseAbs2().minCoeff() < kRegularization;
  }
  if (regularize) {
    llt.compute(g_red + kRegularization * MatrixXd::Identity(nz, nz));
    sol.regularized = true;
  }
  const MatrixXd j_init = llt.matrixU().solve(MatrixXd::Identity(nz, nz));

  // Rounding allowance per constraint, from the size of the terms that
  // cancel in b - A x_particular.
  VectorXd feas_tol(mi);
  for (int i = 0; i < mi; ++i) {
    const double terms = std::abs(problem.ineq_rhs(i)) +
                         problem.ineq_matrix.row(i).cwiseAbs().dot(ns.particular.cwiseAbs());
    feas_tol(i) = 1e-12 * (1.0 + terms);
  }
  DualActiveSet solver(j_init, c_red, a_red, b_red, feas_tol);
  int iterations = 0;
  const auto outcome = solver.Run(options.max_iter, &iterations);
  sol.iterations = iterations;
  sol.x_opt = ns.particular + ns.basis * solver.y();
  sol.objective = Objective(problem, sol.x_opt);
  if (outcome == DualActiveSet::Outcome::kInfeasible) {
    sol.status = Status::kInfeasible;
    return sol;
  }
  if (outcome == DualActiveSet::Outcome::kMaxIter) {
    sol.status = Status::kMaxIter;
    return sol;
  }

  // Multipliers from the dual method, then a least-squares refit against the
  // unregularized Hessian; keep whichever gives the smaller stationarity.
  const auto& active = solver.active();
  const auto& mult = solver.multipliers();
  Solution candidate = sol;
  for (std::size_t k = 0; k < active.size(); ++k) {
    candidate.ineq_duals(active[k]) = std::max(0.0, mult[k]);
  }
  if (me > 0) {
    VectorXd rhs = -(h * sol.x_opt + problem.linear_cost);
    if (mi > 0) rhs -= problem.ineq_matrix.transpose() * candidate.ineq_duals;
    const VectorXd qr = ns.range.transpose() * rhs;
    VectorXd mu_perm = VectorXd::Zero(me);
    if (ns.rank > 0) {
      mu_perm.head(ns.rank) =
          ns.r_upper.triangularView<Eigen::Upper>().solve(qr);
    }
    for (int i = 0; i < me; ++i) candidate.eq_duals(ns.perm(i)) = mu_perm(i);
  }
  KktResiduals best = ComputeKktResiduals(problem, candidate);

  VectorXd eq_fit;
  VectorXd act_fit;
  FitMultipliers(problem, h, sol.x_opt, active, &eq_fit, &act_fit);
  if (act_fit.size() == 0 || act_fit.minCoeff() >= -1e-10) {
    Solution refit = sol;
    refit.eq_duals = eq_fit;
    for (std::size_t k = 0; k < active.size(); ++k) {
      refit.ineq_duals(active[k]) = std::max(0.0, act_fit(k));
    }
    const KktResiduals res = ComputeKktResiduals(problem, refit);
    if (res.max() < best.max()) {
      candidate = refit;
      best = res;
    }
  }
  Solution polished = sol;
  if (PolishOnActiveSet(problem, h, active, &polished)) {
    const KktResiduals res = ComputeKktResiduals(problem, polished);
    if (res.max() < best.max()) {
      candidate = polished;
      best = res;
    }
  }
  sol = candidate;
  sol.status = best.max() <= options.tol ? Status::kOptimal : Status::kMaxIter;
  return sol;
}

}  // namespace quadref::qp
