// Copyright 2026 The aud Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aud/sdp_core.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace aud::sdp_core {

namespace {

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using Blocks = std::vector<Mat<T>>;

template <typename T>
struct Term {
    int block = 0;
    bool dense = false;
    std::vector<int> rows, cols;
    std::vector<T> values;
    Mat<T> full;
};

template <typename T>
using Operator = std::vector<Term<T>>;

template <typename T>
Operator<T> group_by_block(const std::vector<Entry> &entries, const std::vector<int> &sizes) {
    std::vector<std::vector<Entry>> per_block(sizes.size());
    for (const auto &e : entries) {
        if (e.block < 0 || e.block >= static_cast<int>(sizes.size())) {
            throw std::invalid_argument("sdp entry refers to a missing block");
        }
        if (e.row < 0 || e.col < e.row || e.col >= sizes[e.block]) {
            throw std::invalid_argument("sdp entry outside the upper triangle of its block");
        }
        per_block[e.block].push_back(e);
    }
    Operator<T> out;
    for (size_t b = 0; b < sizes.size(); b++) {
        if (per_block[b].empty()) {
            continue;
        }
        Term<T> t;
        t.block = static_cast<int>(b);
        const int n = sizes[b];
        if (static_cast<int>(per_block[b].size()) > n) {
            t.dense = true;
            t.full = Mat<T>::Zero(n, n);
            for (const auto &e : per_block[b]) {
                t.full(e.row, e.col) += T(e.value);
                if (e.row != e.col) {
                    t.full(e.col, e.row) += T(e.value);
                }
            }
        } else {
            for (const auto &e : per_block[b]) {
                t.rows.push_back(e.row);
                t.cols.push_back(e.col);
                t.values.push_back(T(e.value));
            }
        }
        out.push_back(std::move(t));
    }
    return out;
}

// tr(A M) for the symmetric A of `t` and arbitrary M.
template <typename T>
T inner(const Term<T> &t, const Mat<T> &m) {
    if (t.dense) {
        return t.full.cwiseProduct(m).sum();
    }
    T s = 0;
    for (size_t q = 0; q < t.values.size(); q++) {
        int r = t.rows[q], c = t.cols[q];
        s += r == c ? t.values[q] * m(r, r) : t.values[q] * (m(r, c) + m(c, r));
    }
    return s;
}

template <typename T>
void add_scaled(const Operator<T> &op, T scale, Blocks<T> &out) {
    for (const auto &t : op) {
        auto &m = out[t.block];
        if (t.dense) {
            m += scale * t.full;
            continue;
        }
        for (size_t q = 0; q < t.values.size(); q++) {
            int r = t.rows[q], c = t.cols[q];
            m(r, c) += scale * t.values[q];
            if (r != c) {
                m(c, r) += scale * t.values[q];
            }
        }
    }
}

// X A W for one block term.
template <typename T>
Mat<T> sandwich(const Term<T> &t, const Mat<T> &x, const Mat<T> &w) {
    if (t.dense) {
        return x * t.full * w;
    }
    Mat<T> out = Mat<T>::Zero(x.rows(), w.cols());
    for (size_t q = 0; q < t.values.size(); q++) {
        int r = t.rows[q], c = t.cols[q];
        out.noalias() += t.values[q] * x.col(r) * w.row(c);
        if (r != c) {
            out.noalias() += t.values[q] * x.col(c) * w.row(r);
        }
    }
    return out;
}

template <typename T>
T frobenius(const Blocks<T> &bs) {
    T s = 0;
    for (const auto &b : bs) {
        s += b.squaredNorm();
    }
    return std::sqrt(s);
}

template <typename T>
T dot(const Blocks<T> &a, const Blocks<T> &b) {
    T s = 0;
    for (size_t k = 0; k < a.size(); k++) {
        s += a[k].cwiseProduct(b[k]).sum();
    }
    return s;
}

template <typename T>
Mat<T> symmetrized(const Mat<T> &m) {
    return T(0.5) * (m + m.transpose());
}

// Largest alpha with x + alpha * dx still positive semi-definite (infinity if
// any alpha works). Empty when x itself is not positive definite.
template <typename T>
std::optional<T> max_step(const Blocks<T> &x, const Blocks<T> &dx) {
    T alpha = std::numeric_limits<T>::infinity();
    for (size_t k = 0; k < x.size(); k++) {
        if (x[k].rows() == 1) {
            if (dx[k](0, 0) < 0) {
                alpha = std::min(alpha, -x[k](0, 0) / dx[k](0, 0));
            }
            continue;
        }
        Eigen::LLT<Mat<T>> llt(x[k]);
        if (llt.info() != Eigen::Success) {
            return std::nullopt;
        }
        Mat<T> l_inv_dx = llt.matrixL().solve(dx[k]);
        Mat<T> s = llt.matrixL().solve(l_inv_dx.transpose());
        T lo = Eigen::SelfAdjointEigenSolver<Mat<T>>(symmetrized<T>(s), Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
        if (lo < 0) {
            alpha = std::min(alpha, T(-1) / lo);
        }
    }
    return alpha;
}

template <typename T>
class Solver {
   public:
    Solver(const Problem &p, const Options &o) : opts_(o), sizes_(p.block_sizes) {
        if (sizes_.empty()) {
            throw std::invalid_argument("sdp problem has no blocks");
        }
        for (int n : sizes_) {
            if (n < 1) {
                throw std::invalid_argument("sdp block sizes must be positive");
            }
            total_dim_ += n;
        }
        k_ = static_cast<int>(p.constraints.size());
        b_ = Vec<T>(k_);
        ops_.resize(k_);
        for (int i = 0; i < k_; i++) {
            ops_[i] = group_by_block<T>(p.constraints[i].entries, sizes_);
            b_[i] = T(p.constraints[i].rhs);
        }
        c_ = zeros();
        add_scaled<T>(group_by_block<T>(p.objective, sizes_), T(1), c_);

        by_block_.resize(sizes_.size());
        for (int i = 0; i < k_; i++) {
            for (size_t t = 0; t < ops_[i].size(); t++) {
                by_block_[ops_[i][t].block].push_back({i, static_cast<int>(t)});
            }
        }
    }

    Result run();

   private:
    struct Ref {
        int op;
        int term;
    };

    Blocks<T> zeros() const {
        Blocks<T> out;
        for (int n : sizes_) {
            out.push_back(Mat<T>::Zero(n, n));
        }
        return out;
    }

    Vec<T> apply_all(const Blocks<T> &x) const {
        Vec<T> out(k_);
        for (int i = 0; i < k_; i++) {
            T s = 0;
            for (const auto &t : ops_[i]) {
                s += inner(t, x[t.block]);
            }
            out[i] = s;
        }
        return out;
    }

    Blocks<T> adjoint(const Vec<T> &y) const {
        Blocks<T> out = zeros();
        for (int i = 0; i < k_; i++) {
            if (y[i] != 0) {
                add_scaled(ops_[i], y[i], out);
            }
        }
        return out;
    }

    // M_ij = tr(A_i X A_j W), symmetric for the HKM direction.
    Mat<T> schur(const Blocks<T> &x, const Blocks<T> &w) const {
        Mat<T> m = Mat<T>::Zero(k_, k_);
        for (int i = 0; i < k_; i++) {
            for (const auto &ti : ops_[i]) {
                Mat<T> t = sandwich(ti, x[ti.block], w[ti.block]);
                for (const auto &ref : by_block_[ti.block]) {
                    if (ref.op >= i) {
                        m(i, ref.op) += inner(ops_[ref.op][ref.term], t);
                    }
                }
            }
        }
        return m.template selfadjointView<Eigen::Upper>();
    }

    Options opts_;
    std::vector<int> sizes_;
    int total_dim_ = 0;
    int k_ = 0;
    std::vector<Operator<T>> ops_;
    std::vector<std::vector<Ref>> by_block_;
    Vec<T> b_;
    Blocks<T> c_;
};

template <typename T>
Result Solver<T>::run() {
    Result res;
    Blocks<T> x = zeros();
    Blocks<T> z = zeros();
    for (size_t k = 0; k < sizes_.size(); k++) {
        x[k].setIdentity();
        z[k].setIdentity();
    }
    Vec<T> y = Vec<T>::Zero(k_);
    const T b_norm = b_.norm();
    const T c_norm = frobenius(c_);

    auto finish = [&](Status s, int it) {
        res.status = s;
        for (size_t k = 0; k < sizes_.size(); k++) {
            res.x.push_back(x[k].template cast<double>());
            res.z.push_back(z[k].template cast<double>());
        }
        res.y = y.template cast<double>();
        res.iterations = it;
        return res;
    };

    for (int it = 0; it <= opts_.max_iterations; it++) {
        const Vec<T> rp = b_ - apply_all(x);
        const Blocks<T> at_y = adjoint(y);
        Blocks<T> rd = zeros();
        for (size_t k = 0; k < sizes_.size(); k++) {
            rd[k] = c_[k] - z[k] - at_y[k];
        }
        const T pobj = dot(c_, x);
        const T dobj = b_.dot(y);
        res.primal_objective = static_cast<double>(pobj);
        res.dual_objective = static_cast<double>(dobj);
        res.relative_gap = static_cast<double>(std::abs(pobj - dobj) / (1 + std::abs(pobj) + std::abs(dobj)));
        res.primal_infeasibility = static_cast<double>(rp.norm() / (1 + b_norm));
        res.dual_infeasibility = static_cast<double>(frobenius(rd) / (1 + c_norm));
        const T mu = dot(x, z) / total_dim_;

        if (res.relative_gap <= opts_.gap_tolerance && res.primal_infeasibility <= opts_.feasibility_tolerance &&
            res.dual_infeasibility <= opts_.feasibility_tolerance) {
            return finish(Status::kOptimal, it);
        }
        // A dual ray with unbounded objective certifies primal infeasibility.
        if (dobj > T(1e10) * (1 + std::abs(pobj)) && frobenius(rd) < T(1e-8) * std::max(T(1), y.norm())) {
            return finish(Status::kPrimalInfeasible, it);
        }
        if (it == opts_.max_iterations) {
            break;
        }

        Blocks<T> w = zeros();
        for (size_t k = 0; k < sizes_.size(); k++) {
            Eigen::LLT<Mat<T>> llt(z[k]);
            if (llt.info() != Eigen::Success) {
                return finish(Status::kNumericalFailure, it);
            }
            w[k] = llt.solve(Mat<T>::Identity(sizes_[k], sizes_[k]));
        }
        Mat<T> m = schur(x, w);
        Eigen::LLT<Mat<T>> m_llt(m);
        if (m_llt.info() != Eigen::Success) {
            m.diagonal().array() += std::numeric_limits<T>::epsilon() * m.diagonal().cwiseAbs().maxCoeff();
            m_llt.compute(m);
            if (m_llt.info() != Eigen::Success) {
                return finish(Status::kNumericalFailure, it);
            }
        }

        // Newton direction toward X Z = target I, with the optional
        // second-order correction of Mehrotra's corrector.
        auto direction = [&](T target, const Blocks<T> *corr_dx, const Blocks<T> *corr_dz, Blocks<T> &dx,
                             Vec<T> &dy, Blocks<T> &dz) {
            Blocks<T> h = zeros();
            for (size_t k = 0; k < sizes_.size(); k++) {
                Mat<T> hk = target * w[k] - x[k] - x[k] * rd[k] * w[k];
                if (corr_dx != nullptr) {
                    hk -= (*corr_dx)[k] * (*corr_dz)[k] * w[k];
                }
                h[k] = symmetrized<T>(hk);
            }
            const Vec<T> rhs = rp - apply_all(h);
            dy = m_llt.solve(rhs);
            // The Schur matrix is badly conditioned near the boundary; a few
            // refinement sweeps against the exact operator keep the step
            // primal feasible.
            Blocks<T> at_dy;
            dx = zeros();
            for (int sweep = 0;; sweep++) {
                at_dy = adjoint(dy);
                for (size_t k = 0; k < sizes_.size(); k++) {
                    dx[k] = symmetrized<T>(x[k] * at_dy[k] * w[k]);
                }
                Vec<T> resid = rhs - apply_all(dx);
                if (sweep == 3 || resid.norm() <= std::numeric_limits<T>::epsilon() * (1 + rhs.norm())) {
                    break;
                }
                dy += m_llt.solve(resid);
            }
            dz = zeros();
            for (size_t k = 0; k < sizes_.size(); k++) {
                dz[k] = rd[k] - at_dy[k];
                dx[k] = symmetrized<T>(h[k] + x[k] * at_dy[k] * w[k]);
            }
        };

        Blocks<T> dx, dz;
        Vec<T> dy;
        direction(T(0), nullptr, nullptr, dx, dy, dz);
        auto ap = max_step(x, dx);
        auto ad = max_step(z, dz);
        if (!ap || !ad) {
            return finish(Status::kNumericalFailure, it);
        }
        T alpha_p = std::min(T(1), *ap);
        T alpha_d = std::min(T(1), *ad);
        T mu_aff = 0;
        for (size_t k = 0; k < sizes_.size(); k++) {
            mu_aff += (x[k] + alpha_p * dx[k]).cwiseProduct(z[k] + alpha_d * dz[k]).sum();
        }
        mu_aff /= total_dim_;
        const T expon = std::max(T(1), 3 * std::pow(std::min(alpha_p, alpha_d), 2));
        const T sigma = std::clamp(std::pow(std::max(mu_aff, T(0)) / mu, expon), T(0), T(1));

        Blocks<T> cdx, cdz;
        Vec<T> cdy;
        direction(sigma * mu, &dx, &dz, cdx, cdy, cdz);
        ap = max_step(x, cdx);
        ad = max_step(z, cdz);
        if (!ap || !ad) {
            return finish(Status::kNumericalFailure, it);
        }
        const T tau = 0.98;
        alpha_p = std::min(T(1), tau * *ap);
        alpha_d = std::min(T(1), tau * *ad);
        for (size_t k = 0; k < sizes_.size(); k++) {
            x[k] += alpha_p * cdx[k];
            z[k] += alpha_d * cdz[k];
        }
        y += alpha_d * cdy;
    }
    return finish(Status::kMaxIterations, opts_.max_iterations);
}

}  // namespace

Result solve(const Problem &problem, const Options &options) {
    Result res = Solver<double>(problem, options).run();
    if (res.status == Status::kOptimal || res.status == Status::kPrimalInfeasible || !options.extended_fallback) {
        return res;
    }
    // Nearly degenerate problems run out of double precision before the
    // duality gap closes; the same iteration in long double usually finishes.
    Result wide = Solver<long double>(problem, options).run();
    if (wide.status == Status::kOptimal || wide.relative_gap < res.relative_gap) {
        return wide;
    }
    return res;
}

const char *status_name(Status status) {
    switch (status) {
        case Status::kOptimal:
            return "optimal";
        case Status::kMaxIterations:
            return "max-iterations";
        case Status::kPrimalInfeasible:
            return "infeasible-certified";
        case Status::kNumericalFailure:
            return "numerical-failure";
    }
    return "unknown";
}

}  // namespace aud::sdp_core
