// Copyright 2026 xcorr contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xcorr/mps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "xcorr/error.hpp"

namespace xcorr {

namespace {

// Below this relative weight a projected branch is numerically empty and
// cannot be renormalised; its partner branch is relabelled instead.
constexpr double kEmptyBranch = 1e-200;

int bit_of(int outcome) {
    if (outcome != 1 && outcome != -1) {
        throw ConfigError("forced outcome must be +1 or -1");
    }
    return outcome == 1 ? 0 : 1;
}

Matrix gate_merged(const Matrix &theta, const Matrix &u, Eigen::Index dl, Eigen::Index dr) {
    Matrix out = Matrix::Zero(theta.rows(), theta.cols());
    for (int ti = 0; ti < 2; ++ti) {
        for (int tj = 0; tj < 2; ++tj) {
            for (int si = 0; si < 2; ++si) {
                for (int sj = 0; sj < 2; ++sj) {
                    const cplx c = u(ti + 2 * tj, si + 2 * sj);
                    if (c != cplx(0.0)) {
                        out.block(ti * dl, tj * dr, dl, dr) +=
                            c * theta.block(si * dl, sj * dr, dl, dr);
                    }
                }
            }
        }
    }
    return out;
}

// Forces bit `keep` of one leg of a merged tensor. `leg` 0 addresses the row
// (left site) index and 1 the column (right site) index.
ForcedBranch project_merged(Matrix &theta, int leg, int keep, Eigen::Index dl,
                            Eigen::Index dr, double floor) {
    auto block = [&](int bit) {
        return leg == 0 ? theta.block(bit * dl, 0, dl, theta.cols())
                        : theta.block(0, bit * dr, theta.rows(), dr);
    };
    const double total = theta.squaredNorm();
    const double kept = block(keep).squaredNorm();
    const double rel = total > 0.0 ? kept / total : 0.0;
    ForcedBranch out{rel, false};
    if (rel < floor) {
        out = {floor, true};
    }
    if (rel > kEmptyBranch) {
        block(keep) /= std::sqrt(kept);
    } else {
        const double other = block(1 - keep).squaredNorm();
        block(keep) = block(1 - keep) / std::sqrt(other);
    }
    block(1 - keep).setZero();
    return out;
}

} // namespace

MpsState::MpsState(int n_qubits, int max_bond) : max_bond_(max_bond) {
    if (n_qubits < 2) {
        throw ConfigError("MPS needs at least two sites");
    }
    if (max_bond < 1) {
        throw ConfigError("bond dimension cap must be >= 1");
    }
    tensors_.resize(static_cast<std::size_t>(n_qubits));
    for (auto &t : tensors_) {
        t[0] = Matrix::Ones(1, 1);
        t[1] = Matrix::Zero(1, 1);
    }
}

void MpsState::check_site(int site) const {
    if (site < 0 || site >= n_qubits()) {
        throw ConfigError("site " + std::to_string(site) + " outside chain of " +
                          std::to_string(n_qubits()));
    }
}

int MpsState::bond_dimension(int bond) const {
    if (bond < 0 || bond > n_qubits() - 2) {
        throw ConfigError("bond index out of range");
    }
    return static_cast<int>(tensors_[static_cast<std::size_t>(bond)][0].cols());
}

std::vector<int> MpsState::bond_dimensions() const {
    std::vector<int> dims;
    for (int b = 0; b + 1 < n_qubits(); ++b) {
        dims.push_back(bond_dimension(b));
    }
    return dims;
}

double MpsState::norm() const {
    const auto &c = tensors_[static_cast<std::size_t>(center_)];
    return std::sqrt(c[0].squaredNorm() + c[1].squaredNorm());
}

void MpsState::shift_right(int site) {
    auto &a = tensors_[static_cast<std::size_t>(site)];
    auto &b = tensors_[static_cast<std::size_t>(site + 1)];
    const Eigen::Index dl = a[0].rows();
    const Eigen::Index dr = a[0].cols();
    Matrix m(2 * dl, dr);
    m << a[0], a[1];
    Eigen::HouseholderQR<Matrix> qr(m);
    const Eigen::Index k = std::min(2 * dl, dr);
    const Matrix q = qr.householderQ() * Matrix::Identity(2 * dl, k);
    const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    a[0] = q.topRows(dl);
    a[1] = q.bottomRows(dl);
    b[0] = r * b[0];
    b[1] = r * b[1];
    center_ = site + 1;
}

void MpsState::shift_left(int site) {
    auto &a = tensors_[static_cast<std::size_t>(site)];
    auto &prev = tensors_[static_cast<std::size_t>(site - 1)];
    const Eigen::Index dl = a[0].rows();
    const Eigen::Index dr = a[0].cols();
    Matrix m(dl, 2 * dr);
    m << a[0], a[1];
    Eigen::HouseholderQR<Matrix> qr(m.adjoint());
    const Eigen::Index k = std::min(2 * dr, dl);
    const Matrix q = qr.householderQ() * Matrix::Identity(2 * dr, k);
    const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    const Matrix qd = q.adjoint();
    a[0] = qd.leftCols(dr);
    a[1] = qd.rightCols(dr);
    const Matrix rd = r.adjoint();
    prev[0] = prev[0] * rd;
    prev[1] = prev[1] * rd;
    center_ = site - 1;
}

void MpsState::move_center_to(int site) {
    check_site(site);
    while (center_ < site) {
        shift_right(center_);
    }
    while (center_ > site) {
        shift_left(center_);
    }
}

Matrix MpsState::merged(int site) const {
    const auto &a = tensors_[static_cast<std::size_t>(site)];
    const auto &b = tensors_[static_cast<std::size_t>(site + 1)];
    const Eigen::Index dl = a[0].rows();
    const Eigen::Index dr = b[0].cols();
    Matrix theta(2 * dl, 2 * dr);
    for (int si = 0; si < 2; ++si) {
        for (int sj = 0; sj < 2; ++sj) {
            theta.block(si * dl, sj * dr, dl, dr).noalias() = a[si] * b[sj];
        }
    }
    return theta;
}

double MpsState::split(int site, const Matrix &theta, int cap) {
    auto &a = tensors_[static_cast<std::size_t>(site)];
    auto &b = tensors_[static_cast<std::size_t>(site + 1)];
    const Eigen::Index dl = a[0].rows();
    const Eigen::Index dr = b[0].cols();
    const Eigen::Index m = 2 * dl;
    const Eigen::Index n = 2 * dr;
    const Eigen::Index full = std::min(m, n);
    const Eigen::Index k = std::min<Eigen::Index>(full, cap);
    const double total = theta.squaredNorm();

    const bool left_gram = m <= n;
    const Matrix gram = left_gram ? Matrix(theta * theta.adjoint())
                                  : Matrix(theta.adjoint() * theta);
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
    if (es.info() != Eigen::Success) {
        std::ostringstream os;
        os << "two-site decomposition failed at sites (" << site << ", " << site + 1 << ")";
        throw NumericalError(os.str());
    }
    // Eigenvalues ascend; the dominant k vectors are the trailing columns.
    const Matrix vecs = es.eigenvectors().rightCols(k).rowwise().reverse();

    Matrix left;
    Matrix right;
    if (left_gram) {
        left = vecs;
        right = vecs.adjoint() * theta;
    } else {
        left = theta * vecs;
        right = vecs.adjoint();
    }
    Matrix &weighted = left_gram ? right : left;

    double discarded = 0.0;
    if (k < full && total > 0.0) {
        // Summing the dropped eigenvalues keeps a rank-deficient truncation at
        // zero instead of the round-off of total - kept.
        const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
        discarded = std::min(1.0, ev.head(full - k).sum() / ev.sum());
        weighted /= weighted.norm();
    }

    a[0] = left.topRows(dl);
    a[1] = left.bottomRows(dl);
    b[0] = right.leftCols(dr);
    b[1] = right.rightCols(dr);
    center_ = left_gram ? site + 1 : site;
    return discarded;
}

void MpsState::apply_two_qubit_gate(int site, const Matrix &u) {
    if (site < 0 || site > n_qubits() - 2) {
        throw ConfigError("two-qubit gate site " + std::to_string(site) + " out of range");
    }
    if (u.rows() != 4 || u.cols() != 4) {
        throw ConfigError("two-qubit gate must be 4x4");
    }
    move_center_to(site);
    const Eigen::Index dl = tensors_[static_cast<std::size_t>(site)][0].rows();
    const Eigen::Index dr = tensors_[static_cast<std::size_t>(site + 1)][0].cols();
    const Matrix theta = gate_merged(merged(site), u, dl, dr);
    split(site, theta, std::numeric_limits<int>::max());
}

ForcedBranch MpsState::force_outcome(int site, int outcome, double floor) {
    const int keep = bit_of(outcome);
    move_center_to(site);
    auto &t = tensors_[static_cast<std::size_t>(site)];
    const Eigen::Index dl = t[0].rows();
    const Eigen::Index dr = t[0].cols();
    Matrix stacked(2 * dl, dr);
    stacked << t[0], t[1];
    const ForcedBranch out = project_merged(stacked, 0, keep, dl, dr, floor);
    t[0] = stacked.topRows(dl);
    t[1] = stacked.bottomRows(dl);
    degenerate_ += out.degenerate ? 1 : 0;
    return out;
}

double MpsState::truncate_bond(int bond) {
    if (bond_dimension(bond) <= max_bond_) {
        return 0.0;
    }
    move_center_to(bond);
    const double inc = split(bond, merged(bond), max_bond_);
    discarded_ += inc;
    return inc;
}

BrickResult MpsState::apply_brick(int site, const Matrix &u, std::array<int, 2> forced,
                                  double floor) {
    if (site < 0 || site > n_qubits() - 2) {
        throw ConfigError("two-qubit gate site " + std::to_string(site) + " out of range");
    }
    move_center_to(site);
    const Eigen::Index dl = tensors_[static_cast<std::size_t>(site)][0].rows();
    const Eigen::Index dr = tensors_[static_cast<std::size_t>(site + 1)][0].cols();
    Matrix theta = gate_merged(merged(site), u, dl, dr);

    BrickResult result;
    result.branches = {ForcedBranch{1.0, false}, ForcedBranch{1.0, false}};
    for (int leg = 0; leg < 2; ++leg) {
        if (forced[static_cast<std::size_t>(leg)] == 0) {
            continue;
        }
        const int keep = bit_of(forced[static_cast<std::size_t>(leg)]);
        const ForcedBranch fb = project_merged(theta, leg, keep, dl, dr, floor);
        degenerate_ += fb.degenerate ? 1 : 0;
        result.branches[static_cast<std::size_t>(leg)] = fb;
    }
    result.discarded = split(site, theta, max_bond_);
    discarded_ += result.discarded;
    return result;
}

DensityMatrix MpsState::boundary_density_matrix(std::span<const int> sites) const {
    const int last = n_qubits() - 1;
    const bool ok =
        (sites.size() == 1 && (sites[0] == 0 || sites[0] == last)) ||
        (sites.size() == 2 && ((sites[0] == 0 && sites[1] == last) ||
                               (sites[0] == last && sites[1] == 0)));
    if (!ok) {
        throw ConfigError("MPS reduced density matrices are limited to boundary sites");
    }

    // G[s][t] is the left environment with ket index s and bra index t on
    // site 0, transferred through the bulk with the physical index traced.
    std::array<std::array<Matrix, 2>, 2> env;
    const auto &first = tensors_.front();
    for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
            env[s][t] = first[s].transpose() * first[t].conjugate();
        }
    }
    for (int site = 1; site < last; ++site) {
        const auto &a = tensors_[static_cast<std::size_t>(site)];
        for (auto &row : env) {
            for (auto &g : row) {
                g = (a[0].transpose() * g * a[0].conjugate() +
                     a[1].transpose() * g * a[1].conjugate())
                        .eval();
            }
        }
    }
    const auto &end = tensors_.back();
    // rho4 index: s0 + 2 * s_last
    Matrix rho4(4, 4);
    for (int s0 = 0; s0 < 2; ++s0) {
        for (int t0 = 0; t0 < 2; ++t0) {
            for (int sl = 0; sl < 2; ++sl) {
                for (int tl = 0; tl < 2; ++tl) {
                    rho4(s0 + 2 * sl, t0 + 2 * tl) =
                        (end[sl].transpose() * env[s0][t0] * end[tl].conjugate())(0, 0);
                }
            }
        }
    }
    rho4 /= rho4.trace().real();
    rho4 = (0.5 * (rho4 + rho4.adjoint())).eval();

    Matrix out;
    if (sites.size() == 1) {
        out = partial_trace_to_site(rho4, sites[0] == 0 ? 0 : 1);
    } else if (sites[0] == 0) {
        out = rho4;
    } else {
        // Swap the two factors so the first listed site is least significant.
        Matrix swapped(4, 4);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const int si = ((i & 1) << 1) | (i >> 1);
                const int sj = ((j & 1) << 1) | (j >> 1);
                swapped(i, j) = rho4(si, sj);
            }
        }
        out = swapped;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(out);
    if (es.eigenvalues().minCoeff() < 0.0) {
        return DensityMatrix(out).clipped();
    }
    return DensityMatrix(std::move(out));
}

std::vector<double> MpsState::schmidt_values(int bond) {
    if (bond < 0 || bond > n_qubits() - 2) {
        throw ConfigError("bond index out of range");
    }
    move_center_to(bond);
    const auto &a = tensors_[static_cast<std::size_t>(bond)];
    Matrix m(2 * a[0].rows(), a[0].cols());
    m << a[0], a[1];
    Eigen::JacobiSVD<Matrix> svd(m);
    const Eigen::VectorXd sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

double MpsState::bond_entropy(int bond) {
    double s = 0.0;
    for (double v : schmidt_values(bond)) {
        const double p = v * v;
        if (p > 0.0) {
            s -= p * std::log(p);
        }
    }
    return s;
}

std::vector<cplx> MpsState::to_amplitudes() const {
    // rows: basis index of the sites contracted so far
    Matrix acc = Matrix::Ones(1, 1);
    for (std::size_t site = 0; site < tensors_.size(); ++site) {
        const auto &a = tensors_[site];
        Matrix next(acc.rows() * 2, a[0].cols());
        next.topRows(acc.rows()) = acc * a[0];
        next.bottomRows(acc.rows()) = acc * a[1];
        acc = std::move(next);
    }
    return {acc.data(), acc.data() + acc.size()};
}

cplx MpsState::overlap(const Statevector &other) const {
    if (other.n_qubits() != n_qubits()) {
        throw ConfigError("overlap requires equal chain lengths");
    }
    const auto mine = to_amplitudes();
    const auto theirs = other.amplitudes();
    cplx s = 0.0;
    for (std::size_t i = 0; i < mine.size(); ++i) {
        s += std::conj(mine[i]) * theirs[i];
    }
    return s;
}

} // namespace xcorr
