// SPDX-License-Identifier: Apache-2.0
#include "nfsec/concave_function.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace nfsec {

void ConcaveFunction::add_real_inner(Eigen::Index offset, const cvec& a, double scale) {
    const Eigen::Index d = a.size();
    linear_.segment(offset, d) += 2.0 * scale * a.real();
    linear_.segment(offset + d, d) += 2.0 * scale * a.imag();
}

void ConcaveFunction::add_abs2(Eigen::Index offset, const cvec& d, double weight, cplx shift) {
    if (weight > 0.0) throw std::invalid_argument("ConcaveFunction: positive square weight");
    if (weight == 0.0) return;
    if (d.size() == 0) {
        constant_ += weight * std::norm(shift);
        return;
    }
    const Eigen::Index n = d.size();
    Square sq{offset, rvec(2 * n), rvec(2 * n), weight, shift.real(), shift.imag()};
    sq.a << d.real(), d.imag();
    sq.b << -d.imag(), d.real();
    squares_.push_back(std::move(sq));
}

void ConcaveFunction::add_norm(Eigen::Index extent, double weight, const rvec& center) {
    if (weight > 0.0) throw std::invalid_argument("ConcaveFunction: positive norm weight");
    if (center.size() != 0 && center.size() != extent) {
        throw std::invalid_argument("ConcaveFunction: norm center length differs from extent");
    }
    const rvec c = center.size() == 0 ? rvec(rvec::Zero(extent)) : center;
    if (norm_weight_ != 0.0 && (extent != norm_extent_ || c != norm_center_)) {
        throw std::invalid_argument("ConcaveFunction: mismatched norm terms");
    }
    norm_weight_ += weight;
    norm_extent_ = extent;
    norm_center_ = c;
}

void ConcaveFunction::add_log2(Eigen::Index index, double coef) {
    if (coef < 0.0) throw std::invalid_argument("ConcaveFunction: negative log coefficient");
    logs_.emplace_back(index, coef);
}

namespace {

// Extended-precision dot product; constraint values near the boundary are
// differences of O(1) terms and set the accuracy floor of the barrier.
long double dot_ext(const rvec& a, const Eigen::Ref<const rvec>& x) {
    long double s = 0.0L;
    for (Eigen::Index i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * x[i];
    return s;
}

} // namespace

double ConcaveFunction::value(const rvec& z) const {
    long double v = static_cast<long double>(constant_) + dot_ext(linear_, z);
    for (const auto& sq : squares_) {
        const auto x = z.segment(sq.offset, sq.a.size());
        const long double p = dot_ext(sq.a, x) - sq.shift_re;
        const long double q = dot_ext(sq.b, x) - sq.shift_im;
        v += sq.weight * (p * p + q * q);
    }
    if (norm_extent_ > 0) {
        long double acc = 0.0L;
        for (Eigen::Index i = 0; i < norm_extent_; ++i) {
            const long double d = static_cast<long double>(z[i]) - norm_center_[i];
            acc += d * d;
        }
        v += norm_weight_ * acc;
    }
    for (const auto& [idx, coef] : logs_) v += coef * std::log2(static_cast<long double>(z[idx]));
    return static_cast<double>(v);
}

bool ConcaveFunction::in_domain(const rvec& z) const {
    for (const auto& [idx, coef] : logs_) {
        if (!(z[idx] > 0.0)) return false;
    }
    return true;
}

rvec ConcaveFunction::gradient(const rvec& z) const {
    rvec g = rvec::Zero(z.size());
    add_gradient(z, 1.0, g);
    return g;
}

void ConcaveFunction::add_gradient(const rvec& z, double scale, rvec& grad) const {
    grad += scale * linear_;
    for (const auto& sq : squares_) {
        const Eigen::Index len = sq.a.size();
        const auto x = z.segment(sq.offset, len);
        const double c = 2.0 * scale * sq.weight;
        grad.segment(sq.offset, len) +=
            c * ((sq.a.dot(x) - sq.shift_re) * sq.a + (sq.b.dot(x) - sq.shift_im) * sq.b);
    }
    if (norm_extent_ > 0) {
        grad.head(norm_extent_) += 2.0 * scale * norm_weight_ * (z.head(norm_extent_) - norm_center_);
    }
    for (const auto& [idx, coef] : logs_) grad[idx] += scale * coef / (z[idx] * kLn2);
}

void ConcaveFunction::add_hessian(const rvec& z, double scale, rmat& hess) const {
    for (const auto& sq : squares_) {
        const Eigen::Index len = sq.a.size();
        const double c = 2.0 * scale * sq.weight;
        auto block = hess.block(sq.offset, sq.offset, len, len);
        block.noalias() += c * sq.a * sq.a.transpose();
        block.noalias() += c * sq.b * sq.b.transpose();
    }
    if (norm_extent_ > 0) {
        hess.diagonal().head(norm_extent_).array() += 2.0 * scale * norm_weight_;
    }
    for (const auto& [idx, coef] : logs_) {
        hess(idx, idx) -= scale * coef / (z[idx] * z[idx] * kLn2);
    }
}

} // namespace nfsec
