// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "nfsec/types.hpp"

namespace nfsec {

/// A concave function of a real variable vector z built from
///
///   constant + linear^T z + sum_j w_j ((a_j^T x_j - s_j)^2 + (b_j^T x_j - t_j)^2)
///            + norm_weight ||z[0:extent] - center||^2 + sum_l c_l log2(z_l)
///
/// with w_j <= 0, norm_weight <= 0 and c_l >= 0. Complex quantities enter
/// through a real lift where a complex block c of length d occupies
/// [Re c; Im c] starting at some offset; |d^H c|^2 then becomes the pair of
/// squared linear forms above.
class ConcaveFunction {
public:
    explicit ConcaveFunction(Eigen::Index size = 0) : linear_(rvec::Zero(size)) {}

    Eigen::Index size() const { return linear_.size(); }

    void add_constant(double c) { constant_ += c; }
    void add_linear(Eigen::Index index, double coef) { linear_[index] += coef; }
    /// scale * 2 Re(a^H c) for the complex block at offset.
    void add_real_inner(Eigen::Index offset, const cvec& a, double scale = 1.0);
    /// weight * |d^H c - shift|^2 for the complex block at offset (weight <= 0).
    void add_abs2(Eigen::Index offset, const cvec& d, double weight, cplx shift = {0.0, 0.0});
    /// weight * ||z[0:extent] - center||^2 (weight <= 0); an empty center is zero.
    /// Repeated calls must agree on extent and center.
    void add_norm(Eigen::Index extent, double weight, const rvec& center = rvec());
    /// coef * log2(z[index]) (coef >= 0).
    void add_log2(Eigen::Index index, double coef);

    double value(const rvec& z) const;
    bool in_domain(const rvec& z) const;
    rvec gradient(const rvec& z) const;
    void add_gradient(const rvec& z, double scale, rvec& grad) const;
    void add_hessian(const rvec& z, double scale, rmat& hess) const;

    double constant() const { return constant_; }
    const rvec& linear() const { return linear_; }

private:
    struct Square {
        Eigen::Index offset;
        rvec a;
        rvec b;
        double weight;
        double shift_re;
        double shift_im;
    };

    double constant_ = 0.0;
    rvec linear_;
    std::vector<Square> squares_;
    double norm_weight_ = 0.0;
    Eigen::Index norm_extent_ = 0;
    rvec norm_center_;
    std::vector<std::pair<Eigen::Index, double>> logs_;
};

} // namespace nfsec
