// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <vector>

#include "nfsec/channel.hpp"
#include "nfsec/rates.hpp"
#include "nfsec/types.hpp"

namespace nfsec {

enum class StreamType { Common, Private };

/// Concave quadratic minorizer of one legitimate rate log2(1 + gamma):
///
///   f(P) = sum_i p_i^H X p_i + 2 Re(y p_s) + z,   X = -weight * h h^H,
///
/// where the sum runs over every stream in the received power T of that
/// rate, s is the desired stream, and y = (conj(u) / (v ln 2)) h^H. Built from
/// the MMSE receiver u and error v at the expansion point, so f is tight there.
struct LegitTerm {
    cvec h;
    cplx u{0.0, 0.0};
    double v = 1.0;
    double weight = 0.0; // |u|^2 / (v ln 2) >= 0
    double z = 0.0;
    double noise = 0.0;
    int desired = 0;        // column index of the desired stream
    int first_interferer = 0; // streams first_interferer..K enter T

    /// Column vector a with a^H = y, so that 2 Re(y p) = 2 Re(a^H p).
    cvec linear() const { return (u / (v * kLn2)) * h; }
    cmat x_matrix() const { return -weight * h * h.adjoint(); }
    double eval(const cmat& precoder) const;
};

struct LegitSurrogate {
    cmat expansion;
    std::vector<LegitTerm> common; // f_{k,c}
    std::vector<LegitTerm> priv;   // f_{k,p}

    const LegitTerm& term(int k, StreamType type) const {
        return type == StreamType::Common ? common.at(static_cast<std::size_t>(k))
                                          : priv.at(static_cast<std::size_t>(k));
    }
    double eval(int k, StreamType type, const cmat& precoder) const {
        return term(k, type).eval(precoder);
    }
};

LegitSurrogate build_legit_surrogate(const cmat& expansion, const ChannelSet& channels,
                                     const Noise& noise);

/// Scale s such that |g^H (s g)|^2 equals the eavesdropper noise power.
double eaves_noise_scale(const ChannelSet& channels, double noise_eve);

/// T_0 (index 0) replaces the common column by s g; T_k (index k) replaces
/// private column k.
std::vector<cmat> build_t_matrices(const cmat& precoder, const ChannelSet& channels,
                                   double noise_eve);

/// Quadratic-transform auxiliaries for -R_{e,c} (common) and -R_{e,k}.
struct EavesAux {
    double noise_scale = 0.0;
    cvec common;             // x_{e,c}, length K+1
    std::vector<cvec> priv;  // x_{e,k}, length K+1 each
    double T_ec = 0.0;       // eavesdropper total power at the build point
};

EavesAux optimal_eaves_aux(const cmat& precoder, const ChannelSet& channels, double noise_eve);

/// Index of the column replaced by the noise column: 0 for the common
/// stream, k+1 for private stream k.
inline int replaced_column(StreamType type, int k) { return type == StreamType::Common ? 0 : k + 1; }

/// 2 Re(x^H T^H g) - ||x||^2 T_{e,c}(P), with T rebuilt from `precoder`.
double eaves_argument(const cvec& x, int replaced, const cmat& precoder,
                      const ChannelSet& channels, double noise_eve);

struct SurrogateDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// log2 of eaves_argument. Throws SurrogateDomainError on a non-positive
/// argument.
double eval_eaves_surrogate(const cvec& x, int replaced, const cmat& precoder,
                            const ChannelSet& channels, double noise_eve);

} // namespace nfsec
