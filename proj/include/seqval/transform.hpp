#pragma once

/**
 * @file transform.hpp
 * @brief Real-valued operators on complex position sequences.
 *
 * An operator is a composition  projection o chain o convolution:
 *
 *   convolution  (C c)_t = c_t + c_{t-1} + ... + c_{t-l+1}
 *   difference   (D c)_t = c_t - c_{t-1}
 *   quotient     (Q c)_t = c_t / c_{t-1}     (0 when c_{t-1} = 0)
 *   projection   real part, imaginary part, modulus or angle
 *
 * D removes translations; Q after D removes rotations and scalings as well,
 * so every chain containing a Q is invariant under z -> a z + b, a != 0.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <compare>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace seqval {

using cplx = std::complex<double>;

enum class Step { Diff, Quot };

/// Chains are named outermost-first, the way they compose: QD = Q o D
/// (difference applied first). `None` exists only for convolution-only
/// ablation pools.
enum class TransformChain { None, D, DD, QD, DQD, QQD };

enum class Projection { RealPart, ImagPart, Modulus, Angle };

inline constexpr std::array<TransformChain, 5> kStandardChains = {
    TransformChain::D, TransformChain::DD, TransformChain::QD, TransformChain::DQD, TransformChain::QQD};

inline constexpr std::array<Projection, 4> kProjections = {Projection::RealPart, Projection::ImagPart,
                                                           Projection::Modulus, Projection::Angle};

/// Steps in application order.
inline std::vector<Step> chain_steps(TransformChain chain) {
    switch (chain) {
        case TransformChain::None: return {};
        case TransformChain::D: return {Step::Diff};
        case TransformChain::DD: return {Step::Diff, Step::Diff};
        case TransformChain::QD: return {Step::Diff, Step::Quot};
        case TransformChain::DQD: return {Step::Diff, Step::Quot, Step::Diff};
        case TransformChain::QQD: return {Step::Diff, Step::Quot, Step::Quot};
    }
    return {};
}

inline bool chain_has_quotient(TransformChain chain) {
    return chain == TransformChain::QD || chain == TransformChain::DQD || chain == TransformChain::QQD;
}

inline std::string_view to_string(TransformChain chain) {
    switch (chain) {
        case TransformChain::None: return "none";
        case TransformChain::D: return "D";
        case TransformChain::DD: return "DD";
        case TransformChain::QD: return "QD";
        case TransformChain::DQD: return "DQD";
        case TransformChain::QQD: return "QQD";
    }
    return "?";
}

inline std::string_view to_string(Projection p) {
    switch (p) {
        case Projection::RealPart: return "re";
        case Projection::ImagPart: return "im";
        case Projection::Modulus: return "mod";
        case Projection::Angle: return "arg";
    }
    return "?";
}

inline TransformChain parse_chain(std::string_view s) {
    for (auto c : {TransformChain::None, TransformChain::D, TransformChain::DD, TransformChain::QD,
                   TransformChain::DQD, TransformChain::QQD}) {
        if (to_string(c) == s) return c;
    }
    throw std::invalid_argument("unknown transform chain '" + std::string(s) + "'");
}

inline Projection parse_projection(std::string_view s) {
    for (auto p : kProjections) {
        if (to_string(p) == s) return p;
    }
    throw std::invalid_argument("unknown projection '" + std::string(s) + "'");
}

struct OperatorSpec {
    int conv_len = 1;
    TransformChain chain = TransformChain::D;
    Projection proj = Projection::RealPart;

    friend auto operator<=>(const OperatorSpec&, const OperatorSpec&) = default;
};

/// Shortest input for which the operator yields exactly one value.
inline std::size_t min_length(const OperatorSpec& op) {
    return static_cast<std::size_t>(op.conv_len) + chain_steps(op.chain).size();
}

/// Compact text form "C<l>|<chain>|<proj>", e.g. "C2|QD|mod".
inline std::string to_string(const OperatorSpec& op) {
    return "C" + std::to_string(op.conv_len) + "|" + std::string(to_string(op.chain)) + "|" +
           std::string(to_string(op.proj));
}

inline OperatorSpec parse_operator(std::string_view s) {
    const auto bar1 = s.find('|');
    const auto bar2 = bar1 == std::string_view::npos ? bar1 : s.find('|', bar1 + 1);
    if (s.empty() || s[0] != 'C' || bar2 == std::string_view::npos) {
        throw std::invalid_argument("malformed operator spec '" + std::string(s) + "'");
    }
    OperatorSpec op;
    try {
        std::size_t used = 0;
        const std::string len(s.substr(1, bar1 - 1));
        op.conv_len = std::stoi(len, &used);
        if (used != len.size() || op.conv_len < 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("bad convolution length in '" + std::string(s) + "'");
    }
    op.chain = parse_chain(s.substr(bar1 + 1, bar2 - bar1 - 1));
    op.proj = parse_projection(s.substr(bar2 + 1));
    return op;
}

inline std::vector<cplx> convolve(std::span<const cplx> c, int l) {
    if (l < 1) throw std::invalid_argument("convolution length must be >= 1");
    const auto len = static_cast<std::size_t>(l);
    if (c.size() < len) return {};
    std::vector<cplx> out;
    out.reserve(c.size() - len + 1);
    for (std::size_t t = len - 1; t < c.size(); ++t) {
        cplx sum = c[t - len + 1];
        for (std::size_t j = t - len + 2; j <= t; ++j) sum += c[j];
        out.push_back(sum);
    }
    return out;
}

/// A difference smaller than 1e-12 times its operands (max norm) is
/// cancellation noise and comes out as exactly 0.
inline std::vector<cplx> difference(std::span<const cplx> c) {
    if (c.size() < 2) return {};
    auto norm_inf = [](cplx z) { return std::max(std::abs(z.real()), std::abs(z.imag())); };
    std::vector<cplx> out;
    out.reserve(c.size() - 1);
    for (std::size_t t = 1; t < c.size(); ++t) {
        const cplx d = c[t] - c[t - 1];
        const bool cancelled = norm_inf(d) <= 1e-12 * std::max(norm_inf(c[t]), norm_inf(c[t - 1]));
        out.push_back(cancelled ? cplx(0.0, 0.0) : d);
    }
    return out;
}

/// Textbook complex division. For Gaussian-integer inputs both components
/// are a single correctly rounded division of exact integers.
inline cplx divide(cplx num, cplx den) {
    const double d = den.real() * den.real() + den.imag() * den.imag();
    if (d == 0.0) return {0.0, 0.0};
    return {(num.real() * den.real() + num.imag() * den.imag()) / d,
            (num.imag() * den.real() - num.real() * den.imag()) / d};
}

inline std::vector<cplx> quotient(std::span<const cplx> c) {
    if (c.size() < 2) return {};
    std::vector<cplx> out;
    out.reserve(c.size() - 1);
    for (std::size_t t = 1; t < c.size(); ++t) out.push_back(divide(c[t], c[t - 1]));
    return out;
}

/// Principal angle in (-pi, pi]; angle(0) = 0. Points on the negative real
/// axis up to rounding map to +pi.
inline double angle(cplx z) {
    if (z.real() == 0.0 && z.imag() == 0.0) return 0.0;
    if (z.real() < 0.0 && std::abs(z.imag()) <= 1e-12 * -z.real()) return std::numbers::pi;
    return std::atan2(z.imag(), z.real());
}

inline double project(cplx z, Projection p) {
    switch (p) {
        case Projection::RealPart: return z.real();
        case Projection::ImagPart: return z.imag();
        case Projection::Modulus: return std::hypot(z.real(), z.imag());
        case Projection::Angle: return angle(z);
    }
    return 0.0;
}

inline std::vector<double> project(std::span<const cplx> c, Projection p) {
    std::vector<double> out;
    out.reserve(c.size());
    for (const auto& z : c) out.push_back(project(z, p));
    return out;
}

inline std::vector<cplx> apply_chain(std::vector<cplx> c, TransformChain chain) {
    for (Step s : chain_steps(chain)) c = s == Step::Diff ? difference(c) : quotient(c);
    return c;
}

/// All operator values of @p c, one per window of min_length(op) positions.
inline std::vector<double> apply_operator(const OperatorSpec& op, std::span<const cplx> c) {
    if (c.size() < min_length(op)) return {};
    return project(apply_chain(convolve(c, op.conv_len), op.chain), op.proj);
}

/// The single value of the operator on the window that ends at the last
/// element of @p c. Precondition: c.size() >= min_length(op).
inline double apply_to_tail(const OperatorSpec& op, std::span<const cplx> c) {
    const std::size_t m = min_length(op);
    if (c.size() < m) throw std::invalid_argument("sequence shorter than operator window " + to_string(op));
    return apply_operator(op, c.subspan(c.size() - m))[0];
}

}  // namespace seqval
