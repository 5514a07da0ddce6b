#pragma once

// Brute-force reference evaluator. Shares no code with the library's
// transform/bin/probability paths: windows, operator values, quantile cuts
// and frequencies are recomputed from their definitions with plain loops.
// Only the operator list and the raw general sequence are taken as inputs.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using C = std::complex<double>;

struct Op {
    int conv_len;
    int chain;  // 0 none, 1 D, 2 DD, 3 QD, 4 DQD, 5 QQD
    int proj;   // 0 re, 1 im, 2 mod, 3 arg
};

inline int steps(int chain) {
    static const int n[] = {0, 1, 2, 2, 3, 3};
    return n[chain];
}

inline int window(const Op& op) { return op.conv_len + steps(op.chain); }

inline std::vector<C> diff(const std::vector<C>& v) {
    std::vector<C> out;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) out.push_back(v[i + 1] - v[i]);
    return out;
}

inline std::vector<C> quot(const std::vector<C>& v) {
    std::vector<C> out;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const C a = v[i + 1], b = v[i];
        const double n = std::norm(b);
        if (n == 0.0) {
            out.push_back(0.0);
        } else {
            out.push_back(C((a.real() * b.real() + a.imag() * b.imag()) / n,
                            (a.imag() * b.real() - a.real() * b.imag()) / n));
        }
    }
    return out;
}

/// Operator value of a window of exactly window(op) points.
inline double value(const Op& op, const std::vector<C>& w) {
    std::vector<C> v;
    for (std::size_t t = 0; t + op.conv_len <= w.size(); ++t) {
        C s = 0.0;
        for (int j = 0; j < op.conv_len; ++j) s += w[t + j];
        v.push_back(s);
    }
    switch (op.chain) {
        case 1: v = diff(v); break;
        case 2: v = diff(diff(v)); break;
        case 3: v = quot(diff(v)); break;
        case 4: v = diff(quot(diff(v))); break;
        case 5: v = quot(quot(diff(v))); break;
        default: break;
    }
    const C z = v.at(0);
    switch (op.proj) {
        case 0: return z.real();
        case 1: return z.imag();
        case 2: return std::hypot(z.real(), z.imag());
        default: {
            if (z == C(0.0)) return 0.0;
            if (z.real() < 0 && std::fabs(z.imag()) <= 1e-12 * -z.real()) return M_PI;
            return std::atan2(z.imag(), z.real());
        }
    }
}

inline std::vector<double> all_values(const Op& op, const std::vector<C>& seq) {
    std::vector<double> out;
    const int m = window(op);
    for (int start = 0; start + m <= static_cast<int>(seq.size()); ++start) {
        out.push_back(value(op, std::vector<C>(seq.begin() + start, seq.begin() + start + m)));
    }
    return out;
}

/// Cut points: sorted value at ceil(j N / k), dropping any cut that does not
/// exceed the minimum or the previous cut.
inline std::vector<double> cuts(std::vector<double> g, int k) {
    std::sort(g.begin(), g.end());
    std::vector<double> out;
    const double n = static_cast<double>(g.size());
    for (int j = 1; j < k; ++j) {
        const auto idx = static_cast<std::size_t>(std::ceil(j * n / k - 1e-9));
        const double c = g[idx];
        if (c > g.front() && (out.empty() || c > out.back())) out.push_back(c);
    }
    return out;
}

inline int bin_of(const std::vector<double>& cuts, double x) {
    int b = 0;
    for (double c : cuts) {
        if (x >= c) ++b;
    }
    return b;
}

inline double freq(const std::vector<double>& values, const std::vector<double>& cuts, int bin) {
    if (values.empty()) return 0.0;
    int hit = 0;
    for (double v : values) hit += bin_of(cuts, v) == bin ? 1 : 0;
    return static_cast<double>(hit) / static_cast<double>(values.size());
}

/// Mean score of the newest point of @p prolonged.
inline double prolongation(const std::vector<Op>& ops, const std::vector<C>& general, const std::vector<C>& special,
                           const std::vector<C>& prolonged, int k, double eps, bool indicator) {
    double sum = 0.0;
    int used = 0;
    for (const auto& op : ops) {
        const int m = window(op);
        if (m > static_cast<int>(special.size()) || m > static_cast<int>(prolonged.size())) continue;
        const auto g = all_values(op, general);
        const auto c = cuts(g, k);
        const double x = value(op, std::vector<C>(prolonged.end() - m, prolonged.end()));
        const int b = bin_of(c, x);
        const double ps = freq(all_values(op, special), c, b);
        const double pg = freq(g, c, b);
        sum += indicator ? (ps > 0 ? 1.0 : 0.0) : std::log(std::max(ps, eps)) - std::log(std::max(pg, eps));
        ++used;
    }
    return used ? sum / used : std::nan("");
}

}  // namespace oracle
