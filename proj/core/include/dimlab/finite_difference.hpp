/**
 * @file finite_difference.hpp
 * @brief Central-difference jets in real coordinates, with one Richardson level.
 *
 * Complex coordinates are split as x = (Re w₁, Im w₁, Re w₂, ...). Wirtinger
 * derivatives are assembled from the real gradient and Hessian:
 *
 *   ∂_a f     = (f_{x_a} − i f_{y_a}) / 2
 *   ∂_a ∂̄_b f = ¼ [f_{x_a x_b} + f_{y_a y_b} + i (f_{x_a y_b} − f_{y_a x_b})]
 *   ∂_a ∂_b f = ¼ [f_{x_a x_b} − f_{y_a y_b} − i (f_{x_a y_b} + f_{y_a x_b})]
 *
 * These hold for complex- and matrix-valued f as well.
 */

#pragma once

#include <functional>
#include <type_traits>
#include <vector>

#include "dimlab/types.hpp"

namespace dimlab {

template <class T>
struct RealJet {
    T value;
    std::vector<T> grad;               // ∂f/∂x_i
    std::vector<std::vector<T>> hess;  // ∂²f/∂x_i∂x_j (symmetric)
};

namespace detail {

template <class T>
using WirtingerType = std::conditional_t<std::is_same_v<T, double>, cplx, T>;

template <class T>
RealJet<T> fd_jet_once(const std::function<T(const RVec&)>& f, const RVec& x, const RVec& steps,
                       const T& f0) {
    const auto n = static_cast<std::size_t>(x.size());
    const T zero = f0 * 0.0;
    RealJet<T> jet{f0, std::vector<T>(n, zero), std::vector<std::vector<T>>(n, std::vector<T>(n, zero))};
    std::vector<T> fp(n, f0);
    std::vector<T> fm(n, f0);
    for (std::size_t i = 0; i < n; ++i) {
        RVec xp = x;
        RVec xm = x;
        const double h = steps(static_cast<Eigen::Index>(i));
        xp(static_cast<Eigen::Index>(i)) += h;
        xm(static_cast<Eigen::Index>(i)) -= h;
        fp[i] = f(xp);
        fm[i] = f(xm);
        jet.grad[i] = (fp[i] - fm[i]) * (0.5 / h);
        jet.hess[i][i] = (fp[i] - f0 * 2.0 + fm[i]) * (1.0 / (h * h));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            const double hi = steps(ii);
            const double hj = steps(jj);
            RVec x1 = x;
            x1(ii) += hi;
            x1(jj) += hj;
            RVec x2 = x;
            x2(ii) += hi;
            x2(jj) -= hj;
            RVec x3 = x;
            x3(ii) -= hi;
            x3(jj) += hj;
            RVec x4 = x;
            x4(ii) -= hi;
            x4(jj) -= hj;
            const T v = (f(x1) - f(x2) - f(x3) + f(x4)) * (1.0 / (4.0 * hi * hj));
            jet.hess[i][j] = v;
            jet.hess[j][i] = v;
        }
    }
    return jet;
}

}  // namespace detail

/**
 * Value, gradient and Hessian of f at x by central differences.
 *
 * With `richardson`, the jet is evaluated at steps h and h/2 and combined as
 * (4·D(h/2) − D(h))/3, cancelling the O(h²) term.
 */
template <class T>
RealJet<T> fd_jet(const std::function<T(const RVec&)>& f, const RVec& x, const RVec& steps,
                  bool richardson = true) {
    const T f0 = f(x);
    auto coarse = detail::fd_jet_once<T>(f, x, steps, f0);
    if (!richardson) return coarse;
    const RVec half = steps * 0.5;
    auto fine = detail::fd_jet_once<T>(f, x, half, f0);
    const auto n = coarse.grad.size();
    for (std::size_t i = 0; i < n; ++i) {
        fine.grad[i] = (fine.grad[i] * 4.0 - coarse.grad[i]) * (1.0 / 3.0);
        for (std::size_t j = 0; j < n; ++j) {
            fine.hess[i][j] = (fine.hess[i][j] * 4.0 - coarse.hess[i][j]) * (1.0 / 3.0);
        }
    }
    return fine;
}

/// Wirtinger ∂_a from a real jet (complex variable a occupies slots 2a, 2a+1).
template <class T>
detail::WirtingerType<T> wirtinger_d(const RealJet<T>& jet, int a) {
    const auto x = static_cast<std::size_t>(2 * a);
    detail::WirtingerType<T> r = (jet.grad[x] * cplx(1.0, 0.0) - jet.grad[x + 1] * cplx(0.0, 1.0)) * 0.5;
    return r;
}

/// Wirtinger ∂_a ∂̄_b from a real jet.
template <class T>
detail::WirtingerType<T> wirtinger_d_dbar(const RealJet<T>& jet, int a, int b) {
    const auto xa = static_cast<std::size_t>(2 * a);
    const auto xb = static_cast<std::size_t>(2 * b);
    const auto& H = jet.hess;
    detail::WirtingerType<T> r = ((H[xa][xb] + H[xa + 1][xb + 1]) * cplx(1.0, 0.0) +
            (H[xa][xb + 1] - H[xa + 1][xb]) * cplx(0.0, 1.0)) *
           0.25;
    return r;
}

/// Wirtinger ∂_a ∂_b from a real jet.
template <class T>
detail::WirtingerType<T> wirtinger_d_d(const RealJet<T>& jet, int a, int b) {
    const auto xa = static_cast<std::size_t>(2 * a);
    const auto xb = static_cast<std::size_t>(2 * b);
    const auto& H = jet.hess;
    detail::WirtingerType<T> r = ((H[xa][xb] - H[xa + 1][xb + 1]) * cplx(1.0, 0.0) -
            (H[xa][xb + 1] + H[xa + 1][xb]) * cplx(0.0, 1.0)) *
           0.25;
    return r;
}

/// Pack complex coordinates into the real vector (Re w₁, Im w₁, ...).
inline RVec to_real(const CVec& w) {
    RVec x(2 * w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        x(2 * i) = w(i).real();
        x(2 * i + 1) = w(i).imag();
    }
    return x;
}

inline CVec to_complex(const RVec& x) {
    CVec w(x.size() / 2);
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = cplx(x(2 * i), x(2 * i + 1));
    return w;
}

}  // namespace dimlab
