/**
 * @file polynomial.hpp
 * @brief Polynomials in (x, x̄) over a few complex variables, with Wirtinger derivatives.
 */

#pragma once

#include <array>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dimlab/types.hpp"

namespace dimlab {

inline constexpr int kMaxPolyVars = 3;

struct BiMonomial {
    cplx coef{0.0, 0.0};
    std::array<int, kMaxPolyVars> holo{};      // exponents of x_i
    std::array<int, kMaxPolyVars> antiholo{};  // exponents of x̄_i
};

/**
 * P(x, x̄) = Σ c·x^α x̄^β in n ≤ 3 complex variables.
 *
 * Weights use the real part Re P; the `re_*` helpers return Wirtinger
 * derivatives of Re P directly.
 */
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(int num_vars, std::vector<BiMonomial> terms = {});

    [[nodiscard]] int num_vars() const { return num_vars_; }
    [[nodiscard]] const std::vector<BiMonomial>& terms() const { return terms_; }
    [[nodiscard]] bool empty() const { return terms_.empty(); }
    [[nodiscard]] int total_degree() const;

    BiPoly& add(cplx coef, std::array<int, kMaxPolyVars> holo,
                std::array<int, kMaxPolyVars> antiholo = {});

    [[nodiscard]] cplx eval(const CVec& x) const;
    /// ∂/∂x_i
    [[nodiscard]] BiPoly d(int i) const;
    /// ∂/∂x̄_i
    [[nodiscard]] BiPoly dbar(int i) const;

    [[nodiscard]] double re_eval(const CVec& x) const { return eval(x).real(); }
    /// ∂_i Re P
    [[nodiscard]] cplx re_d(const CVec& x, int i) const;
    /// ∂_i ∂̄_j Re P
    [[nodiscard]] cplx re_d_dbar(const CVec& x, int i, int j) const;
    /// ∂_i ∂_j Re P
    [[nodiscard]] cplx re_d_d(const CVec& x, int i, int j) const;

    /// Embed into a polynomial with more variables (new variables appended, unused).
    [[nodiscard]] BiPoly widened(int num_vars) const;

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(cplx s, const BiPoly& a);

private:
    int num_vars_ = 0;
    std::vector<BiMonomial> terms_;
};

/// JSON form: [{"c": [re, im], "a": [..], "b": [..]}, ...] or a bare real constant.
BiPoly bipoly_from_json(const nlohmann::json& j, int num_vars);
nlohmann::json bipoly_to_json(const BiPoly& p);

}  // namespace dimlab
