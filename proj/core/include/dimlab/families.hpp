/**
 * @file families.hpp
 * @brief Built-in weight families.
 *
 *   fock_scaled   φ = (1 + Σ|t_j|²)|z|²
 *   fock_shifted  φ = |z − t|²
 *   fock_general  φ = Re q(t)|z|² + 2 Re(ℓ(t) z) + Re c(t)
 *   polynomial    φ = Re P(t, z)
 *   fs_family     φ = l·log(1+|z|²) + Σ Re P_i(t)·g_i(z)
 *   mobius_flow   φ = l·log(1+|z−t|²)
 */

#pragma once

#include <array>
#include <functional>

#include "dimlab/polynomial.hpp"
#include "dimlab/weights.hpp"

namespace dimlab {

/// φ = Re P(t₁..t_m, z); z is the last polynomial variable.
class PolyWeight final : public WeightFamily {
public:
    PolyWeight(int base_dim, BiPoly poly, std::string id, nlohmann::json params = {});

    [[nodiscard]] int base_dim() const override { return base_dim_; }
    [[nodiscard]] double value(const BasePoint& t, cplx z) const override;
    [[nodiscard]] std::optional<DerivativeSet> analytic(const BasePoint& t, cplx z) const override;
    [[nodiscard]] bool has_analytic() const override { return true; }
    [[nodiscard]] std::string family_id() const override { return id_; }
    [[nodiscard]] nlohmann::json params() const override { return params_; }
    [[nodiscard]] const BiPoly& poly() const { return poly_; }

private:
    [[nodiscard]] CVec point(const BasePoint& t, cplx z) const;

    int base_dim_;
    BiPoly poly_;
    // Cached derivative polynomials: d_[i] = ∂_i P, db_[i] = ∂̄_i P, etc.
    std::vector<BiPoly> d_, db_;
    std::vector<std::vector<BiPoly>> d_db_, db_d_, d_d_, db_db_;
    std::string id_;
    nlohmann::json params_;
};

std::shared_ptr<PolyWeight> make_fock_scaled(int base_dim = 1);
std::shared_ptr<PolyWeight> make_fock_shifted();
/// q, ℓ, c are polynomials in t (base_dim variables).
std::shared_ptr<PolyWeight> make_fock_general(const BiPoly& q, const BiPoly& ell, const BiPoly& c);

/// Chart functions available to fs_family perturbations.
enum class ChartFunction {
    one,   ///< 1
    chi0,  ///< |z|²/(1+|z|²)
    re_z,  ///< Re z/(1+|z|²)
    im_z,  ///< Im z/(1+|z|²)
};

ChartFunction chart_function_from_string(const std::string& name);
std::string to_string(ChartFunction g);

struct ChartValue {
    double g = 0.0;
    cplx g_z{0.0, 0.0};
    double g_zzbar = 0.0;
};
ChartValue eval_chart_function(ChartFunction g, cplx z);

struct FsTerm {
    ChartFunction g = ChartFunction::one;
    BiPoly coef;  ///< polynomial in t; enters through its real part
};

class FsFamily final : public WeightFamily {
public:
    FsFamily(int degree, int base_dim, std::vector<FsTerm> terms);

    [[nodiscard]] int base_dim() const override { return base_dim_; }
    [[nodiscard]] double value(const BasePoint& t, cplx z) const override;
    [[nodiscard]] std::optional<DerivativeSet> analytic(const BasePoint& t, cplx z) const override;
    [[nodiscard]] bool has_analytic() const override { return true; }
    [[nodiscard]] std::string family_id() const override { return "fs_family"; }
    [[nodiscard]] nlohmann::json params() const override;
    [[nodiscard]] int degree() const { return degree_; }

private:
    int degree_;
    int base_dim_;
    std::vector<FsTerm> terms_;
};

class MobiusFlow final : public WeightFamily {
public:
    explicit MobiusFlow(int degree);

    [[nodiscard]] int base_dim() const override { return 1; }
    [[nodiscard]] double value(const BasePoint& t, cplx z) const override;
    [[nodiscard]] std::optional<DerivativeSet> analytic(const BasePoint& t, cplx z) const override;
    [[nodiscard]] bool has_analytic() const override { return true; }
    [[nodiscard]] std::string family_id() const override { return "mobius_flow"; }
    [[nodiscard]] nlohmann::json params() const override { return {{"l", degree_}}; }
    [[nodiscard]] int degree() const { return degree_; }

private:
    int degree_;
};

/// Arbitrary callable; derivatives by finite differences only.
class FunctionWeight final : public WeightFamily {
public:
    using Fn = std::function<double(const BasePoint&, cplx)>;
    FunctionWeight(int base_dim, Fn fn, std::string id);

    [[nodiscard]] int base_dim() const override { return base_dim_; }
    [[nodiscard]] double value(const BasePoint& t, cplx z) const override { return fn_(t, z); }
    [[nodiscard]] std::string family_id() const override { return id_; }

private:
    int base_dim_;
    Fn fn_;
    std::string id_;
};

/**
 * φ₀(z) + s·ψ(t, z) where φ₀ = φ(0, ·) and ψ = φ − φ₀ for a base family φ.
 *
 * With `keep_base = false` only s·ψ is returned.
 */
class PathWeight final : public WeightFamily {
public:
    PathWeight(WeightPtr base, double scale, bool keep_base = true);

    [[nodiscard]] int base_dim() const override { return base_->base_dim(); }
    [[nodiscard]] double value(const BasePoint& t, cplx z) const override;
    [[nodiscard]] std::optional<DerivativeSet> analytic(const BasePoint& t, cplx z) const override;
    [[nodiscard]] bool has_analytic() const override { return base_->has_analytic(); }
    [[nodiscard]] bool in_domain(const BasePoint& t, cplx z) const override;
    [[nodiscard]] std::string family_id() const override;
    [[nodiscard]] nlohmann::json params() const override;

private:
    WeightPtr base_;
    double scale_;
    bool keep_base_;
};

/// Build a built-in family from its identifier and JSON parameters.
WeightPtr make_weight(const std::string& family, const nlohmann::json& params);

}  // namespace dimlab
