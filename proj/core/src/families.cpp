#include "dimlab/families.hpp"

#include <cmath>

namespace dimlab {

namespace {

std::array<int, kMaxPolyVars> unit(int i, int power = 1) {
    std::array<int, kMaxPolyVars> e{};
    e[static_cast<std::size_t>(i)] = power;
    return e;
}

int read_base_dim(const nlohmann::json& params) {
    const int m = params.value("m", 1);
    if (m != 1 && m != 2) throw PreconditionError("weight: base dimension m must be 1 or 2");
    return m;
}

int read_degree(const nlohmann::json& params, int min_degree) {
    if (!params.contains("l")) throw PreconditionError("weight: missing line-bundle degree 'l'");
    const int l = params.at("l").get<int>();
    if (l < min_degree) {
        throw PreconditionError("weight: degree l = " + std::to_string(l) + " is below " +
                                std::to_string(min_degree));
    }
    return l;
}

}  // namespace

// ---------------------------------------------------------------- PolyWeight

PolyWeight::PolyWeight(int base_dim, BiPoly poly, std::string id, nlohmann::json params)
    : base_dim_(base_dim), poly_(std::move(poly)), id_(std::move(id)), params_(std::move(params)) {
    if (base_dim_ < 1 || base_dim_ > 2) throw PreconditionError("PolyWeight: base dimension must be 1 or 2");
    if (poly_.num_vars() != base_dim_ + 1) {
        throw PreconditionError("PolyWeight: polynomial must have base_dim + 1 variables");
    }
    const int n = base_dim_ + 1;
    d_.resize(static_cast<std::size_t>(n), BiPoly(n));
    db_.resize(static_cast<std::size_t>(n), BiPoly(n));
    d_db_.assign(static_cast<std::size_t>(n), std::vector<BiPoly>(static_cast<std::size_t>(n), BiPoly(n)));
    db_d_ = d_db_;
    d_d_ = d_db_;
    db_db_ = d_db_;
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        d_[ui] = poly_.d(i);
        db_[ui] = poly_.dbar(i);
        for (int j = 0; j < n; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            d_db_[ui][uj] = d_[ui].dbar(j);
            db_d_[ui][uj] = db_[ui].d(j);
            d_d_[ui][uj] = d_[ui].d(j);
            db_db_[ui][uj] = db_[ui].dbar(j);
        }
    }
    if (params_.is_null()) params_ = nlohmann::json::object();
}

CVec PolyWeight::point(const BasePoint& t, cplx z) const {
    if (t.size() != base_dim_) throw PreconditionError("PolyWeight: base point has wrong dimension");
    CVec x(base_dim_ + 1);
    x.head(base_dim_) = t;
    x(base_dim_) = z;
    return x;
}

double PolyWeight::value(const BasePoint& t, cplx z) const { return poly_.re_eval(point(t, z)); }

std::optional<DerivativeSet> PolyWeight::analytic(const BasePoint& t, cplx z) const {
    const CVec x = point(t, z);
    const int m = base_dim_;
    auto re_d = [&](int i) {
        const auto ui = static_cast<std::size_t>(i);
        return 0.5 * (d_[ui].eval(x) + std::conj(db_[ui].eval(x)));
    };
    auto re_d_dbar = [&](int i, int j) {
        const auto ui = static_cast<std::size_t>(i);
        const auto uj = static_cast<std::size_t>(j);
        return 0.5 * (d_db_[ui][uj].eval(x) + std::conj(db_d_[ui][uj].eval(x)));
    };
    auto re_d_d = [&](int i, int j) {
        const auto ui = static_cast<std::size_t>(i);
        const auto uj = static_cast<std::size_t>(j);
        return 0.5 * (d_d_[ui][uj].eval(x) + std::conj(db_db_[ui][uj].eval(x)));
    };
    DerivativeSet d;
    d.value = poly_.re_eval(x);
    d.grad_t.resize(m);
    d.hess_tt.resize(m, m);
    d.mixed_tzbar.resize(m);
    d.mixed_tz.resize(m);
    for (int j = 0; j < m; ++j) {
        d.grad_t(j) = re_d(j);
        for (int k = 0; k < m; ++k) d.hess_tt(j, k) = re_d_dbar(j, k);
        d.mixed_tzbar(j) = re_d_dbar(j, m);
        d.mixed_tz(j) = re_d_d(j, m);
    }
    d.grad_z = re_d(m);
    d.hess_zz = re_d_dbar(m, m).real();
    return d;
}

std::shared_ptr<PolyWeight> make_fock_scaled(int base_dim) {
    const int n = base_dim + 1;
    BiPoly zz(n);
    zz.add(1.0, unit(base_dim), unit(base_dim));
    BiPoly a(n);
    a.add(1.0, {});
    for (int j = 0; j < base_dim; ++j) a.add(1.0, unit(j), unit(j));
    return std::make_shared<PolyWeight>(base_dim, a * zz, "fock_scaled", nlohmann::json{{"m", base_dim}});
}

std::shared_ptr<PolyWeight> make_fock_shifted() {
    // |z − t|² = |z|² − z t̄ − z̄ t + |t|²
    BiPoly p(2);
    p.add(1.0, unit(1), unit(1));
    p.add(-1.0, unit(1), unit(0));
    p.add(-1.0, unit(0), unit(1));
    p.add(1.0, unit(0), unit(0));
    return std::make_shared<PolyWeight>(1, p, "fock_shifted", nlohmann::json::object());
}

std::shared_ptr<PolyWeight> make_fock_general(const BiPoly& q, const BiPoly& ell, const BiPoly& c) {
    const int m = q.num_vars();
    if (ell.num_vars() != m || c.num_vars() != m) {
        throw PreconditionError("fock_general: q, l, c must share the base dimension");
    }
    const int n = m + 1;
    BiPoly zz(n);
    zz.add(1.0, unit(m), unit(m));
    BiPoly z(n);
    z.add(2.0, unit(m));
    const BiPoly p = q.widened(n) * zz + ell.widened(n) * z + c.widened(n);
    nlohmann::json params{{"m", m}, {"q", bipoly_to_json(q)}, {"l", bipoly_to_json(ell)}, {"c", bipoly_to_json(c)}};
    return std::make_shared<PolyWeight>(m, p, "fock_general", params);
}

// ----------------------------------------------------------- chart functions

ChartFunction chart_function_from_string(const std::string& name) {
    if (name == "one") return ChartFunction::one;
    if (name == "chi0") return ChartFunction::chi0;
    if (name == "re_z") return ChartFunction::re_z;
    if (name == "im_z") return ChartFunction::im_z;
    throw PreconditionError("fs_family: unknown chart function '" + name +
                            "' (expected one, chi0, re_z, im_z)");
}

std::string to_string(ChartFunction g) {
    switch (g) {
        case ChartFunction::one: return "one";
        case ChartFunction::chi0: return "chi0";
        case ChartFunction::re_z: return "re_z";
        case ChartFunction::im_z: return "im_z";
    }
    return "one";
}

ChartValue eval_chart_function(ChartFunction g, cplx z) {
    const double u = std::norm(z);
    const double a = 1.0 + u;
    const cplx zb = std::conj(z);
    ChartValue v;
    switch (g) {
        case ChartFunction::one:
            v.g = 1.0;
            break;
        case ChartFunction::chi0:
            v.g = u / a;
            v.g_z = zb / (a * a);
            v.g_zzbar = (1.0 - u) / (a * a * a);
            break;
        case ChartFunction::re_z:
            v.g = z.real() / a;
            v.g_z = (1.0 - zb * zb) / (2.0 * a * a);
            v.g_zzbar = -2.0 * z.real() / (a * a * a);
            break;
        case ChartFunction::im_z:
            v.g = z.imag() / a;
            v.g_z = (1.0 + zb * zb) / (cplx(0.0, 2.0) * a * a);
            v.g_zzbar = -2.0 * z.imag() / (a * a * a);
            break;
    }
    return v;
}

// ------------------------------------------------------------------ FsFamily

FsFamily::FsFamily(int degree, int base_dim, std::vector<FsTerm> terms)
    : degree_(degree), base_dim_(base_dim), terms_(std::move(terms)) {
    if (degree_ < 2) throw PreconditionError("fs_family: degree l must be at least 2");
    if (base_dim_ < 1 || base_dim_ > 2) throw PreconditionError("fs_family: base dimension must be 1 or 2");
    for (const auto& term : terms_) {
        if (term.coef.num_vars() != base_dim_) {
            throw PreconditionError("fs_family: coefficient polynomials must be in the base variables");
        }
        if (term.coef.total_degree() > 2) {
            throw PreconditionError("fs_family: coefficient polynomials have degree at most 2");
        }
    }
}

double FsFamily::value(const BasePoint& t, cplx z) const {
    double v = degree_ * std::log1p(std::norm(z));
    for (const auto& term : terms_) v += term.coef.re_eval(t) * eval_chart_function(term.g, z).g;
    return v;
}

std::optional<DerivativeSet> FsFamily::analytic(const BasePoint& t, cplx z) const {
    const int m = base_dim_;
    const double u = std::norm(z);
    DerivativeSet d;
    d.value = degree_ * std::log1p(u);
    d.grad_t = CVec::Zero(m);
    d.hess_tt = CMat::Zero(m, m);
    d.mixed_tzbar = CVec::Zero(m);
    d.mixed_tz = CVec::Zero(m);
    d.grad_z = static_cast<double>(degree_) * std::conj(z) / (1.0 + u);
    d.hess_zz = degree_ / ((1.0 + u) * (1.0 + u));
    for (const auto& term : terms_) {
        const auto g = eval_chart_function(term.g, z);
        const double p = term.coef.re_eval(t);
        d.value += p * g.g;
        d.grad_z += p * g.g_z;
        d.hess_zz += p * g.g_zzbar;
        for (int j = 0; j < m; ++j) {
            const cplx pj = term.coef.re_d(t, j);
            d.grad_t(j) += pj * g.g;
            d.mixed_tzbar(j) += pj * std::conj(g.g_z);
            d.mixed_tz(j) += pj * g.g_z;
            for (int k = 0; k < m; ++k) d.hess_tt(j, k) += term.coef.re_d_dbar(t, j, k) * g.g;
        }
    }
    return d;
}

nlohmann::json FsFamily::params() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& term : terms_) {
        terms.push_back({{"g", to_string(term.g)}, {"coef", bipoly_to_json(term.coef)}});
    }
    return {{"l", degree_}, {"m", base_dim_}, {"terms", terms}};
}

// ---------------------------------------------------------------- MobiusFlow

MobiusFlow::MobiusFlow(int degree) : degree_(degree) {
    if (degree_ < 2) throw PreconditionError("mobius_flow: degree l must be at least 2");
}

double MobiusFlow::value(const BasePoint& t, cplx z) const {
    return degree_ * std::log1p(std::norm(z - t(0)));
}

std::optional<DerivativeSet> MobiusFlow::analytic(const BasePoint& t, cplx z) const {
    const cplx w = z - t(0);
    const cplx wb = std::conj(w);
    const double a = 1.0 + std::norm(w);
    const double l = degree_;
    DerivativeSet d;
    d.value = l * std::log(a);
    d.grad_t = CVec::Constant(1, -l * wb / a);
    d.hess_tt = CMat::Constant(1, 1, l / (a * a));
    d.grad_z = l * wb / a;
    d.hess_zz = l / (a * a);
    d.mixed_tzbar = CVec::Constant(1, -l / (a * a));
    d.mixed_tz = CVec::Constant(1, l * wb * wb / (a * a));
    return d;
}

// ------------------------------------------------------------ FunctionWeight

FunctionWeight::FunctionWeight(int base_dim, Fn fn, std::string id)
    : base_dim_(base_dim), fn_(std::move(fn)), id_(std::move(id)) {
    if (base_dim_ < 1 || base_dim_ > 2) throw PreconditionError("FunctionWeight: base dimension must be 1 or 2");
}

// ---------------------------------------------------------------- PathWeight

PathWeight::PathWeight(WeightPtr base, double scale, bool keep_base)
    : base_(std::move(base)), scale_(scale), keep_base_(keep_base) {
    if (!base_) throw PreconditionError("PathWeight: null base family");
}

double PathWeight::value(const BasePoint& t, cplx z) const {
    const BasePoint t0 = BasePoint::Zero(t.size());
    const double phi0 = base_->value(t0, z);
    return (keep_base_ ? phi0 : 0.0) + scale_ * (base_->value(t, z) - phi0);
}

std::optional<DerivativeSet> PathWeight::analytic(const BasePoint& t, cplx z) const {
    const BasePoint t0 = BasePoint::Zero(t.size());
    auto at = base_->analytic(t, z);
    auto at0 = base_->analytic(t0, z);
    if (!at || !at0) return std::nullopt;
    const double b = keep_base_ ? 1.0 : 0.0;
    DerivativeSet d;
    d.value = b * at0->value + scale_ * (at->value - at0->value);
    d.grad_t = scale_ * at->grad_t;
    d.hess_tt = scale_ * at->hess_tt;
    d.mixed_tzbar = scale_ * at->mixed_tzbar;
    d.mixed_tz = scale_ * at->mixed_tz;
    d.grad_z = b * at0->grad_z + scale_ * (at->grad_z - at0->grad_z);
    d.hess_zz = b * at0->hess_zz + scale_ * (at->hess_zz - at0->hess_zz);
    return d;
}

bool PathWeight::in_domain(const BasePoint& t, cplx z) const {
    return base_->in_domain(t, z) && base_->in_domain(BasePoint::Zero(t.size()), z);
}

std::string PathWeight::family_id() const {
    return (keep_base_ ? "path(" : "perturbation(") + base_->family_id() + ")";
}

nlohmann::json PathWeight::params() const {
    return {{"base", base_->family_id()}, {"base_params", base_->params()}, {"scale", scale_}};
}

// ------------------------------------------------------------------- factory

WeightPtr make_weight(const std::string& family, const nlohmann::json& params) {
    if (family == "fock_scaled") return make_fock_scaled(read_base_dim(params));
    if (family == "fock_shifted") return make_fock_shifted();
    if (family == "fock_general") {
        const int m = read_base_dim(params);
        auto poly = [&](const char* key) {
            return params.contains(key) ? bipoly_from_json(params.at(key), m) : BiPoly(m);
        };
        return make_fock_general(poly("q"), poly("l"), poly("c"));
    }
    if (family == "polynomial") {
        const int m = read_base_dim(params);
        if (!params.contains("poly")) throw PreconditionError("polynomial weight: missing 'poly'");
        return std::make_shared<PolyWeight>(m, bipoly_from_json(params.at("poly"), m + 1), "polynomial", params);
    }
    if (family == "fs_family") {
        const int l = read_degree(params, 2);
        const int m = read_base_dim(params);
        std::vector<FsTerm> terms;
        if (params.contains("terms")) {
            for (const auto& tj : params.at("terms")) {
                terms.push_back({chart_function_from_string(tj.at("g").get<std::string>()),
                                 bipoly_from_json(tj.at("coef"), m)});
            }
        }
        return std::make_shared<FsFamily>(l, m, std::move(terms));
    }
    if (family == "mobius_flow") return std::make_shared<MobiusFlow>(read_degree(params, 2));
    throw PreconditionError("unknown weight family '" + family + "'");
}

}  // namespace dimlab
