#include "dimlab/polynomial.hpp"

#include <nlohmann/json.hpp>

namespace dimlab {

namespace {

cplx ipow(cplx x, int n) {
    cplx r{1.0, 0.0};
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

}  // namespace

BiPoly::BiPoly(int num_vars, std::vector<BiMonomial> terms)
    : num_vars_(num_vars), terms_(std::move(terms)) {
    if (num_vars < 1 || num_vars > kMaxPolyVars) {
        throw PreconditionError("BiPoly: number of variables must be in [1, 3]");
    }
}

int BiPoly::total_degree() const {
    int deg = 0;
    for (const auto& m : terms_) {
        int d = 0;
        for (int i = 0; i < num_vars_; ++i) d += m.holo[i] + m.antiholo[i];
        deg = std::max(deg, d);
    }
    return deg;
}

BiPoly& BiPoly::add(cplx coef, std::array<int, kMaxPolyVars> holo,
                    std::array<int, kMaxPolyVars> antiholo) {
    for (int i = 0; i < kMaxPolyVars; ++i) {
        if (holo[i] < 0 || antiholo[i] < 0) throw PreconditionError("BiPoly: negative exponent");
        if (i >= num_vars_ && (holo[i] != 0 || antiholo[i] != 0)) {
            throw PreconditionError("BiPoly: exponent on a variable that does not exist");
        }
    }
    terms_.push_back({coef, holo, antiholo});
    return *this;
}

cplx BiPoly::eval(const CVec& x) const {
    cplx sum{0.0, 0.0};
    for (const auto& m : terms_) {
        cplx v = m.coef;
        for (int i = 0; i < num_vars_; ++i) {
            if (m.holo[i]) v *= ipow(x(i), m.holo[i]);
            if (m.antiholo[i]) v *= ipow(std::conj(x(i)), m.antiholo[i]);
        }
        sum += v;
    }
    return sum;
}

BiPoly BiPoly::d(int i) const {
    BiPoly out(num_vars_);
    for (const auto& m : terms_) {
        if (m.holo[i] == 0) continue;
        BiMonomial t = m;
        t.coef *= static_cast<double>(m.holo[i]);
        t.holo[i] -= 1;
        out.terms_.push_back(t);
    }
    return out;
}

BiPoly BiPoly::dbar(int i) const {
    BiPoly out(num_vars_);
    for (const auto& m : terms_) {
        if (m.antiholo[i] == 0) continue;
        BiMonomial t = m;
        t.coef *= static_cast<double>(m.antiholo[i]);
        t.antiholo[i] -= 1;
        out.terms_.push_back(t);
    }
    return out;
}

cplx BiPoly::re_d(const CVec& x, int i) const {
    return 0.5 * (d(i).eval(x) + std::conj(dbar(i).eval(x)));
}

cplx BiPoly::re_d_dbar(const CVec& x, int i, int j) const {
    return 0.5 * (d(i).dbar(j).eval(x) + std::conj(dbar(i).d(j).eval(x)));
}

cplx BiPoly::re_d_d(const CVec& x, int i, int j) const {
    return 0.5 * (d(i).d(j).eval(x) + std::conj(dbar(i).dbar(j).eval(x)));
}

BiPoly BiPoly::widened(int num_vars) const {
    if (num_vars < num_vars_) throw PreconditionError("BiPoly::widened: cannot drop variables");
    BiPoly out(num_vars, terms_);
    return out;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    if (a.num_vars_ != b.num_vars_) throw PreconditionError("BiPoly: variable count mismatch");
    BiPoly out = a;
    out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
    return out;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    if (a.num_vars_ != b.num_vars_) throw PreconditionError("BiPoly: variable count mismatch");
    BiPoly out(a.num_vars_);
    for (const auto& x : a.terms_) {
        for (const auto& y : b.terms_) {
            BiMonomial m;
            m.coef = x.coef * y.coef;
            for (int i = 0; i < kMaxPolyVars; ++i) {
                m.holo[i] = x.holo[i] + y.holo[i];
                m.antiholo[i] = x.antiholo[i] + y.antiholo[i];
            }
            out.terms_.push_back(m);
        }
    }
    return out;
}

BiPoly operator*(cplx s, const BiPoly& a) {
    BiPoly out = a;
    for (auto& m : out.terms_) m.coef *= s;
    return out;
}

BiPoly bipoly_from_json(const nlohmann::json& j, int num_vars) {
    BiPoly p(num_vars);
    if (j.is_number()) {
        p.add(cplx(j.get<double>(), 0.0), {});
        return p;
    }
    if (!j.is_array()) throw PreconditionError("polynomial must be a number or a list of terms");
    for (const auto& term : j) {
        cplx c;
        const auto& cj = term.at("c");
        if (cj.is_number()) {
            c = cplx(cj.get<double>(), 0.0);
        } else {
            c = cplx(cj.at(0).get<double>(), cj.at(1).get<double>());
        }
        std::array<int, kMaxPolyVars> a{};
        std::array<int, kMaxPolyVars> b{};
        if (term.contains("a")) {
            const auto& aj = term.at("a");
            if (static_cast<int>(aj.size()) > num_vars) {
                throw PreconditionError("polynomial term has too many exponents");
            }
            for (std::size_t i = 0; i < aj.size(); ++i) a[i] = aj.at(i).get<int>();
        }
        if (term.contains("b")) {
            const auto& bj = term.at("b");
            if (static_cast<int>(bj.size()) > num_vars) {
                throw PreconditionError("polynomial term has too many exponents");
            }
            for (std::size_t i = 0; i < bj.size(); ++i) b[i] = bj.at(i).get<int>();
        }
        p.add(c, a, b);
    }
    return p;
}

nlohmann::json bipoly_to_json(const BiPoly& p) {
    auto out = nlohmann::json::array();
    for (const auto& m : p.terms()) {
        nlohmann::json t;
        t["c"] = {m.coef.real(), m.coef.imag()};
        t["a"] = std::vector<int>(m.holo.begin(), m.holo.begin() + p.num_vars());
        t["b"] = std::vector<int>(m.antiholo.begin(), m.antiholo.begin() + p.num_vars());
        out.push_back(t);
    }
    return out;
}

}  // namespace dimlab
