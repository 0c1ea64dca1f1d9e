#include "dimlab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace dimlab {

namespace {

constexpr double kPi = std::numbers::pi;

void require_counts(int n_radial, int n_angular) {
    if (n_radial < 2 || n_angular < 4) {
        throw PreconditionError("quadrature: need n_radial >= 2 and n_angular >= 4 (got " +
                                std::to_string(n_radial) + ", " + std::to_string(n_angular) + ")");
    }
}

// Regularized upper incomplete gamma Q(n+1, x) = e^{-x} Σ_{k≤n} x^k/k!.
double upper_gamma_tail(int n, double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= n; ++k) {
        term *= x / k;
        sum += term;
    }
    return std::exp(-x) * sum;
}

template <class T>
T pairwise_impl(std::span<const T> v) {
    constexpr std::size_t kBlock = 16;
    if (v.size() <= kBlock) {
        T acc{};
        for (const auto& x : v) acc += x;
        return acc;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_impl(v.first(half)) + pairwise_impl(v.subspan(half));
}

}  // namespace

QuadratureRule::QuadratureRule(std::vector<cplx> nodes, std::vector<double> weights,
                               DomainTag domain, int n_radial, int n_angular,
                               double truncation_bound)
    : nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      domain_(domain),
      n_radial_(n_radial),
      n_angular_(n_angular),
      truncation_bound_(truncation_bound) {
    if (nodes_.size() != weights_.size()) {
        throw PreconditionError("quadrature: node/weight length mismatch");
    }
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw PreconditionError("quadrature: weights must be finite and positive");
        }
    }
}

std::string QuadratureRule::describe() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, DiskDomain>) {
                os << "disk(R=" << d.radius << ")";
            } else if constexpr (std::is_same_v<D, GaussianPlaneDomain>) {
                os << "gaussian_plane(scale=" << d.envelope_scale << ",R=" << d.cutoff_radius << ")";
            } else {
                os << "p1_chart";
            }
        },
        domain_);
    os << " " << n_radial_ << "x" << n_angular_;
    return os.str();
}

GaussLegendre gauss_legendre_unit(int n) {
    if (n < 1) throw PreconditionError("gauss_legendre_unit: n must be positive");
    GaussLegendre gl;
    gl.nodes.resize(static_cast<std::size_t>(n));
    gl.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute derivative at the converged root.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map (-1, 1) → (0, 1); x is descending in i.
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        gl.nodes[lo] = 0.5 * (1.0 - x);
        gl.nodes[hi] = 0.5 * (1.0 + x);
        gl.weights[lo] = 0.5 * w;
        gl.weights[hi] = 0.5 * w;
    }
    return gl;
}

QuadratureRule build_plane_rule(const PlaneDomainSpec& spec, int n_radial, int n_angular,
                                std::optional<int> target_degree) {
    require_counts(n_radial, n_angular);

    double radius = 0.0;
    double truncation = 0.0;
    DomainTag tag;
    if (const auto* disk = std::get_if<DiskDomain>(&spec.kind)) {
        if (!(disk->radius > 0.0) || !std::isfinite(disk->radius)) {
            throw PreconditionError("build_plane_rule: disk radius must be finite and positive");
        }
        radius = disk->radius;
        tag = *disk;
    } else {
        const auto& g = std::get<GaussianPlaneDomain>(spec.kind);
        if (!(g.envelope_scale > 0.0) || !(g.cutoff_radius > 0.0) ||
            !std::isfinite(g.envelope_scale) || !std::isfinite(g.cutoff_radius)) {
            throw PreconditionError(
                "build_plane_rule: envelope_scale and cutoff_radius must be finite and positive");
        }
        const int degree = target_degree.value_or(0);
        if (target_degree) {
            const double two_n = 2.0 * degree;
            const double needed = g.envelope_scale * (two_n + 10.0 * std::sqrt(two_n));
            if (g.cutoff_radius * g.cutoff_radius < needed) {
                throw PreconditionError("build_plane_rule: cutoff_radius " +
                                        std::to_string(g.cutoff_radius) +
                                        " too small for polynomial degree " +
                                        std::to_string(degree));
            }
        }
        radius = g.cutoff_radius;
        // Mass of |z|^{2N} e^{-|z|²/s} outside the cutoff, relative to the full plane.
        truncation = upper_gamma_tail(degree, radius * radius / g.envelope_scale);
        tag = g;
    }

    const auto gl = gauss_legendre_unit(n_radial);
    const double r2 = radius * radius;
    const double dtheta = 2.0 * kPi / n_angular;
    std::vector<cplx> nodes;
    std::vector<double> weights;
    nodes.reserve(static_cast<std::size_t>(n_radial) * n_angular);
    weights.reserve(nodes.capacity());
    for (int i = 0; i < n_radial; ++i) {
        const double u = r2 * gl.nodes[static_cast<std::size_t>(i)];
        const double r = std::sqrt(u);
        // dA = ½ du dθ
        const double w = 0.5 * r2 * gl.weights[static_cast<std::size_t>(i)] * dtheta;
        for (int j = 0; j < n_angular; ++j) {
            nodes.push_back(std::polar(r, j * dtheta));
            weights.push_back(w);
        }
    }
    return {std::move(nodes), std::move(weights), tag, n_radial, n_angular, truncation};
}

QuadratureRule build_p1_rule(int n_radial, int n_angular) {
    require_counts(n_radial, n_angular);
    const auto gl = gauss_legendre_unit(n_radial);
    const double dtheta = 2.0 * kPi / n_angular;
    std::vector<cplx> nodes;
    std::vector<double> weights;
    nodes.reserve(static_cast<std::size_t>(n_radial) * n_angular);
    weights.reserve(nodes.capacity());
    for (int i = 0; i < n_radial; ++i) {
        const double s = gl.nodes[static_cast<std::size_t>(i)];
        const double one_minus = 1.0 - s;
        const double r = std::sqrt(s / one_minus);
        // dA = ½ du dθ with u = s/(1-s), du = ds/(1-s)².
        const double w = 0.5 * gl.weights[static_cast<std::size_t>(i)] / (one_minus * one_minus) * dtheta;
        for (int j = 0; j < n_angular; ++j) {
            nodes.push_back(std::polar(r, j * dtheta));
            weights.push_back(w);
        }
    }
    return {std::move(nodes), std::move(weights), P1Chart{}, n_radial, n_angular, 0.0};
}

cplx pairwise_sum(std::span<const cplx> values) { return pairwise_impl(values); }
double pairwise_sum(std::span<const double> values) { return pairwise_impl(values); }

cplx integrate(const QuadratureRule& rule, std::span<const cplx> samples) {
    if (samples.size() != rule.size()) {
        throw PreconditionError("integrate: sample count " + std::to_string(samples.size()) +
                                " does not match rule size " + std::to_string(rule.size()));
    }
    std::vector<cplx> terms(samples.size());
    const auto& w = rule.weights();
    for (std::size_t i = 0; i < samples.size(); ++i) terms[i] = w[i] * samples[i];
    return pairwise_sum(std::span<const cplx>(terms));
}

double integrate(const QuadratureRule& rule, std::span<const double> samples) {
    if (samples.size() != rule.size()) {
        throw PreconditionError("integrate: sample count " + std::to_string(samples.size()) +
                                " does not match rule size " + std::to_string(rule.size()));
    }
    std::vector<double> terms(samples.size());
    const auto& w = rule.weights();
    for (std::size_t i = 0; i < samples.size(); ++i) terms[i] = w[i] * samples[i];
    return pairwise_sum(std::span<const double>(terms));
}

}  // namespace dimlab
