#include "macroloc/oracle.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "macroloc/errors.hpp"

namespace macroloc::oracle {

namespace {

double finite(const std::function<double(double)>& f, double a, double b, double tol) {
    thread_local boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, a, b, tol);
}

// int_a^inf f
double tail(const std::function<double(double)>& f, double a, double tol) {
    thread_local boost::math::quadrature::exp_sinh<double> es;
    return es.integrate([&](double u) { return f(a + u); }, tol);
}

// Separate instances for the inner integrals of nested quadratures.
double finite_inner(const std::function<double(double)>& f, double a, double b, double tol) {
    thread_local boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, a, b, tol);
}

double tail_inner(const std::function<double(double)>& f, double a, double tol) {
    thread_local boost::math::quadrature::exp_sinh<double> es;
    return es.integrate([&](double u) { return f(a + u); }, tol);
}

}  // namespace

// MT19937-64 (Matsumoto & Nishimura), written out so that the stream is fixed.
Sampler::Sampler(std::uint64_t seed) : index_(312) {
    state_[0] = seed;
    for (int i = 1; i < 312; ++i)
        state_[i] = 6364136223846793005ULL * (state_[i - 1] ^ (state_[i - 1] >> 62)) + static_cast<std::uint64_t>(i);
}

std::uint64_t Sampler::next() {
    constexpr std::uint64_t upper = 0xFFFFFFFF80000000ULL, lower = 0x7FFFFFFFULL;
    constexpr std::uint64_t matrix = 0xB5026F5AA96619E9ULL;
    if (index_ >= 312) {
        for (int i = 0; i < 312; ++i) {
            const std::uint64_t x = (state_[i] & upper) | (state_[(i + 1) % 312] & lower);
            std::uint64_t xa = x >> 1;
            if (x & 1ULL) xa ^= matrix;
            state_[i] = state_[(i + 156) % 312] ^ xa;
        }
        index_ = 0;
    }
    std::uint64_t y = state_[index_++];
    y ^= (y >> 29) & 0x5555555555555555ULL;
    y ^= (y << 17) & 0x71D67FFFEDA60000ULL;
    y ^= (y << 37) & 0xFFF7EEE000000000ULL;
    y ^= y >> 43;
    return y;
}

double Sampler::uniform() {
    // 53 random bits, shifted off zero
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

Vec3 Sampler::unit_vector() {
    const double z = 2.0 * uniform() - 1.0;
    const double phi = 2.0 * M_PI * uniform();
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {rho * std::cos(phi), rho * std::sin(phi), z};
}

Vec3 Sampler::sample(const ExponentialDensity& d) {
    const double r = -std::log(uniform() * uniform() * uniform()) / d.lambda;
    Vec3 u = unit_vector();
    for (double& c : u) c *= r;
    return u;
}

McEstimate mc_pair_integral(const ExponentialDensity& a, const ExponentialDensity& b,
                            const std::function<double(double)>& kernel, double separation,
                            std::size_t samples, std::uint64_t seed) {
    if (samples < 1000) throw InputError("Monte Carlo estimate needs at least 1000 samples");
    if (!(a.lambda > 0 && b.lambda > 0)) throw InputError("density exponents must be positive");
    Sampler rng(seed);
    // Welford accumulation
    double mean = 0, m2 = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const Vec3 r = rng.sample(a);
        const Vec3 rp = rng.sample(b);
        const double dx = r[0] - rp[0], dy = r[1] - rp[1], dz = r[2] - rp[2] - separation;
        const double x = kernel(std::sqrt(dx * dx + dy * dy + dz * dz));
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
    }
    const double n = static_cast<double>(samples);
    return {mean, std::sqrt(m2 / (n - 1) / n), samples, seed};
}

double radial_integral(const std::function<double(double)>& f) {
    auto g = [&](double r) { return r * r * f(r); };
    return 4.0 * M_PI * (finite(g, 0.0, 1.0, 1e-13) + tail(g, 1.0, 1e-13));
}

double radial_transform_check(const std::function<double(double)>& f, double k) {
    if (!(k >= 0)) throw InputError("wavenumber must be non-negative");
    if (k == 0) return radial_integral(f);

    // Integrate half-periods of sin(kr) one at a time; stop once the
    // contributions have decayed far below the running total.
    const double width = std::min(M_PI / k, 0.25);
    auto g = [&](double r) { return r * std::sin(k * r) * f(r); };
    double sum = 0, scale = 0;
    int quiet = 0;
    for (long j = 0; j < 10'000'000; ++j) {
        const double part = finite(g, j * width, (j + 1) * width, 1e-13);
        sum += part;
        scale = std::max(scale, std::abs(sum));
        if (std::abs(part) <= 1e-17 * scale) {
            if (++quiet >= 8) return 4.0 * M_PI / k * sum;
        } else {
            quiet = 0;
        }
    }
    throw ConvergenceError("radial_transform_check: integrand did not decay");
}

double relative_density(double lambda, double r) {
    const double x = lambda * r;
    return lambda * lambda * lambda * std::exp(-x) * (x * x + 3 * x + 3) / (192.0 * M_PI);
}

double real_space_pair_energy(double lambda, const TwoYukawaParams& pot, double s) {
    validate(pot);
    if (!(lambda > 0)) throw InputError("lambda must be positive");
    if (!(s >= 0)) throw InputError("separation must be non-negative");
    const double sig = pot.sigma;
    auto g = [&](double r) { return relative_density(lambda, r); };
    if (s == 0) {
        // 4 pi int r^2 g(r) v(r) dr, with r v(r) finite at the origin
        auto h = [&](double r) {
            const double x = r / sig;
            const double rv = -pot.epsilon * pot.b * sig * (std::exp(-pot.m * (x - 1)) - std::exp(-pot.n * (x - 1)));
            return r * g(r) * rv;
        };
        return 4.0 * M_PI * (finite(h, 0.0, 1.0 / lambda, 1e-14) + tail(h, 1.0 / lambda, 1e-14));
    }
    // V1(r + s) - V1(|r - s|) with V1 the antiderivative of t v(t), written as
    // -2 eps b sigma^2 [e^{-m(M-1)} sinh(m u)/m - (m -> n)], M = max(r,s), u = min(r,s),
    // with the exponentials merged so that nothing cancels or overflows.
    auto shell_difference = [&](double r) {
        const double hi = std::max(r, s) / sig, lo = std::min(r, s) / sig;
        auto term = [&](double a) {
            return 0.5 * (std::exp(-a * (hi - 1 - lo)) * -std::expm1(-2 * a * lo)) / a;
        };
        return -2.0 * pot.epsilon * pot.b * sig * sig * (term(pot.m) - term(pot.n));
    };
    auto h = [&](double r) { return r * g(r) * shell_difference(r); };
    // split at the kink r = s and at the density scale
    const double c = std::min(s, 1.0 / lambda);
    double total = finite(h, 0.0, c, 1e-14);
    if (s > c) total += finite(h, c, s, 1e-14);
    total += tail(h, s, 1e-14);
    return 2.0 * M_PI / s * total;
}

double coulomb_self_integral(const std::function<double(double)>& f, double scale) {
    if (!(scale > 0)) throw InputError("radial scale must be positive");
    // Shell theorem: potential of the spherical distribution at radius r.
    auto potential = [&](double r) {
        if (r == 0) return 4.0 * M_PI * tail_inner([&](double x) { return x * f(x); }, 0.0, 1e-13);
        const double inside = finite_inner([&](double x) { return x * x * f(x); }, 0.0, r, 1e-13);
        const double outside = tail_inner([&](double x) { return x * f(x); }, r, 1e-13);
        return 4.0 * M_PI * (inside / r + outside);
    };
    auto g = [&](double r) { return r * r * f(r) * potential(r); };
    return 4.0 * M_PI * (finite(g, 0.0, scale, 1e-12) + tail(g, scale, 1e-12));
}

}  // namespace macroloc::oracle
