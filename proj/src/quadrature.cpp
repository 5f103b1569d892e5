#include "macroloc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "macroloc/errors.hpp"

namespace macroloc {

namespace {

using Real = long double;

// QUADPACK qk21 abscissae and weights.
constexpr Real kXgk[11] = {
    0.995657163025808080735527280689003L, 0.973906528517171720077964012084452L,
    0.930157491355708226001207180059508L, 0.865063366688984510732096688423493L,
    0.780817726586416897063717578345042L, 0.679409568299024406234327365114874L,
    0.562757134668604683339000099272694L, 0.433395394129247190799265943165784L,
    0.294392862701460198131126603103866L, 0.148874338981631210884826001129720L,
    0.000000000000000000000000000000000L};
constexpr Real kWgk[11] = {
    0.011694638867371874278064396062192L, 0.032558162307964727478818972459390L,
    0.054755896574351996031381300244580L, 0.075039674810919952767043140916190L,
    0.093125454583697605535065465083366L, 0.109387158802297641899210590325805L,
    0.123491976262065851077208980626810L, 0.134709217311473325928054001771707L,
    0.142775938577060080797094273138717L, 0.147739104901338491374841515972068L,
    0.149445554002916905664936468389821L};
// Gauss 10-point weights, paired with kXgk[1], kXgk[3], ..., kXgk[9].
constexpr Real kWg[5] = {
    0.066671344308688137593568809893332L, 0.149451349150580593145776339657697L,
    0.219086362515982043995534934228163L, 0.269266719309996355091049226044390L,
    0.295524224714752870173892994651338L};

constexpr Real kEps = std::numeric_limits<Real>::epsilon();
constexpr Real kTiny = std::numeric_limits<Real>::min();

struct Panel {
    Real a, b;
    Real value;
    Real error;
    Real abs_value;
    Real floor;  // roundoff floor of the error estimate
};

Panel gk21(const Integrand& f, Real a, Real b) {
    const Real center = 0.5L * (a + b);
    const Real half = 0.5L * (b - a);
    const Real fc = f(center);
    Real resk = fc * kWgk[10];
    Real resg = 0;
    Real resabs = std::abs(resk);
    Real fv1[10], fv2[10];
    for (int j = 0; j < 10; ++j) {
        const Real dx = half * kXgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const Real sum = fv1[j] + fv2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const Real mean = 0.5L * resk;
    Real resasc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    Panel p{a, b, resk * half, 0, resabs * std::abs(half), 0};
    resasc *= std::abs(half);
    Real err = std::abs((resk - resg) * half);
    if (resasc != 0 && err != 0) err = resasc * std::min<Real>(1, std::pow(200 * err / resasc, 1.5L));
    p.floor = 50 * kEps * p.abs_value;
    if (p.abs_value > kTiny / (50 * kEps)) err = std::max(p.floor, err);
    p.error = err;
    return p;
}

struct ByError {
    bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

}  // namespace

QuadratureResult integrate_gk(const Integrand& f, double a, double b, const QuadratureOptions& opts) {
    QuadratureResult r;
    std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
    heap.push(gk21(f, a, b));
    r.evaluations = 21;

    Real value = heap.top().value;
    Real error = heap.top().error;
    Real floor = heap.top().floor;
    auto target = [&] { return std::max<Real>(opts.abs_tol, opts.rel_tol * std::abs(value)); };

    while (error > target()) {
        // What is left is rounding noise; no split can lower the estimate.
        if (error <= 2 * floor) {
            r.roundoff_limited = true;
            break;
        }
        if (r.evaluations + 42 > opts.max_evaluations) break;
        const Panel worst = heap.top();
        const Real mid = 0.5L * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            r.roundoff_limited = true;
            break;
        }
        heap.pop();
        const Panel left = gk21(f, worst.a, mid);
        const Panel right = gk21(f, mid, worst.b);
        r.evaluations += 42;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        floor += left.floor + right.floor - worst.floor;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum in position order so the result does not carry the drift of the
    // running updates and is independent of heap internals.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    Real v = 0, e = 0, av = 0, fl = 0;
    for (const Panel& p : panels) {
        v += p.value;
        e += p.error;
        av += p.abs_value;
        fl += p.floor;
    }
    r.value = static_cast<double>(v);
    r.error = static_cast<double>(e);
    r.abs_integral = static_cast<double>(av);
    r.intervals = panels.size();
    const Real tol = std::max<Real>(opts.abs_tol, opts.rel_tol * std::abs(v));
    if (!r.roundoff_limited && e > tol && e <= 2 * fl) r.roundoff_limited = true;
    r.converged = e <= tol || r.roundoff_limited;
    return r;
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double scale, const QuadratureOptions& opts) {
    if (!(scale > 0)) throw InputError("semi-infinite map scale must be positive");
    const Real sc = scale;
    auto g = [&](Real t) -> Real {
        const Real u = 1 - t;
        const Real v = f(sc * t / u);
        return v == 0 ? 0 : v * sc / (u * u);
    };
    return integrate_gk(g, 0.0, 1.0, opts);
}

namespace {

// Wynn epsilon table over partial sums; returns the latest diagonal estimate
// and an error proxy from the last two estimates.
class EpsilonExtrapolator {
public:
    void add(Real partial_sum) {
        sums_.push_back(partial_sum);
        const std::size_t n = sums_.size();
        // rebuild the table: small sizes, simple and exact in behaviour
        std::vector<Real> prev(n, 0), cur(sums_.begin(), sums_.end());
        Real best = cur.back();
        for (std::size_t col = 1; col < n; ++col) {
            std::vector<Real> next(n - col);
            bool ok = true;
            for (std::size_t i = 0; i + col < n; ++i) {
                const Real diff = cur[i + 1] - cur[i];
                if (diff == 0) {
                    ok = false;
                    break;
                }
                next[i] = prev[i + 1] + 1 / diff;
            }
            if (!ok) break;
            prev = std::move(cur);
            cur = std::move(next);
            if (col % 2 == 0) best = cur.back();
        }
        estimates_.push_back(best);
    }
    Real estimate() const { return estimates_.back(); }
    Real change() const {
        const std::size_t n = estimates_.size();
        if (n < 3) return std::numeric_limits<Real>::infinity();
        return std::abs(estimates_[n - 1] - estimates_[n - 2]) + std::abs(estimates_[n - 2] - estimates_[n - 3]);
    }

private:
    std::vector<Real> sums_;
    std::vector<Real> estimates_;
};

constexpr int kMaxCycles = 400;
constexpr std::size_t kWindow = 24;  // partial sums kept for extrapolation

}  // namespace

QuadratureResult integrate_oscillatory_tail(const Integrand& f, double start, double half_period,
                                            const QuadratureOptions& opts) {
    if (!(half_period > 0)) throw InputError("half period must be positive");
    QuadratureResult r;
    QuadratureOptions cycle_opts = opts;
    cycle_opts.rel_tol = std::min(opts.rel_tol, 1e-13);
    cycle_opts.max_evaluations = 21 * 64;

    Real sum = 0, abs_sum = 0, err_sum = 0;
    std::vector<Real> window;
    for (int j = 0; j < kMaxCycles; ++j) {
        const double a = start + j * half_period;
        const QuadratureResult c = integrate_gk(f, a, a + half_period, cycle_opts);
        r.evaluations += c.evaluations;
        r.intervals += c.intervals;
        sum += c.value;
        abs_sum += c.abs_integral;
        err_sum += c.error;
        window.push_back(sum);
        if (window.size() > kWindow) window.erase(window.begin());

        const Real tol = std::max<Real>(opts.abs_tol, opts.rel_tol * std::abs(sum));
        // terms already below the target: plain summation has converged
        if (j >= 2 && std::abs(c.value) + c.abs_integral <= 0.1L * tol) {
            r.value = static_cast<double>(sum);
            r.error = static_cast<double>(err_sum + std::abs(c.value));
            r.abs_integral = static_cast<double>(abs_sum);
            r.converged = true;
            return r;
        }
        if (window.size() >= 6) {
            EpsilonExtrapolator eps;
            for (Real w : window) eps.add(w);
            const Real change = eps.change();
            const Real noise = 50 * kEps * abs_sum + err_sum;
            if (change <= std::max(tol, noise)) {
                r.value = static_cast<double>(eps.estimate());
                r.error = static_cast<double>(std::max(change, err_sum));
                r.abs_integral = static_cast<double>(abs_sum);
                r.roundoff_limited = change > tol;
                r.converged = true;
                return r;
            }
        }
    }
    r.value = static_cast<double>(sum);
    r.error = static_cast<double>(std::abs(window.back() - window.front()));
    r.abs_integral = static_cast<double>(abs_sum);
    return r;
}

double require_converged(const QuadratureResult& r, const char* what) {
    if (!r.converged) {
        std::ostringstream os;
        os.precision(6);
        os << what << ": quadrature did not converge (value " << r.value << ", error estimate " << r.error
           << " after " << r.evaluations << " evaluations)";
        throw ConvergenceError(os.str());
    }
    return r.value;
}

}  // namespace macroloc
