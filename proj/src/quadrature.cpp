#include "holocurve/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace holocurve {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double circle_sum(const std::function<double(double)>& f, int n, double offset) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        double v = f(offset + kTwoPi * j / n);
        if (!std::isfinite(v))
            throw NumericError("non-finite-sample",
                               "non-finite integrand sample on the circle");
        s += v;
    }
    return s;
}

}  // namespace

double circle_mean(const std::function<double(double)>& f, double tol, int n0,
                   int nmax) {
    int n = n0;
    double sum = circle_sum(f, n, 0.0);
    double mean = sum / n, prev = mean;
    while (n < nmax) {
        // midpoints of the current grid refine it to 2n nodes
        double sum2 = sum + circle_sum(f, n, kTwoPi / (2.0 * n));
        n *= 2;
        double mean2 = sum2 / n;
        if (std::abs(mean2 - mean) < tol) return mean2;
        sum = sum2;
        prev = mean;
        mean = mean2;
    }
    throw QuadratureError(mean, prev, "circle mean did not converge to " +
                                          std::to_string(tol));
}

double segment_integral(const std::function<double(double)>& f, double a,
                        double b, double tol, int n0, int nmax) {
    if (!(b > a)) return 0.0;
    double h = (b - a) / n0;
    double t = 0.5 * (f(a) + f(b));
    for (int j = 1; j < n0; ++j) t += f(a + j * h);
    t *= h;
    int n = n0;
    double prev_t = t, richardson = t;
    bool have_r = false;
    while (n < nmax) {
        double mid = 0.0;
        for (int j = 0; j < n; ++j) mid += f(a + (j + 0.5) * h);
        n *= 2;
        h *= 0.5;
        double t2 = 0.5 * prev_t + h * mid;
        double r2 = t2 + (t2 - prev_t) / 3.0;
        if (have_r && std::abs(r2 - richardson) < tol) return r2;
        prev_t = t2;
        richardson = r2;
        have_r = true;
    }
    throw QuadratureError(richardson, prev_t,
                          "segment integral did not converge");
}

const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::pair<double, double>> nw(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev estimate of the i-th root
        double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        nw[i] = {-x, w};
        nw[n - 1 - i] = {x, w};
    }
    return cache.emplace(n, std::move(nw)).first->second;
}

namespace {

double annulus_pass(const std::function<double(cplx)>& g, cplx center,
                    double r0, double r1, int nr, int na) {
    const auto& gl = gauss_legendre(nr);
    double total = 0.0;
    for (const auto& [x, w] : gl) {
        double s = 0.5 * (r0 + r1) + 0.5 * (r1 - r0) * x;
        double ring = 0.0;
        for (int j = 0; j < na; ++j) {
            double th = kTwoPi * (j + 0.5) / na;
            double v = g(center + std::polar(s, th));
            if (!std::isfinite(v))
                throw NumericError("non-finite-sample",
                                   "non-finite integrand sample in annulus");
            ring += v;
        }
        total += w * 0.5 * (r1 - r0) * s * ring * (kTwoPi / na);
    }
    return total;
}

}  // namespace

double annulus_integral(const std::function<double(cplx)>& g, cplx center,
                        double r0, double r1, double tol, int nr0, int na0,
                        int nrmax, int namax) {
    if (!(r1 > r0) || r0 < 0.0)
        throw ValidationError("invalid-point", "bad annulus radii");
    int nr = nr0, na = na0;
    double prev2 = 0.0;
    double prev = annulus_pass(g, center, r0, r1, nr, na);
    while (nr < nrmax && na < namax) {
        nr *= 2;
        na *= 2;
        double cur = annulus_pass(g, center, r0, r1, nr, na);
        if (std::abs(cur - prev) < tol) return cur;
        prev2 = prev;
        prev = cur;
    }
    throw QuadratureError(prev, prev2, "annulus integral did not converge");
}

}  // namespace holocurve
