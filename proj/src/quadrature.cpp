#include "atomswap/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace atomswap::quadrature {
namespace {

// Kronrod nodes on [0, 1) of the symmetric 15-point rule; odd indices are the Gauss-7 nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    Complex value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

// QUADPACK error heuristic: the raw Kronrod-Gauss difference overstates the
// error of a resolved piece by orders of magnitude.
double scaled_error(double raw, double spread) {
    if (spread == 0 || raw == 0) return raw;
    return spread * std::min(1.0, std::pow(200 * raw / spread, 1.5));
}

Segment gauss_kronrod(const std::function<Complex(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    std::array<Complex, 15> values;
    values[7] = f(center);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        values[i] = f(center - dx);
        values[14 - i] = f(center + dx);
    }
    auto weight = [](int i) { return kKronrodWeights[i < 8 ? i : 14 - i]; };

    Complex kronrod{}, gauss{};
    double abs_sum = 0;
    for (int i = 0; i < 15; ++i) {
        kronrod += weight(i) * values[i];
        abs_sum += weight(i) * std::abs(values[i]);
        const int k = i < 8 ? i : 14 - i;
        if (k % 2 == 1) gauss += kGaussWeights[k / 2] * values[i];
    }
    const Complex mean = 0.5 * kronrod;
    double spread = 0;
    for (int i = 0; i < 15; ++i) spread += weight(i) * std::abs(values[i] - mean);

    kronrod *= half;
    gauss *= half;
    abs_sum *= std::abs(half);
    spread *= std::abs(half);

    const double roundoff = 50 * std::numeric_limits<double>::epsilon() * abs_sum;
    return {lo, hi, kronrod, std::max(scaled_error(std::abs(kronrod - gauss), spread), roundoff)};
}

}  // namespace

Result integrate(const std::function<Complex(double)>& f, double lo, double hi, const Tolerance& tol) {
    Result out;
    if (lo == hi) {
        out.converged = true;
        return out;
    }

    std::priority_queue<Segment> heap;
    Complex total{};
    double error = 0;

    // Seed with a few equal pieces so a single coarse rule cannot hide oscillation.
    constexpr int kSeeds = 4;
    const double step = (hi - lo) / kSeeds;
    for (int i = 0; i < kSeeds; ++i) {
        const double a = lo + i * step;
        const double b = (i + 1 == kSeeds) ? hi : a + step;
        Segment s = gauss_kronrod(f, a, b);
        total += s.value;
        error += s.error;
        heap.push(s);
    }
    out.evaluations = 15L * kSeeds;

    auto tolerance = [&] { return std::max(tol.absolute, tol.relative * std::abs(total)); };

    while (error > tolerance() && static_cast<int>(heap.size()) < tol.max_intervals) {
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            heap.push(worst);
            break;
        }
        const Segment left = gauss_kronrod(f, worst.lo, mid);
        const Segment right = gauss_kronrod(f, mid, worst.hi);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the leaves; the running total drifts by roundoff.
    total = {};
    error = 0;
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.error_estimate = error;
    out.converged = error <= std::max(tol.absolute, tol.relative * std::abs(total));
    return out;
}

namespace {

struct Cell {
    double x0, x1, y0, y1;
    Complex value;
    double error;
    bool split_x;

    bool operator<(const Cell& other) const { return error < other.error; }
};

// Tensor Kronrod-15 rule on a rectangle. The error along each axis comes from
// swapping that axis to Gauss-7; the cell is later split along the worse one.
Cell tensor_gauss_kronrod(const std::function<Complex(double, double)>& f, double x0, double x1, double y0,
                          double y1) {
    const double cx = 0.5 * (x0 + x1), hx = 0.5 * (x1 - x0);
    const double cy = 0.5 * (y0 + y1), hy = 0.5 * (y1 - y0);

    std::array<double, 15> offset{}, kronrod{}, gauss{};
    for (int i = 0; i < 15; ++i) {
        const int k = i < 8 ? i : 14 - i;
        offset[i] = (i < 7 ? -1.0 : 1.0) * kNodes[k];
        kronrod[i] = kKronrodWeights[k];
        gauss[i] = k % 2 == 1 ? kGaussWeights[k / 2] : 0.0;
    }

    std::array<std::array<Complex, 15>, 15> values;
    Complex k_sum{}, gx_sum{}, gy_sum{};
    double abs_sum = 0;
    for (int i = 0; i < 15; ++i) {
        const double x = cx + hx * offset[i];
        for (int j = 0; j < 15; ++j) {
            const Complex v = values[i][j] = f(x, cy + hy * offset[j]);
            k_sum += kronrod[i] * kronrod[j] * v;
            gx_sum += gauss[i] * kronrod[j] * v;
            gy_sum += kronrod[i] * gauss[j] * v;
            abs_sum += kronrod[i] * kronrod[j] * std::abs(v);
        }
    }
    const double area = hx * hy;
    const Complex value = area * k_sum;
    const Complex mean = 0.25 * k_sum;
    double spread = 0;
    for (int i = 0; i < 15; ++i)
        for (int j = 0; j < 15; ++j)
            spread += kronrod[i] * kronrod[j] * std::abs(values[i][j] - mean);
    spread *= area;
    const double ex = scaled_error(area * std::abs(k_sum - gx_sum), spread);
    const double ey = scaled_error(area * std::abs(k_sum - gy_sum), spread);
    const double roundoff = 50 * std::numeric_limits<double>::epsilon() * area * abs_sum;
    return {x0, x1, y0, y1, value, std::max(ex + ey, roundoff), ex >= ey};
}

}  // namespace

Result integrate_ordered_triangle(const std::function<Complex(double, double)>& f, double u, const Tolerance& tol) {
    Result out;
    if (u == 0.0) {
        out.converged = true;
        return out;
    }

    // s2 = s1 t maps the triangle onto [0, u] x [0, 1] with Jacobian s1.
    auto mapped = [&](double s1, double t) { return s1 * f(s1, s1 * t); };

    std::priority_queue<Cell> heap;
    Complex total{};
    double error = 0;
    auto push = [&](const Cell& c) {
        total += c.value;
        error += c.error;
        heap.push(c);
        out.evaluations += 225;
    };

    constexpr int kSeeds = 4;
    const double step = u / kSeeds;
    for (int i = 0; i < kSeeds; ++i)
        push(tensor_gauss_kronrod(mapped, i * step, i + 1 == kSeeds ? u : (i + 1) * step, 0.0, 1.0));

    auto tolerance = [&] { return std::max(tol.absolute, tol.relative * std::abs(total)); };

    while (error > tolerance() && static_cast<int>(heap.size()) < tol.max_intervals) {
        const Cell worst = heap.top();
        heap.pop();
        total -= worst.value;
        error -= worst.error;
        const double mx = 0.5 * (worst.x0 + worst.x1);
        const double my = 0.5 * (worst.y0 + worst.y1);
        if (worst.split_x ? (mx <= worst.x0 || mx >= worst.x1) : (my <= worst.y0 || my >= worst.y1)) {
            push(worst);
            break;
        }
        if (worst.split_x) {
            push(tensor_gauss_kronrod(mapped, worst.x0, mx, worst.y0, worst.y1));
            push(tensor_gauss_kronrod(mapped, mx, worst.x1, worst.y0, worst.y1));
        } else {
            push(tensor_gauss_kronrod(mapped, worst.x0, worst.x1, worst.y0, my));
            push(tensor_gauss_kronrod(mapped, worst.x0, worst.x1, my, worst.y1));
        }
    }

    total = {};
    error = 0;
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.error_estimate = error;
    out.converged = error <= std::max(tol.absolute, tol.relative * std::abs(total));
    return out;
}

}  // namespace atomswap::quadrature
