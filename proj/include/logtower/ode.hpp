#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "logtower/eval_at.hpp"

namespace logtower {

enum class Form {
    YppPlusF,      // Y'' + f Y = 0
    FourYppPlusF,  // 4 Y'' + f Y = 0
};

inline const char* form_name(Form f) {
    return f == Form::YppPlusF ? "Y''+fY" : "4Y''+fY";
}

struct IntegrateOptions {
    double rtol = 1e-9;
    unsigned grid_points = 512;
    double h_init_fraction = 1e-3;  // first step as a fraction of t0

    double atol() const { return rtol * 1e-3 + 1e-14; }
};

// Samples of one scalar solution channel on a shared grid.
struct Trajectory {
    std::vector<double> t;   // strictly increasing, log-spaced
    std::vector<double> y;
    std::vector<double> yp;
    double rtol = 0.0;
    std::string label;       // which f / which initial data

    double t0() const { return t.front(); }
    double tmax() const { return t.back(); }
};

inline std::vector<double> log_grid(double t0, double tmax, unsigned n) {
    if (!(t0 > 0.0) || !(tmax > t0) || n < 2)
        throw Error("log_grid: need 0 < t0 < tmax and at least two points");
    std::vector<double> g(n);
    const double r = std::log(tmax / t0) / (n - 1);
    for (unsigned i = 0; i < n; ++i) g[i] = t0 * std::exp(r * i);
    g.front() = t0;
    g.back() = tmax;
    return g;
}

namespace detail {

constexpr int kMaxDim = 4;

// Dormand-Prince 5(4) pair.
struct Dp45 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                            b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                            e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100,
                            e7 = -1.0 / 40;
};

using Rhs = std::function<void(double, const double*, double*)>;

// One adaptive step attempt from (t, u) with step h; returns the error norm
// and fills u_new. k1 is the FSAL derivative at (t, u).
inline double dp45_step(const Rhs& rhs, int dim, double t, const double* u,
                        double h, const double* k1, double* u_new,
                        double* k7, double atol, double rtol) {
    using T = Dp45;
    std::array<double, kMaxDim> k2{}, k3{}, k4{}, k5{}, k6{}, tmp{};
    auto stage = [&](double c, auto&&... terms) {
        (void)c;
        for (int i = 0; i < dim; ++i) tmp[i] = u[i] + h * (... + terms[i]);
    };
    auto scale = [&](const std::array<double, kMaxDim>& k, double a) {
        std::array<double, kMaxDim> s{};
        for (int i = 0; i < dim; ++i) s[i] = a * k[i];
        return s;
    };
    std::array<double, kMaxDim> k1a{};
    for (int i = 0; i < dim; ++i) k1a[i] = k1[i];

    stage(T::c2, scale(k1a, T::a21));
    rhs(t + T::c2 * h, tmp.data(), k2.data());
    stage(T::c3, scale(k1a, T::a31), scale(k2, T::a32));
    rhs(t + T::c3 * h, tmp.data(), k3.data());
    stage(T::c4, scale(k1a, T::a41), scale(k2, T::a42), scale(k3, T::a43));
    rhs(t + T::c4 * h, tmp.data(), k4.data());
    stage(T::c5, scale(k1a, T::a51), scale(k2, T::a52), scale(k3, T::a53),
          scale(k4, T::a54));
    rhs(t + T::c5 * h, tmp.data(), k5.data());
    stage(1.0, scale(k1a, T::a61), scale(k2, T::a62), scale(k3, T::a63),
          scale(k4, T::a64), scale(k5, T::a65));
    rhs(t + h, tmp.data(), k6.data());
    for (int i = 0; i < dim; ++i)
        u_new[i] = u[i] + h * (T::b1 * k1a[i] + T::b3 * k3[i] + T::b4 * k4[i] +
                               T::b5 * k5[i] + T::b6 * k6[i]);
    rhs(t + h, u_new, k7);

    double err2 = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double e = h * (T::e1 * k1a[i] + T::e3 * k3[i] + T::e4 * k4[i] +
                              T::e5 * k5[i] + T::e6 * k6[i] + T::e7 * k7[i]);
        const double sc =
            atol + rtol * std::max(std::abs(u[i]), std::abs(u_new[i]));
        err2 += (e / sc) * (e / sc);
    }
    return std::sqrt(err2 / dim);
}

// Integrate rhs over [grid.front(), grid.back()], landing exactly on every
// grid node; out[j] receives the state at grid[j].
inline void rk45_on_grid(const Rhs& rhs, int dim, const double* u0,
                         const std::vector<double>& grid,
                         const IntegrateOptions& opts,
                         std::vector<std::array<double, kMaxDim>>& out) {
    const double atol = opts.atol(), rtol = opts.rtol;
    std::array<double, kMaxDim> u{}, u_new{}, k1{}, k7{};
    for (int i = 0; i < dim; ++i) u[i] = u0[i];
    out.assign(grid.size(), {});
    out[0] = u;

    double t = grid.front();
    double h = grid.front() * opts.h_init_fraction;
    rhs(t, u.data(), k1.data());
    for (std::size_t j = 1; j < grid.size(); ++j) {
        const double target = grid[j];
        while (t < target) {
            bool clipped = false;
            if (t + h >= target) {
                h = target - t;
                clipped = true;
            }
            if (h < t * 1e-14)
                throw StepSizeUnderflow("rk45: step size underflow at t = " +
                                        std::to_string(t));
            const double err = dp45_step(rhs, dim, t, u.data(), h, k1.data(),
                                         u_new.data(), k7.data(), atol, rtol);
            if (err <= 1.0) {
                t = clipped ? target : t + h;
                u = u_new;
                k1 = k7;
            }
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::min(5.0, std::max(0.2, fac));
        }
        out[j] = u;
    }
}

}  // namespace detail

// Integrate the second-order linear equation given by form/f from data
// (y0, yp0) at grid.front(), sampling on the log-spaced grid.
inline Trajectory integrate(const std::function<double(double)>& f, Form form,
                            double t0, double tmax, double y0, double yp0,
                            const IntegrateOptions& opts = {},
                            const std::string& label = "") {
    const double scale = form == Form::FourYppPlusF ? 0.25 : 1.0;
    detail::Rhs rhs = [&f, scale](double t, const double* u, double* du) {
        du[0] = u[1];
        du[1] = -scale * f(t) * u[0];
    };
    auto grid = log_grid(t0, tmax, opts.grid_points);
    std::vector<std::array<double, detail::kMaxDim>> states;
    const double u0[2] = {y0, yp0};
    detail::rk45_on_grid(rhs, 2, u0, grid, opts, states);
    Trajectory tr;
    tr.t = std::move(grid);
    tr.y.reserve(states.size());
    tr.yp.reserve(states.size());
    for (const auto& s : states) {
        tr.y.push_back(s[0]);
        tr.yp.push_back(s[1]);
    }
    tr.rtol = opts.rtol;
    tr.label = label;
    return tr;
}

inline Trajectory integrate(const FieldElem& f, Form form, double t0,
                            double tmax, double y0, double yp0,
                            const IntegrateOptions& opts = {},
                            const std::string& label = "") {
    return integrate([&f](double t) { return eval_at(f, t); }, form, t0, tmax,
                     y0, yp0, opts, label);
}

// Cumulative integral q(t) = int_{t0}^t integrand, sampled on the grid, by
// the same adaptive scheme (one-dimensional system).
inline std::vector<double> quadrature_on_grid(
    const std::function<double(double)>& integrand,
    const std::vector<double>& grid, const IntegrateOptions& opts = {}) {
    detail::Rhs rhs = [&integrand](double t, const double*, double* du) {
        du[0] = integrand(t);
    };
    std::vector<std::array<double, detail::kMaxDim>> states;
    const double u0[1] = {0.0};
    detail::rk45_on_grid(rhs, 1, u0, grid, opts, states);
    std::vector<double> q(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) q[i] = states[i][0];
    return q;
}

}  // namespace logtower
