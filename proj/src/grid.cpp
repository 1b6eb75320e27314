#include "halfwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "halfwave/error.hpp"

namespace halfwave {

Grid1D::Grid1D(double t_min, double t_max, std::size_t n)
    : t_min_(t_min), t_max_(t_max), n_(n), dt_((t_max - t_min) / static_cast<double>(n - 1)) {}

Grid1D Grid1D::uniform(double t_min, double t_max, std::size_t n) {
    if (n < 2) {
        throw InvalidArgument("Grid1D needs at least 2 samples, got " + std::to_string(n));
    }
    if (!(t_max > t_min) || !std::isfinite(t_min) || !std::isfinite(t_max)) {
        throw InvalidArgument("Grid1D needs finite t_min < t_max");
    }
    return Grid1D(t_min, t_max, n);
}

Grid1D Grid1D::with_spacing(double t_min, double dt, std::size_t n) {
    if (!(dt > 0.0)) {
        throw InvalidArgument("Grid1D spacing must be positive");
    }
    if (n < 2) {
        throw InvalidArgument("Grid1D needs at least 2 samples, got " + std::to_string(n));
    }
    Grid1D g(t_min, t_min + dt * static_cast<double>(n - 1), n);
    g.dt_ = dt;
    return g;
}

std::vector<double> Grid1D::points() const {
    std::vector<double> p(n_);
    for (std::size_t k = 0; k < n_; ++k) p[k] = at(k);
    return p;
}

bool Grid1D::same_as(const Grid1D& other, double rel_tol) const noexcept {
    if (n_ != other.n_) return false;
    const double scale = std::max(std::abs(t_max_ - t_min_), 1e-300);
    return std::abs(t_min_ - other.t_min_) <= rel_tol * scale &&
           std::abs(t_max_ - other.t_max_) <= rel_tol * scale;
}

SampledFunction1D::SampledFunction1D(Grid1D g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) {
        throw InvalidArgument("SampledFunction1D: " + std::to_string(values.size()) +
                              " values for a grid of " + std::to_string(grid.size()));
    }
    for (double x : values) {
        if (!std::isfinite(x)) throw InvalidArgument("SampledFunction1D: non-finite value");
    }
}

SampledFunction1D SampledFunction1D::sample(const Grid1D& g,
                                            const std::function<double(double)>& f) {
    std::vector<double> v(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) v[k] = f(g.at(k));
    return {g, std::move(v)};
}

SampledFunction1D SampledFunction1D::zeros(const Grid1D& g) {
    return {g, std::vector<double>(g.size(), 0.0)};
}

SpaceTimeGrid::SpaceTimeGrid(double x_min, double x_max, std::size_t m, double t_max,
                             std::size_t n, double t_min) {
    if (m < 3 || n < 3) {
        throw InvalidArgument("SpaceTimeGrid needs m >= 3 and n >= 3");
    }
    space_ = Grid1D::uniform(x_min, x_max, m);
    time_ = Grid1D::uniform(t_min, t_max, n);
}

SampledField2D::SampledField2D(SpaceTimeGrid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.m() * grid.n()) {
        throw InvalidArgument("SampledField2D: value count does not match the grid");
    }
    for (double x : values) {
        if (!std::isfinite(x)) throw InvalidArgument("SampledField2D: non-finite value");
    }
}

SampledField2D SampledField2D::zeros(const SpaceTimeGrid& g) {
    return {g, std::vector<double>(g.m() * g.n(), 0.0)};
}

SampledField2D SampledField2D::sample(const SpaceTimeGrid& g,
                                      const std::function<double(double, double)>& f) {
    std::vector<double> v(g.m() * g.n());
    for (std::size_t i = 0; i < g.m(); ++i) {
        for (std::size_t j = 0; j < g.n(); ++j) v[i * g.n() + j] = f(g.x(i), g.t(j));
    }
    return {g, std::move(v)};
}

SampledFunction1D SampledField2D::time_series(std::size_t i) const {
    auto r = row(i);
    return {grid.time(), std::vector<double>(r.begin(), r.end())};
}

std::vector<double> SampledField2D::time_slice(std::size_t j) const {
    std::vector<double> s(grid.m());
    for (std::size_t i = 0; i < grid.m(); ++i) s[i] = (*this)(i, j);
    return s;
}

namespace {
void require_same_grid(const SampledField2D& a, const SampledField2D& b) {
    if (!a.grid.same_as(b.grid)) throw InvalidArgument("fields live on different grids");
}
}  // namespace

SampledField2D& SampledField2D::operator+=(const SampledField2D& other) {
    require_same_grid(*this, other);
    for (std::size_t k = 0; k < values.size(); ++k) values[k] += other.values[k];
    return *this;
}

SampledField2D& SampledField2D::operator-=(const SampledField2D& other) {
    require_same_grid(*this, other);
    for (std::size_t k = 0; k < values.size(); ++k) values[k] -= other.values[k];
    return *this;
}

SampledField2D& SampledField2D::operator*=(double s) {
    for (double& v : values) v *= s;
    return *this;
}

SampledField2D operator+(SampledField2D a, const SampledField2D& b) { return a += b; }
SampledField2D operator-(SampledField2D a, const SampledField2D& b) { return a -= b; }

std::vector<double> trapezoid_weights(std::size_t n, double h) {
    std::vector<double> w(n, h);
    if (n > 0) {
        w.front() = 0.5 * h;
        w.back() = 0.5 * h;
    }
    return w;
}

}  // namespace halfwave
