#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace halfwave {

/// Uniform grid t_min + k*dt, k = 0..n-1, with dt = (t_max - t_min)/(n - 1).
class Grid1D {
public:
    Grid1D() = default;

    /// Throws InvalidArgument unless n >= 2 and t_max > t_min.
    static Grid1D uniform(double t_min, double t_max, std::size_t n);

    /// Grid with spacing dt starting at t_min and n samples.
    static Grid1D with_spacing(double t_min, double dt, std::size_t n);

    double t_min() const noexcept { return t_min_; }
    double t_max() const noexcept { return t_max_; }
    std::size_t size() const noexcept { return n_; }
    double dt() const noexcept { return dt_; }
    double at(std::size_t k) const noexcept { return t_min_ + static_cast<double>(k) * dt_; }
    std::vector<double> points() const;

    bool same_as(const Grid1D& other, double rel_tol = 1e-12) const noexcept;

private:
    Grid1D(double t_min, double t_max, std::size_t n);

    double t_min_ = 0.0;
    double t_max_ = 1.0;
    std::size_t n_ = 2;
    double dt_ = 1.0;
};

/// Real samples of a function on a Grid1D.
struct SampledFunction1D {
    Grid1D grid;
    std::vector<double> values;

    SampledFunction1D() = default;
    /// Throws InvalidArgument if the size mismatches or a value is not finite.
    SampledFunction1D(Grid1D g, std::vector<double> v);

    static SampledFunction1D sample(const Grid1D& g, const std::function<double(double)>& f);
    static SampledFunction1D zeros(const Grid1D& g);

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t k) const noexcept { return values[k]; }
};

/// Space-time rectangle (x_min, x_max) x (t_min, t_max) sampled with m space
/// nodes and n time nodes, walls and t_min included.
class SpaceTimeGrid {
public:
    SpaceTimeGrid() = default;

    /// Throws InvalidArgument unless m >= 3, n >= 3 and both extents are positive.
    SpaceTimeGrid(double x_min, double x_max, std::size_t m, double t_max, std::size_t n,
                  double t_min = 0.0);

    const Grid1D& space() const noexcept { return space_; }
    const Grid1D& time() const noexcept { return time_; }
    std::size_t m() const noexcept { return space_.size(); }
    std::size_t n() const noexcept { return time_.size(); }
    double dx() const noexcept { return space_.dt(); }
    double dt() const noexcept { return time_.dt(); }
    double x(std::size_t i) const noexcept { return space_.at(i); }
    double t(std::size_t j) const noexcept { return time_.at(j); }

    bool same_as(const SpaceTimeGrid& other) const noexcept {
        return space_.same_as(other.space_) && time_.same_as(other.time_);
    }

private:
    Grid1D space_;
    Grid1D time_;
};

/// Field on a SpaceTimeGrid, stored space-major: value(i, j) = values[i*n + j],
/// so each space node owns a contiguous time series.
struct SampledField2D {
    SpaceTimeGrid grid;
    std::vector<double> values;

    SampledField2D() = default;
    SampledField2D(SpaceTimeGrid g, std::vector<double> v);

    static SampledField2D zeros(const SpaceTimeGrid& g);
    static SampledField2D sample(const SpaceTimeGrid& g,
                                 const std::function<double(double, double)>& f);

    double& operator()(std::size_t i, std::size_t j) noexcept { return values[i * grid.n() + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept {
        return values[i * grid.n() + j];
    }

    std::span<const double> row(std::size_t i) const noexcept {
        return {values.data() + i * grid.n(), grid.n()};
    }
    std::span<double> row(std::size_t i) noexcept { return {values.data() + i * grid.n(), grid.n()}; }

    /// Time series at space node i as a 1-D sampled function.
    SampledFunction1D time_series(std::size_t i) const;
    /// Values at time node j across space.
    std::vector<double> time_slice(std::size_t j) const;

    SampledField2D& operator+=(const SampledField2D& other);
    SampledField2D& operator-=(const SampledField2D& other);
    SampledField2D& operator*=(double s);
};

SampledField2D operator+(SampledField2D a, const SampledField2D& b);
SampledField2D operator-(SampledField2D a, const SampledField2D& b);

/// Trapezoid weights on n uniform nodes with spacing h.
std::vector<double> trapezoid_weights(std::size_t n, double h);

}  // namespace halfwave
