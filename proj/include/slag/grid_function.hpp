#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "slag/symmetric_matrix.hpp"

namespace slag {

using Point = std::vector<double>;

struct AxisInterval {
    double lo = 0.0;
    double hi = 0.0;
};

using Box = std::vector<AxisInterval>;

struct AnalyticEvaluators {
    std::function<double(const Point&)> value;
    std::function<Point(const Point&)> gradient;          // optional
    std::function<SymmetricMatrix(const Point&)> hessian;  // optional
};

// A scalar function sampled on a uniform box grid, values in row-major order
// (axis 0 slowest).  Closed-form evaluators, when present, are the primary
// oracle; the sampled values are checked against them at construction.
class GridFunction {
public:
    /// From raw samples.  Every axis needs at least 5 nodes and the value
    /// count must match the grid.
    GridFunction(Box box, std::vector<std::size_t> counts, std::vector<double> values);

    /// Samples an analytic function and keeps the evaluators attached.
    static GridFunction sample(Box box, std::vector<std::size_t> counts, AnalyticEvaluators analytic);

    std::size_t dim() const { return box_.size(); }
    const Box& box() const { return box_; }
    const std::vector<std::size_t>& counts() const { return counts_; }
    const std::vector<double>& spacing() const { return h_; }
    double spacing_min() const;
    const std::vector<double>& values() const { return values_; }

    std::size_t node_count() const { return values_.size(); }
    std::size_t interior_count() const;

    double coordinate(std::size_t axis, std::size_t i) const { return coords_[axis][i]; }
    const std::vector<double>& axis_coords(std::size_t axis) const { return coords_[axis]; }

    std::size_t flat_index(const std::vector<std::size_t>& multi) const;
    std::vector<std::size_t> multi_index(std::size_t flat) const;
    Point node_point(std::size_t flat) const;
    double value_at(std::size_t flat) const { return values_[flat]; }
    double value_at(const std::vector<std::size_t>& multi) const { return values_[flat_index(multi)]; }

    bool has_analytic_value() const { return static_cast<bool>(analytic_.value); }
    bool has_analytic_gradient() const { return static_cast<bool>(analytic_.gradient); }
    bool has_analytic_hessian() const { return static_cast<bool>(analytic_.hessian); }
    double analytic_value(const Point& x) const { return analytic_.value(x); }
    Point analytic_gradient(const Point& x) const { return analytic_.gradient(x); }
    SymmetricMatrix analytic_hessian(const Point& x) const { return analytic_.hessian(x); }

    bool is_interior(const std::vector<std::size_t>& multi) const;

private:
    struct SamplingTag {};
    GridFunction(SamplingTag, Box box, std::vector<std::size_t> counts);
    void init(bool expect_values);

    Box box_;
    std::vector<std::size_t> counts_;
    std::vector<double> values_;
    std::vector<double> h_;
    std::vector<std::size_t> strides_;
    std::vector<std::vector<double>> coords_;
    AnalyticEvaluators analytic_;
};

// Text format: one header line `dim h_per_axis counts_per_axis box`, then one
// value per line in row-major order.
void write_grid_text(std::ostream& os, const GridFunction& f);
GridFunction read_grid_text(std::istream& is);
void write_grid_file(const std::string& path, const GridFunction& f);
GridFunction read_grid_file(const std::string& path);

/// JSON export, intended for small grids.
std::string grid_to_json(const GridFunction& f);

}  // namespace slag
