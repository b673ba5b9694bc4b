#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ousemi/linalg.hpp"

namespace ousemi {

/// Dense samples of a function on an axis-aligned box with uniform spacing
/// per axis. Values are stored row-major with the last axis fastest. At most
/// four axes; the time stepper additionally restricts itself to three.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(std::vector<double> lo, std::vector<double> hi, std::vector<int> counts);

    static GridFunction from_evaluator(const std::vector<double>& lo,
                                       const std::vector<double>& hi,
                                       const std::vector<int>& counts,
                                       const std::function<double(const Vector&)>& f);

    int dim() const { return static_cast<int>(counts_.size()); }
    const std::vector<int>& counts() const { return counts_; }
    double lo(int axis) const { return lo_[static_cast<std::size_t>(axis)]; }
    double hi(int axis) const { return hi_[static_cast<std::size_t>(axis)]; }
    double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
    std::size_t size() const { return values_.size(); }

    double& operator[](std::size_t flat) { return values_[flat]; }
    double operator[](std::size_t flat) const { return values_[flat]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    std::size_t flat_index(const std::vector<int>& idx) const;
    std::vector<int> unflatten(std::size_t flat) const;
    Vector coords(const std::vector<int>& idx) const;
    Vector coords_flat(std::size_t flat) const;

    double max_abs() const;
    double min_value() const;
    bool all_finite() const;

    /// Largest |difference| against another grid over nodes inside the given
    /// sub-box (inclusive bounds per axis).
    double sup_diff_within(const GridFunction& other, const std::vector<double>& box_lo,
                           const std::vector<double>& box_hi) const;

    void save_binary(const std::string& path) const;
    static GridFunction load_binary(const std::string& path);
    void save_csv(const std::string& path) const;

private:
    std::vector<double> lo_, hi_, spacing_;
    std::vector<int> counts_;
    std::vector<double> values_;
};

}  // namespace ousemi
