#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace adaptfv {

/// Which mesh a set of cell values lives on: the adaptive physical mesh (u)
/// or the fixed uniform reference mesh (v).
enum class Frame { physical, reference };

std::string_view to_string(Frame frame);

/// Per-cell averages tagged with their frame.
class CellField {
public:
    CellField() = default;
    explicit CellField(std::vector<double> values, Frame frame = Frame::physical);

    std::size_t size() const { return values_.size(); }
    Frame frame() const { return frame_; }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    bool all_finite() const;

    friend bool operator==(const CellField&, const CellField&) = default;

private:
    std::vector<double> values_;
    Frame frame_ = Frame::physical;
};

// Throws NumericError naming `what` when any value is NaN or infinite.
void require_finite(std::span<const double> values, std::string_view what);

inline std::size_t wrap(std::ptrdiff_t i, std::size_t n)
{
    const auto m = static_cast<std::ptrdiff_t>(n);
    return static_cast<std::size_t>(((i % m) + m) % m);
}

} // namespace adaptfv
