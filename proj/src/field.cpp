#include "adaptfv/field.hpp"

#include <cmath>
#include <string>

#include "adaptfv/error.hpp"

namespace adaptfv {

std::string_view to_string(Frame frame)
{
    return frame == Frame::physical ? "physical" : "reference";
}

CellField::CellField(std::vector<double> values, Frame frame)
    : values_(std::move(values)), frame_(frame)
{
}

bool CellField::all_finite() const
{
    for (double x : values_) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

void require_finite(std::span<const double> values, std::string_view what)
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw NumericError(std::string(what) + ": non-finite value at index " + std::to_string(i));
        }
    }
}

} // namespace adaptfv
