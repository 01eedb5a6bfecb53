#include "prionkit/quadrature.hpp"

// Constants live in the header; this TU anchors the definitions pre-C++17
// style linkage expectations of some linkers.
namespace prionkit {
constexpr std::array<double, 8> GaussLegendre16::nodes;
constexpr std::array<double, 8> GaussLegendre16::weights;
}  // namespace prionkit
