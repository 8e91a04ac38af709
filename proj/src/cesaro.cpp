#include "nnlab/cesaro.hpp"

#include <cmath>

namespace nnlab {

std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t n_max, double rho) {
    if (rho <= 1.0) throw InvalidOrderError("geometric_checkpoints: rho must exceed 1");
    std::vector<std::uint64_t> out;
    double x = 1.0;
    while (true) {
        auto n = static_cast<std::uint64_t>(std::ceil(x));
        if (n > n_max) break;
        if (out.empty() || out.back() != n) out.push_back(n);
        x *= rho;
    }
    if (out.empty() || out.back() != n_max) out.push_back(n_max);
    return out;
}

}  // namespace nnlab
