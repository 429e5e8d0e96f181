#include "nds/kernels.hpp"

namespace nds {

bool any_within_scalar(LatticeRows acc, std::size_t begin, std::size_t end, const std::int64_t* cand,
                       std::int64_t eps, std::int64_t period) {
    for (std::size_t j = begin; j < end; ++j) {
        bool near = true;
        for (std::size_t i = 0; i < acc.steps && near; ++i) {
            std::int64_t d = acc.rows[i][j] - cand[i];
            if (d < 0) d = -d;
            if (period > 0 && period - d < d) d = period - d;
            near = d <= eps;
        }
        if (near) return true;
    }
    return false;
}

}  // namespace nds
