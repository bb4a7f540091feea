#include "mdpc/rng.hpp"

#include <algorithm>

#include "mdpc/errors.hpp"

namespace mdpc {

std::vector<std::uint32_t> Rng::subset(std::uint32_t n, std::uint32_t k) {
    if (k > n) throw ValidationError("subset: k > n");
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    for (std::uint32_t i = 0; i < k; ++i) {
        std::uint32_t j = i + static_cast<std::uint32_t>(below(n - i));
        std::swap(pool[i], pool[j]);
    }
    std::vector<std::uint32_t> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace mdpc
