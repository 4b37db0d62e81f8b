#include "residua/errors.hpp"

#include <cstdlib>

namespace residua {

namespace {

std::size_t env_limit(std::size_t fallback) {
    const char* v = std::getenv("RESIDUA_LIMIT");
    if (v == nullptr || *v == '\0') return fallback;
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0' || parsed == 0) return fallback;
    return static_cast<std::size_t>(parsed);
}

} // namespace

std::size_t trace_limit() {
    static const std::size_t limit = env_limit(1000000);
    return limit;
}

std::size_t product_limit() {
    static const std::size_t limit = env_limit(10000000);
    return limit;
}

} // namespace residua
