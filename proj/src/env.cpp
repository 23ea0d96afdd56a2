#include "adiascale/env.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace adiascale {

namespace {

std::optional<int> read_positive(const char* name) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(raw, raw + std::char_traits<char>::length(raw), value);
    if (ec != std::errc() || *ptr != '\0' || value < 1) return std::nullopt;
    return value;
}

}  // namespace

int thread_count() {
    if (const auto n = read_positive("ADIASCALE_THREADS")) return *n;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::optional<int> output_precision() {
    const auto p = read_positive("ADIASCALE_PRECISION");
    if (p && *p > 17) return 17;
    return p;
}

std::string format_double(double value) {
    char buf[64];
    std::to_chars_result r;
    if (const auto p = output_precision()) {
        r = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, *p);
    } else {
        r = std::to_chars(buf, buf + sizeof buf, value);
    }
    return std::string(buf, r.ptr);
}

}  // namespace adiascale
