#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bavt {

// Row-major H x W field of doubles. Used for intensity images, soft
// predictions, signed distance maps and displacement fields; ops that
// require unit-interval values validate at their boundary.
struct Grid {
    int h = 0;
    int w = 0;
    std::vector<double> v;

    Grid() = default;
    Grid(int height, int width, double fill = 0.0)
        : h(height), w(width), v(static_cast<size_t>(height) * width, fill) {
        if (height <= 0 || width <= 0)
            throw std::invalid_argument("Grid: dimensions must be positive");
    }

    double& at(int r, int c) { return v[static_cast<size_t>(r) * w + c]; }
    double at(int r, int c) const { return v[static_cast<size_t>(r) * w + c]; }
    size_t size() const { return v.size(); }
    bool same_shape(const Grid& o) const { return h == o.h && w == o.w; }

    bool in_unit_interval() const {
        for (double x : v)
            if (!(x >= 0.0 && x <= 1.0)) return false;
        return true;
    }
};

// Row-major binary mask, values exactly 0 or 1.
struct Mask {
    int h = 0;
    int w = 0;
    std::vector<uint8_t> v;

    Mask() = default;
    Mask(int height, int width, uint8_t fill = 0)
        : h(height), w(width), v(static_cast<size_t>(height) * width, fill) {
        if (height <= 0 || width <= 0)
            throw std::invalid_argument("Mask: dimensions must be positive");
    }

    uint8_t& at(int r, int c) { return v[static_cast<size_t>(r) * w + c]; }
    uint8_t at(int r, int c) const { return v[static_cast<size_t>(r) * w + c]; }
    size_t size() const { return v.size(); }
    bool same_shape(const Mask& o) const { return h == o.h && w == o.w; }
    bool same_shape(const Grid& o) const { return h == o.h && w == o.w; }

    bool is_binary() const {
        for (uint8_t x : v)
            if (x > 1) return false;
        return true;
    }

    size_t foreground_count() const {
        size_t n = 0;
        for (uint8_t x : v) n += x;
        return n;
    }
};

inline void require_same_shape(const Grid& a, const Grid& b, const char* where) {
    if (!a.same_shape(b))
        throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

inline void require_same_shape(const Grid& a, const Mask& b, const char* where) {
    if (!(a.h == b.h && a.w == b.w))
        throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

}  // namespace bavt
