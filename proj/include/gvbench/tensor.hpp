#pragma once

#include <cstddef>
#include <vector>

#include "gvbench/common.hpp"

namespace gvbench {

// Dense row-major tensor. S is float or double; training runs at the
// configured precision, gradient checks at double.
template <typename S>
struct TensorT {
    std::vector<int> shape;
    std::vector<S> values;

    TensorT() = default;
    explicit TensorT(std::vector<int> shp) : shape(std::move(shp)) {
        values.assign(numel_of(shape), S(0));
    }

    static std::size_t numel_of(const std::vector<int>& shp) {
        std::size_t n = 1;
        for (int e : shp) {
            if (e <= 0) throw Error("tensor: extents must be positive");
            n *= std::size_t(e);
        }
        return n;
    }

    std::size_t numel() const { return values.size(); }
    S* data() { return values.data(); }
    const S* data() const { return values.data(); }

    void fill(S v) { std::fill(values.begin(), values.end(), v); }

    template <typename T>
    TensorT<T> cast() const {
        TensorT<T> out;
        out.shape = shape;
        out.values.assign(values.begin(), values.end());
        return out;
    }
};

using Tensor = TensorT<double>;
using TensorF = TensorT<float>;

}  // namespace gvbench
