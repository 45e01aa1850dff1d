#pragma once

#include "moufang/jet.hpp"
#include "moufang/rational.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace moufang {

// Dense array indexed by `rank` indices, each running over 0..dim-1.
// Index 0 is the upper (component) index, the rest are lower indices.
template <typename T>
class DenseTensor {
public:
    DenseTensor() = default;
    DenseTensor(std::size_t rank, std::size_t dim, T fill = T{})
        : rank_(rank), dim_(dim), data_(ipow(dim, rank), std::move(fill))
    {
    }

    std::size_t rank() const noexcept { return rank_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return data_.size(); }

    template <typename... I>
    T& operator()(I... idx)
    {
        return data_[offset(idx...)];
    }
    template <typename... I>
    const T& operator()(I... idx) const
    {
        return data_[offset(idx...)];
    }

    T& at(std::span<const std::size_t> idx) { return data_[offset_of(idx)]; }
    const T& at(std::span<const std::size_t> idx) const { return data_[offset_of(idx)]; }

    const std::vector<T>& data() const noexcept { return data_; }

    // Calls fn(indices) for every multi-index in row-major order.
    template <typename Fn>
    void for_each_index(Fn&& fn) const
    {
        std::vector<std::size_t> idx(rank_, 0);
        for (std::size_t flat = 0; flat < data_.size(); ++flat) {
            fn(std::span<const std::size_t>(idx));
            for (std::size_t pos = rank_; pos-- > 0;) {
                if (++idx[pos] < dim_) {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

private:
    static std::size_t ipow(std::size_t base, std::size_t exp)
    {
        std::size_t out = 1;
        for (std::size_t k = 0; k < exp; ++k) {
            out *= base;
        }
        return out;
    }

    template <typename... I>
    std::size_t offset(I... idx) const
    {
        const std::array<std::size_t, sizeof...(I)> flat{static_cast<std::size_t>(idx)...};
        return offset_of(flat);
    }

    std::size_t offset_of(std::span<const std::size_t> idx) const
    {
        if (idx.size() != rank_) {
            throw std::invalid_argument("tensor index count does not match rank");
        }
        std::size_t out = 0;
        for (std::size_t k : idx) {
            if (k >= dim_) {
                throw std::out_of_range("tensor index out of range");
            }
            out = out * dim_ + k;
        }
        return out;
    }

    std::size_t rank_ = 0;
    std::size_t dim_ = 0;
    std::vector<T> data_;
};

using Tensor = DenseTensor<Rational>;
using JetTensor = DenseTensor<Jet>;

} // namespace moufang
