#pragma once

#include "moufang/jet.hpp"
#include "moufang/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moufang {

// Reproducible location of the first coefficient at which an identity failed.
struct Witness {
    std::string equation;
    std::size_t component = 0;
    std::vector<std::size_t> lower_indices;
    ExponentVector exponents;
    Rational lhs;
    Rational rhs;
};

struct CheckResult {
    std::string identity;
    std::string model;
    int requested_order = 0;
    int verified_order = 0;
    bool passed = true;
    std::optional<Witness> first_failure;
    std::size_t comparisons = 0;
    std::size_t discrepancies = 0;
    std::vector<std::string> notes;
    double seconds = 0.0;
};

std::string describe(const Witness& w);

// Accumulates exact comparisons for one identity. The first mismatch becomes
// the witness; later mismatches are only counted.
class CheckRecorder {
public:
    CheckRecorder(std::string identity, std::string model, int requested_order);

    bool expect_equal(std::string_view equation, const Jet& lhs, const Jet& rhs, std::size_t component,
                      std::vector<std::size_t> lower_indices = {});
    bool expect_equal(std::string_view equation, const Rational& lhs, const Rational& rhs, std::size_t component,
                      std::vector<std::size_t> lower_indices = {});
    bool expect_zero(std::string_view equation, const Jet& value, std::size_t component,
                     std::vector<std::size_t> lower_indices = {});
    bool expect_nonzero(std::string_view equation, const Rational& value);

    // Tensor identities certify Taylor data of a fixed degree rather than a
    // jet order; callers state that degree here.
    void set_data_order(int order);

    void note(std::string text);
    bool passed() const noexcept { return result_.discrepancies == 0; }

    // With annotate_zero, adds an "identically zero" note when every compared
    // side vanished.
    CheckResult finish(bool annotate_zero = false) &&;

private:
    void record_order(int order);
    void fail(std::string_view equation, std::size_t component, std::vector<std::size_t> lower_indices,
              ExponentVector exponents, const Rational& lhs, const Rational& rhs, std::size_t count);

    CheckResult result_;
    std::optional<int> order_;
    bool all_zero_ = true;
};

} // namespace moufang
