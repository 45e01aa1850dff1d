#include "moufang/check_result.hpp"

#include <algorithm>
#include <utility>

namespace moufang {

std::string describe(const Witness& w)
{
    std::string out = w.equation + ": component " + std::to_string(w.component);
    if (!w.lower_indices.empty()) {
        out += " lower indices (";
        for (std::size_t k = 0; k < w.lower_indices.size(); ++k) {
            out += (k ? "," : "") + std::to_string(w.lower_indices[k]);
        }
        out += ")";
    }
    out += " exponents " + to_string(w.exponents) + " lhs " + to_string(w.lhs) + " rhs " + to_string(w.rhs);
    return out;
}

CheckRecorder::CheckRecorder(std::string identity, std::string model, int requested_order)
{
    result_.identity = std::move(identity);
    result_.model = std::move(model);
    result_.requested_order = requested_order;
}

void CheckRecorder::record_order(int order)
{
    order_ = order_ ? std::min(*order_, order) : order;
}

void CheckRecorder::set_data_order(int order)
{
    record_order(order);
}

void CheckRecorder::fail(std::string_view equation, std::size_t component, std::vector<std::size_t> lower_indices,
                         ExponentVector exponents, const Rational& lhs, const Rational& rhs, std::size_t count)
{
    result_.discrepancies += count;
    if (!result_.first_failure) {
        result_.first_failure =
            Witness{std::string(equation), component, std::move(lower_indices), std::move(exponents), lhs, rhs};
    }
}

bool CheckRecorder::expect_equal(std::string_view equation, const Jet& lhs, const Jet& rhs, std::size_t component,
                                 std::vector<std::size_t> lower_indices)
{
    ++result_.comparisons;
    record_order(std::min(lhs.reliable_order(), rhs.reliable_order()));
    if (!lhs.truncated(rhs.reliable_order()).is_zero() || !rhs.truncated(lhs.reliable_order()).is_zero()) {
        all_zero_ = false;
    }
    auto diff = first_difference(lhs, rhs);
    if (!diff) {
        return true;
    }
    fail(equation, component, std::move(lower_indices), diff->exponents, diff->lhs, diff->rhs,
         count_differences(lhs, rhs));
    return false;
}

bool CheckRecorder::expect_equal(std::string_view equation, const Rational& lhs, const Rational& rhs,
                                 std::size_t component, std::vector<std::size_t> lower_indices)
{
    ++result_.comparisons;
    if (lhs != 0 || rhs != 0) {
        all_zero_ = false;
    }
    if (lhs == rhs) {
        return true;
    }
    fail(equation, component, std::move(lower_indices), ExponentVector(), lhs, rhs, 1);
    return false;
}

bool CheckRecorder::expect_zero(std::string_view equation, const Jet& value, std::size_t component,
                                std::vector<std::size_t> lower_indices)
{
    return expect_equal(equation, value, Jet(value.num_vars(), value.reliable_order()), component,
                        std::move(lower_indices));
}

bool CheckRecorder::expect_nonzero(std::string_view equation, const Rational& value)
{
    ++result_.comparisons;
    all_zero_ = false;
    if (value != 0) {
        return true;
    }
    fail(equation, 0, {}, ExponentVector(), value, Rational(0), 1);
    return false;
}

void CheckRecorder::note(std::string text)
{
    result_.notes.push_back(std::move(text));
}

CheckResult CheckRecorder::finish(bool annotate_zero) &&
{
    result_.verified_order = order_.value_or(0);
    result_.passed = result_.discrepancies == 0;
    if (annotate_zero && result_.comparisons > 0 && all_zero_) {
        result_.notes.emplace_back("identically zero");
    }
    return std::move(result_);
}

} // namespace moufang
