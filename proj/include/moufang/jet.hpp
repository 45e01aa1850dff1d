#pragma once

// Sparse truncated multivariate power series ("jets") with exact rational
// coefficients.
//
// Every jet carries a reliable order D: coefficients of total degree <= D are
// exact, everything above is unknown and never stored. Binary operations
// produce min(D_a, D_b), differentiation produces D - 1, and substitution of
// jets without constant term produces the minimum over all inputs. Comparing
// two jets is only meaningful up to the smaller of their reliable orders.

#include "moufang/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace moufang {

// Global cap on reliable orders. Defaults to 6, or to MOUFANG_MAX_ORDER when
// that environment variable holds an integer in [1, 64].
int max_order();
void set_max_order(int cap);

class ExponentVector {
public:
    ExponentVector() = default;
    explicit ExponentVector(std::size_t num_vars);
    ExponentVector(std::initializer_list<int> exponents);
    explicit ExponentVector(std::span<const int> exponents);

    static ExponentVector unit(std::size_t num_vars, std::size_t var);

    std::size_t size() const noexcept { return exps_.size(); }
    int operator[](std::size_t var) const { return exps_[var]; }
    int total_degree() const noexcept { return degree_; }

    void set(std::size_t var, int exponent);

    std::vector<int> to_vector() const;

    friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

private:
    std::vector<std::uint8_t> exps_;
    int degree_ = 0;
};

// Graded lexicographic order: lower total degree first, then the exponent of
// the first variable decides (x0 > x1 > ... within a degree).
struct GradedLexLess {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const;
};

std::string to_string(const ExponentVector& e);

class Jet {
public:
    using TermMap = std::map<ExponentVector, Rational, GradedLexLess>;

    // The zero jet with zero variables and order 0; only useful as a
    // placeholder before assignment.
    Jet() = default;
    Jet(std::size_t num_vars, int reliable_order);

    static Jet constant(std::size_t num_vars, int reliable_order, const Rational& value);
    static Jet variable(std::size_t num_vars, int reliable_order, std::size_t var);
    // Sums duplicate exponents, drops zeros and everything above the order.
    static Jet from_terms(std::size_t num_vars, int reliable_order,
                          std::span<const std::pair<ExponentVector, Rational>> terms);

    std::size_t num_vars() const noexcept { return num_vars_; }
    int reliable_order() const noexcept { return order_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    // Throws std::out_of_range when e lies above the reliable order and
    // std::invalid_argument on an arity mismatch.
    Rational coefficient(const ExponentVector& e) const;
    Rational constant_term() const;

    Jet truncated(int order) const;

    Jet& operator+=(const Jet& other);
    Jet& operator-=(const Jet& other);
    Jet& operator*=(const Rational& scale);

    friend bool operator==(const Jet& a, const Jet& b);

private:
    void add_scaled(const Jet& other, const Rational& scale);

    std::size_t num_vars_ = 0;
    int order_ = 0;
    TermMap terms_;

    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet partial_derivative(const Jet& a, std::size_t var);
    friend Jet substitute(const Jet& a, std::span<const Jet> substitutions);
    friend Jet embed(const Jet& a, std::size_t target_num_vars, std::span<const std::size_t> slot_map);
    friend Jet restrict_to(const Jet& a, std::span<const std::size_t> kept_vars);
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(const Rational& scale, const Jet& a);

// Formal partial derivative; reliable order drops by one (floored at 0).
Jet partial_derivative(const Jet& a, std::size_t var);

// a(s_0, ..., s_{n-1}). Each substitution must have zero constant term so the
// composition is degree-filtered and exact up to the minimum reliable order.
Jet substitute(const Jet& a, std::span<const Jet> substitutions);

// Renames variable v of a to slot_map[v] in a space of target_num_vars.
Jet embed(const Jet& a, std::size_t target_num_vars, std::span<const std::size_t> slot_map);

// Sets every variable not listed to zero and renames kept_vars[k] to k.
Jet restrict_to(const Jet& a, std::span<const std::size_t> kept_vars);

double evaluate(const Jet& a, std::span<const double> point);
Rational evaluate(const Jet& a, std::span<const Rational> point);

struct TermDifference {
    ExponentVector exponents;
    Rational lhs;
    Rational rhs;
};

// Lowest (graded-lex) exponent at which a and b differ up to their common
// reliable order, or nullopt when they agree there.
std::optional<TermDifference> first_difference(const Jet& a, const Jet& b);
// Number of differing coefficients up to the common reliable order.
std::size_t count_differences(const Jet& a, const Jet& b);

std::string to_string(const Jet& a);
std::ostream& operator<<(std::ostream& os, const Jet& a);

// r-component maps sharing one variable space and reliable order, e.g. the
// multiplication (gh)^i or the associator a^i(g,h,k).
class JetVector {
public:
    JetVector() = default;
    explicit JetVector(std::vector<Jet> components);

    static JetVector variables(std::size_t num_vars, int reliable_order, std::span<const std::size_t> vars);

    std::size_t dimension() const noexcept { return components_.size(); }
    std::size_t num_vars() const noexcept { return components_.empty() ? 0 : components_.front().num_vars(); }
    int reliable_order() const noexcept { return components_.empty() ? 0 : components_.front().reliable_order(); }

    const Jet& operator[](std::size_t i) const { return components_[i]; }
    const std::vector<Jet>& components() const noexcept { return components_; }
    auto begin() const noexcept { return components_.begin(); }
    auto end() const noexcept { return components_.end(); }

    friend bool operator==(const JetVector&, const JetVector&) = default;

private:
    std::vector<Jet> components_;
};

JetVector operator-(const JetVector& a, const JetVector& b);
JetVector operator-(const JetVector& a);
JetVector substitute(const JetVector& a, std::span<const Jet> substitutions);
JetVector embed(const JetVector& a, std::size_t target_num_vars, std::span<const std::size_t> slot_map);
JetVector restrict_to(const JetVector& a, std::span<const std::size_t> kept_vars);

// Consecutive index block [first, first + count).
std::vector<std::size_t> index_block(std::size_t first, std::size_t count);

} // namespace moufang
