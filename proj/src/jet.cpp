#include "moufang/jet.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace moufang {

namespace {

constexpr int kDefaultMaxOrder = 6;
constexpr int kHardMaxOrder = 64;

int initial_max_order()
{
    if (const char* env = std::getenv("MOUFANG_MAX_ORDER")) {
        char* end = nullptr;
        long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value >= 1 && value <= kHardMaxOrder) {
            return static_cast<int>(value);
        }
    }
    return kDefaultMaxOrder;
}

std::atomic<int>& order_cap()
{
    static std::atomic<int> cap{initial_max_order()};
    return cap;
}

void check_same_vars(const Jet& a, const Jet& b, const char* op)
{
    if (a.num_vars() != b.num_vars()) {
        throw std::invalid_argument(std::string(op) + ": variable-count mismatch (" +
                                    std::to_string(a.num_vars()) + " vs " + std::to_string(b.num_vars()) + ")");
    }
}

} // namespace

int max_order()
{
    return order_cap().load(std::memory_order_relaxed);
}

void set_max_order(int cap)
{
    if (cap < 1 || cap > kHardMaxOrder) {
        throw std::invalid_argument("order cap must lie in [1, " + std::to_string(kHardMaxOrder) + "]");
    }
    order_cap().store(cap, std::memory_order_relaxed);
}

// ---------------------------------------------------------------------------
// ExponentVector
// ---------------------------------------------------------------------------

ExponentVector::ExponentVector(std::size_t num_vars) : exps_(num_vars, 0) {}

ExponentVector::ExponentVector(std::initializer_list<int> exponents)
    : ExponentVector(std::span<const int>(exponents.begin(), exponents.size()))
{
}

ExponentVector::ExponentVector(std::span<const int> exponents) : exps_(exponents.size(), 0)
{
    for (std::size_t v = 0; v < exponents.size(); ++v) {
        set(v, exponents[v]);
    }
}

ExponentVector ExponentVector::unit(std::size_t num_vars, std::size_t var)
{
    ExponentVector e(num_vars);
    e.set(var, 1);
    return e;
}

void ExponentVector::set(std::size_t var, int exponent)
{
    if (exponent < 0 || exponent > std::numeric_limits<std::uint8_t>::max()) {
        throw std::out_of_range("exponent out of range: " + std::to_string(exponent));
    }
    degree_ += exponent - exps_.at(var);
    exps_[var] = static_cast<std::uint8_t>(exponent);
}

std::vector<int> ExponentVector::to_vector() const
{
    return {exps_.begin(), exps_.end()};
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b)
{
    ExponentVector out = a;
    for (std::size_t v = 0; v < b.exps_.size(); ++v) {
        out.exps_[v] = static_cast<std::uint8_t>(out.exps_[v] + b.exps_[v]);
    }
    out.degree_ += b.degree_;
    return out;
}

bool GradedLexLess::operator()(const ExponentVector& a, const ExponentVector& b) const
{
    if (a.total_degree() != b.total_degree()) {
        return a.total_degree() < b.total_degree();
    }
    for (std::size_t v = 0; v < a.size(); ++v) {
        if (a[v] != b[v]) {
            return a[v] > b[v];
        }
    }
    return false;
}

std::string to_string(const ExponentVector& e)
{
    std::string out = "[";
    for (std::size_t v = 0; v < e.size(); ++v) {
        if (v > 0) {
            out += ',';
        }
        out += std::to_string(e[v]);
    }
    out += ']';
    return out;
}

// ---------------------------------------------------------------------------
// Jet
// ---------------------------------------------------------------------------

Jet::Jet(std::size_t num_vars, int reliable_order) : num_vars_(num_vars), order_(reliable_order)
{
    if (reliable_order < 0) {
        throw std::invalid_argument("negative reliable order");
    }
    if (reliable_order > max_order()) {
        throw std::domain_error("reliable order " + std::to_string(reliable_order) + " exceeds the global cap " +
                                std::to_string(max_order()));
    }
}

Jet Jet::constant(std::size_t num_vars, int reliable_order, const Rational& value)
{
    Jet out(num_vars, reliable_order);
    Rational v = value;
    v.canonicalize();
    if (v != 0) {
        out.terms_.emplace(ExponentVector(num_vars), std::move(v));
    }
    return out;
}

Jet Jet::variable(std::size_t num_vars, int reliable_order, std::size_t var)
{
    if (var >= num_vars) {
        throw std::out_of_range("variable index " + std::to_string(var) + " out of range");
    }
    Jet out(num_vars, reliable_order);
    if (reliable_order >= 1) {
        out.terms_.emplace(ExponentVector::unit(num_vars, var), Rational(1));
    }
    return out;
}

Jet Jet::from_terms(std::size_t num_vars, int reliable_order,
                    std::span<const std::pair<ExponentVector, Rational>> terms)
{
    Jet out(num_vars, reliable_order);
    for (const auto& [e, c] : terms) {
        if (e.size() != num_vars) {
            throw std::invalid_argument("exponent vector length " + std::to_string(e.size()) +
                                        " does not match " + std::to_string(num_vars) + " variables");
        }
        if (e.total_degree() <= reliable_order) {
            Rational v = c;
            v.canonicalize();
            out.terms_[e] += v;
        }
    }
    std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Rational Jet::coefficient(const ExponentVector& e) const
{
    if (e.size() != num_vars_) {
        throw std::invalid_argument("exponent vector arity mismatch");
    }
    if (e.total_degree() > order_) {
        throw std::out_of_range("coefficient of degree " + std::to_string(e.total_degree()) +
                                " requested from a jet reliable only to order " + std::to_string(order_));
    }
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Jet::constant_term() const
{
    return coefficient(ExponentVector(num_vars_));
}

Jet Jet::truncated(int order) const
{
    Jet out(num_vars_, std::min(order, order_));
    for (const auto& [e, c] : terms_) {
        if (e.total_degree() > out.order_) {
            break;
        }
        out.terms_.emplace_hint(out.terms_.end(), e, c);
    }
    return out;
}

void Jet::add_scaled(const Jet& other, const Rational& scale)
{
    check_same_vars(*this, other, "jet addition");
    if (other.order_ < order_) {
        *this = truncated(other.order_);
    }
    for (const auto& [e, c] : other.terms_) {
        if (e.total_degree() > order_) {
            break;
        }
        auto [it, inserted] = terms_.try_emplace(e);
        it->second += scale * c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

Jet& Jet::operator+=(const Jet& other)
{
    add_scaled(other, Rational(1));
    return *this;
}

Jet& Jet::operator-=(const Jet& other)
{
    add_scaled(other, Rational(-1));
    return *this;
}

Jet& Jet::operator*=(const Rational& scale)
{
    Rational s = scale;
    s.canonicalize();
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) {
        c *= s;
    }
    return *this;
}

bool operator==(const Jet& a, const Jet& b)
{
    return a.num_vars_ == b.num_vars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
}

Jet operator+(const Jet& a, const Jet& b)
{
    Jet out = a;
    out += b;
    return out;
}

Jet operator-(const Jet& a, const Jet& b)
{
    Jet out = a;
    out -= b;
    return out;
}

Jet operator-(const Jet& a)
{
    Jet out = a;
    out *= Rational(-1);
    return out;
}

Jet operator*(const Rational& scale, const Jet& a)
{
    Jet out = a;
    out *= scale;
    return out;
}

Jet operator*(const Jet& a, const Jet& b)
{
    check_same_vars(a, b, "jet product");
    const int order = std::min(a.order_, b.order_);
    Jet out(a.num_vars_, order);
    for (const auto& [ea, ca] : a.terms_) {
        if (ea.total_degree() > order) {
            break;
        }
        for (const auto& [eb, cb] : b.terms_) {
            if (ea.total_degree() + eb.total_degree() > order) {
                break;
            }
            auto [it, inserted] = out.terms_.try_emplace(ea + eb);
            it->second += ca * cb;
        }
    }
    std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Jet partial_derivative(const Jet& a, std::size_t var)
{
    if (var >= a.num_vars_) {
        throw std::out_of_range("partial derivative: variable " + std::to_string(var) + " out of range");
    }
    Jet out(a.num_vars_, std::max(a.order_ - 1, 0));
    for (const auto& [e, c] : a.terms_) {
        const int power = e[var];
        if (power == 0 || e.total_degree() - 1 > out.order_) {
            continue;
        }
        ExponentVector lowered = e;
        lowered.set(var, power - 1);
        out.terms_.emplace(std::move(lowered), c * power);
    }
    return out;
}

Jet substitute(const Jet& a, std::span<const Jet> substitutions)
{
    if (substitutions.size() != a.num_vars_) {
        throw std::invalid_argument("substitute: expected " + std::to_string(a.num_vars_) + " substitutions, got " +
                                    std::to_string(substitutions.size()));
    }
    if (substitutions.empty()) {
        return a;
    }
    const std::size_t target_vars = substitutions.front().num_vars();
    int order = a.order_;
    for (const Jet& s : substitutions) {
        if (s.num_vars() != target_vars) {
            throw std::invalid_argument("substitute: substitutions live in different variable spaces");
        }
        if (!s.terms().empty() && s.terms().begin()->first.total_degree() == 0) {
            throw std::invalid_argument("substitute: substitution with nonzero constant term");
        }
        order = std::min(order, s.reliable_order());
    }

    std::vector<int> max_power(a.num_vars_, 0);
    for (const auto& [e, c] : a.terms_) {
        if (e.total_degree() > order) {
            break;
        }
        for (std::size_t v = 0; v < a.num_vars_; ++v) {
            max_power[v] = std::max(max_power[v], e[v]);
        }
    }

    // powers[v][p] = s_v^p truncated at the result order.
    std::vector<std::vector<Jet>> powers(a.num_vars_);
    for (std::size_t v = 0; v < a.num_vars_; ++v) {
        if (max_power[v] == 0) {
            continue;
        }
        powers[v].reserve(static_cast<std::size_t>(max_power[v]) + 1);
        powers[v].push_back(Jet::constant(target_vars, order, Rational(1)));
        const Jet base = substitutions[v].truncated(order);
        for (int p = 1; p <= max_power[v]; ++p) {
            powers[v].push_back(powers[v].back() * base);
        }
    }

    Jet out(target_vars, order);
    for (const auto& [e, c] : a.terms_) {
        if (e.total_degree() > order) {
            break;
        }
        Jet term = Jet::constant(target_vars, order, c);
        for (std::size_t v = 0; v < a.num_vars_ && !term.is_zero(); ++v) {
            if (e[v] > 0) {
                term = term * powers[v][static_cast<std::size_t>(e[v])];
            }
        }
        out += term;
    }
    return out;
}

Jet embed(const Jet& a, std::size_t target_num_vars, std::span<const std::size_t> slot_map)
{
    if (slot_map.size() != a.num_vars_) {
        throw std::invalid_argument("embed: slot map length does not match the variable count");
    }
    std::vector<bool> used(target_num_vars, false);
    for (std::size_t slot : slot_map) {
        if (slot >= target_num_vars) {
            throw std::out_of_range("embed: slot " + std::to_string(slot) + " out of range");
        }
        if (used[slot]) {
            throw std::invalid_argument("embed: slot map is not injective");
        }
        used[slot] = true;
    }
    Jet out(target_num_vars, a.order_);
    for (const auto& [e, c] : a.terms_) {
        ExponentVector moved(target_num_vars);
        for (std::size_t v = 0; v < a.num_vars_; ++v) {
            if (e[v] != 0) {
                moved.set(slot_map[v], e[v]);
            }
        }
        out.terms_.emplace(std::move(moved), c);
    }
    return out;
}

Jet restrict_to(const Jet& a, std::span<const std::size_t> kept_vars)
{
    std::vector<int> position(a.num_vars_, -1);
    for (std::size_t k = 0; k < kept_vars.size(); ++k) {
        if (kept_vars[k] >= a.num_vars_) {
            throw std::out_of_range("restrict_to: variable out of range");
        }
        if (position[kept_vars[k]] != -1) {
            throw std::invalid_argument("restrict_to: repeated variable");
        }
        position[kept_vars[k]] = static_cast<int>(k);
    }
    Jet out(kept_vars.size(), a.order_);
    for (const auto& [e, c] : a.terms_) {
        bool survives = true;
        for (std::size_t v = 0; v < a.num_vars_; ++v) {
            if (e[v] != 0 && position[v] < 0) {
                survives = false;
                break;
            }
        }
        if (!survives) {
            continue;
        }
        ExponentVector kept(kept_vars.size());
        for (std::size_t k = 0; k < kept_vars.size(); ++k) {
            kept.set(k, e[kept_vars[k]]);
        }
        out.terms_.emplace(std::move(kept), c);
    }
    return out;
}

double evaluate(const Jet& a, std::span<const double> point)
{
    if (point.size() != a.num_vars()) {
        throw std::invalid_argument("evaluate: point dimension mismatch");
    }
    long double sum = 0.0L;
    for (const auto& [e, c] : a.terms()) {
        long double term = c.get_d();
        for (std::size_t v = 0; v < point.size(); ++v) {
            for (int p = 0; p < e[v]; ++p) {
                term *= point[v];
            }
        }
        sum += term;
    }
    return static_cast<double>(sum);
}

Rational evaluate(const Jet& a, std::span<const Rational> point)
{
    if (point.size() != a.num_vars()) {
        throw std::invalid_argument("evaluate: point dimension mismatch");
    }
    Rational sum = 0;
    for (const auto& [e, c] : a.terms()) {
        Rational term = c;
        for (std::size_t v = 0; v < point.size(); ++v) {
            for (int p = 0; p < e[v]; ++p) {
                term *= point[v];
            }
        }
        sum += term;
    }
    return sum;
}

namespace {

template <typename Visitor>
void visit_differences(const Jet& a, const Jet& b, Visitor&& visit)
{
    check_same_vars(a, b, "jet comparison");
    const int order = std::min(a.reliable_order(), b.reliable_order());
    const GradedLexLess less;
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    const Rational zero(0);
    auto in_range = [order](auto it, auto end) { return it != end && it->first.total_degree() <= order; };
    while (in_range(ia, a.terms().end()) || in_range(ib, b.terms().end())) {
        const bool has_a = in_range(ia, a.terms().end());
        const bool has_b = in_range(ib, b.terms().end());
        if (has_a && (!has_b || less(ia->first, ib->first))) {
            if (!visit(ia->first, ia->second, zero)) {
                return;
            }
            ++ia;
        } else if (has_b && (!has_a || less(ib->first, ia->first))) {
            if (!visit(ib->first, zero, ib->second)) {
                return;
            }
            ++ib;
        } else {
            if (ia->second != ib->second && !visit(ia->first, ia->second, ib->second)) {
                return;
            }
            ++ia;
            ++ib;
        }
    }
}

} // namespace

std::optional<TermDifference> first_difference(const Jet& a, const Jet& b)
{
    std::optional<TermDifference> found;
    visit_differences(a, b, [&](const ExponentVector& e, const Rational& lhs, const Rational& rhs) {
        found = TermDifference{e, lhs, rhs};
        return false;
    });
    return found;
}

std::size_t count_differences(const Jet& a, const Jet& b)
{
    std::size_t count = 0;
    visit_differences(a, b, [&](const ExponentVector&, const Rational&, const Rational&) {
        ++count;
        return true;
    });
    return count;
}

std::string to_string(const Jet& a)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : a.terms()) {
        Rational shown = c;
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            shown = abs(c);
        } else if (c < 0) {
            os << '-';
            shown = abs(c);
        }
        first = false;
        const bool unit_coeff = shown == 1 && e.total_degree() > 0;
        if (!unit_coeff) {
            os << shown.get_str();
        }
        bool need_star = !unit_coeff;
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) {
                continue;
            }
            os << (need_star ? "*" : "") << 'x' << v;
            if (e[v] > 1) {
                os << '^' << e[v];
            }
            need_star = true;
        }
    }
    if (first) {
        os << '0';
    }
    os << " + O(" << a.reliable_order() + 1 << ')';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Jet& a)
{
    return os << to_string(a);
}

// ---------------------------------------------------------------------------
// JetVector
// ---------------------------------------------------------------------------

JetVector::JetVector(std::vector<Jet> components) : components_(std::move(components))
{
    if (components_.empty()) {
        throw std::invalid_argument("JetVector needs at least one component");
    }
    for (const Jet& c : components_) {
        if (c.num_vars() != components_.front().num_vars() ||
            c.reliable_order() != components_.front().reliable_order()) {
            throw std::invalid_argument("JetVector components disagree on variables or reliable order");
        }
    }
}

JetVector JetVector::variables(std::size_t num_vars, int reliable_order, std::span<const std::size_t> vars)
{
    std::vector<Jet> out;
    out.reserve(vars.size());
    for (std::size_t v : vars) {
        out.push_back(Jet::variable(num_vars, reliable_order, v));
    }
    return JetVector(std::move(out));
}

namespace {

template <typename Fn>
JetVector map_components(const JetVector& a, Fn&& fn)
{
    std::vector<Jet> out;
    out.reserve(a.dimension());
    for (const Jet& c : a) {
        out.push_back(fn(c));
    }
    return JetVector(std::move(out));
}

} // namespace

JetVector operator-(const JetVector& a, const JetVector& b)
{
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("JetVector dimension mismatch");
    }
    std::vector<Jet> out;
    out.reserve(a.dimension());
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        out.push_back(a[i] - b[i]);
    }
    return JetVector(std::move(out));
}

JetVector operator-(const JetVector& a)
{
    return map_components(a, [](const Jet& c) { return -c; });
}

JetVector substitute(const JetVector& a, std::span<const Jet> substitutions)
{
    return map_components(a, [&](const Jet& c) { return substitute(c, substitutions); });
}

JetVector embed(const JetVector& a, std::size_t target_num_vars, std::span<const std::size_t> slot_map)
{
    return map_components(a, [&](const Jet& c) { return embed(c, target_num_vars, slot_map); });
}

JetVector restrict_to(const JetVector& a, std::span<const std::size_t> kept_vars)
{
    return map_components(a, [&](const Jet& c) { return restrict_to(c, kept_vars); });
}

std::vector<std::size_t> index_block(std::size_t first, std::size_t count)
{
    std::vector<std::size_t> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = first + k;
    }
    return out;
}

} // namespace moufang
