#pragma once

// Local analytic loops given by their multiplication jet F^i(g, h) = (gh)^i in
// a chart centred at the unit. F lives in 2r variables: g occupies slots
// 0..r-1 and h occupies slots r..2r-1.

#include "moufang/check_result.hpp"
#include "moufang/jet.hpp"

#include "json.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moufang {

enum class ModelKind { abelian, heisenberg, quaternion_chart, octonion_chart, custom_polynomial };

std::string_view to_string(ModelKind kind);

struct PolynomialTerm {
    ExponentVector exponents;
    Rational coefficient;
};

// Polynomial multiplication law; components[i] lists the terms of (gh)^i over
// the 2r variables (g, h).
struct CustomModelSpec {
    std::size_t dimension = 0;
    std::vector<std::vector<PolynomialTerm>> components;
};

class LoopModel {
public:
    using Generator = std::function<JetVector(int order)>;

    LoopModel(std::string name, std::size_t dimension, ModelKind kind, Generator generator);

    static LoopModel abelian(std::size_t dimension = 3);
    static LoopModel heisenberg();
    static LoopModel quaternion_chart();
    static LoopModel octonion_chart();
    // No unit-law validation here; see load_custom_model.
    static LoopModel custom(std::string name, CustomModelSpec spec);

    const std::string& name() const noexcept { return name_; }
    std::size_t dimension() const noexcept { return dimension_; }
    ModelKind kind() const noexcept { return kind_; }

    // Raw multiplication jet at the requested order, not validated.
    JetVector generate(int order) const;

private:
    std::string name_;
    std::size_t dimension_;
    ModelKind kind_;
    Generator generator_;
};

const std::vector<std::string>& builtin_model_names();
// Throws std::invalid_argument for an unknown name.
LoopModel builtin_model(std::string_view name);

// Schema: {"dimension": r, "components": [[[exponents...], "p/q"], ...] per i},
// optional "name". Throws std::invalid_argument on malformed documents.
CustomModelSpec parse_custom_model(const nlohmann::json& doc);
nlohmann::json to_json(const CustomModelSpec& spec);
// Captures a multiplication jet as a polynomial law (all stored terms).
CustomModelSpec polynomial_spec(const JetVector& multiplication);

std::optional<Witness> unit_law_violation(const CustomModelSpec& spec);
// Parses and validates the unit law; throws std::invalid_argument otherwise.
LoopModel load_custom_model(const nlohmann::json& doc, std::string name);
LoopModel load_custom_model(const std::filesystem::path& path);

// Multiplication jet with the unit law checked; throws std::invalid_argument
// if F(g,0) != g or F(0,h) != h, std::domain_error above the order cap.
JetVector build_multiplication_jet(const LoopModel& model, int order);

// F(x, y) for jet vectors x, y without constant term in a common space.
JetVector loop_product(const JetVector& multiplication, const JetVector& x, const JetVector& y);

CheckResult check_loop_axioms(const LoopModel& model, int order);
CheckResult check_moufang_identities(const LoopModel& model, int order);

// The jet iota(g) in r variables with F(g, iota(g)) = 0.
JetVector invert_jet(const LoopModel& model, int order);
CheckResult check_two_sided_inverse(const LoopModel& model, int order);

Rational determinant(std::vector<std::vector<Rational>> matrix);

} // namespace moufang
