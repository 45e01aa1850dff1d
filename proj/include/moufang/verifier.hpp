#pragma once

// Executable versions of the differential identities of a local Moufang loop:
// minimality conditions of orders one to three, generalized Lie and
// Maurer-Cartan equations, and the commutation relations of the
// infinitesimal translations.

#include "moufang/associators.hpp"
#include "moufang/check_result.hpp"
#include "moufang/loop_models.hpp"
#include "moufang/tangent_algebra.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace moufang {

enum class CheckId {
    loop_axioms,
    moufang_identities,
    two_sided_inverse,
    auxiliary_functions,
    associator_initial_conditions,
    first_order_formulas,
    second_order_formulas,
    third_order_formulas,
    first_minimality,
    generalized_lie,
    second_minimality,
    symmetric_part,
    generalized_maurer_cartan,
    commutation_relations,
    third_minimality,
    malcev_identity,
    akivis_identity,
    moufang_akivis,
};

struct CheckInfo {
    CheckId id;
    std::string_view name;
    int minimum_order;
};

// All checks in dependency order.
std::span<const CheckInfo> check_catalog();
const CheckInfo& check_info(CheckId id);
std::optional<CheckId> parse_check_id(std::string_view name);

// Abelian, Heisenberg and the quaternion chart are local Lie groups; checks on
// them also assert that every associator-type term vanishes.
bool is_lie_model(const LoopModel& model);

// A = A^i(g) d/dg^i with components in r variables.
struct VectorFieldJet {
    JetVector coefficients;
};

// [A,B]^i = A^s dB^i/dg^s - B^s dA^i/dg^s (A acting first, as derivations).
VectorFieldJet lie_bracket(const VectorFieldJet& a, const VectorFieldJet& b);
// The opposite convention [A,B]^i = B^s dA^i/dg^s - A^s dB^i/dg^s, under which
// [L_x,L_y] = L_[x,y] - 2[L_x,R_y] holds with the tangent bracket c.
VectorFieldJet operator_bracket(const VectorFieldJet& a, const VectorFieldJet& b);
VectorFieldJet operator+(const VectorFieldJet& a, const VectorFieldJet& b);
VectorFieldJet operator-(const VectorFieldJet& a, const VectorFieldJet& b);
VectorFieldJet operator*(const Rational& s, const VectorFieldJet& a);

// L_x = x^j u^i_j(g) d/dg^i and R_x = x^j v^i_j(g) d/dg^i.
VectorFieldJet left_translation(const AuxiliaryFunctions& aux, const TangentVector& x);
VectorFieldJet right_translation(const AuxiliaryFunctions& aux, const TangentVector& x);

// Shared, lazily built symbol tower of one model at one order. Accessors are
// thread-safe; each piece is computed once.
class Tower {
public:
    Tower(LoopModel model, int order);
    ~Tower();
    Tower(const Tower&) = delete;
    Tower& operator=(const Tower&) = delete;

    const LoopModel& model() const noexcept { return model_; }
    int order() const noexcept { return order_; }

    const JetVector& multiplication() const;
    const StructureTensors& structure() const;
    const AuxiliaryFunctions& auxiliary() const;
    const JetVector& associator() const;
    const FirstOrderAssociators& first_direct() const;
    const FirstOrderAssociators& first_formula() const;
    const SecondOrderAssociators& second_direct() const;
    const SecondOrderAssociators& second_formula() const;
    const ThirdOrderAssociators& third_direct() const;
    const ThirdOrderAssociators& third_formula() const;
    // Read back through the JSON tensor export; l3 present when order >= 4.
    const AlgebraConstants& algebra_constants() const;
    nlohmann::ordered_json tensor_export() const;

private:
    struct Cache;
    LoopModel model_;
    int order_;
    std::unique_ptr<Cache> cache_;
};

CheckResult check_auxiliary_functions(const Tower& tower);
CheckResult check_associator_initial_conditions(const Tower& tower);
CheckResult check_first_order_formulas(const Tower& tower);
CheckResult check_second_order_formulas(const Tower& tower);
CheckResult check_third_order_formulas(const Tower& tower);
CheckResult check_first_minimality(const Tower& tower);
CheckResult check_generalized_lie(const Tower& tower);
CheckResult check_second_minimality(const Tower& tower);
CheckResult check_symmetric_part(const Tower& tower);
CheckResult check_generalized_maurer_cartan(const Tower& tower);
CheckResult check_commutation_relations(const Tower& tower);
CheckResult check_third_minimality(const Tower& tower);

// Throws std::invalid_argument when the tower order is below the check's
// minimum order.
CheckResult run_check(CheckId id, const Tower& tower);

// Runs the selected checks (in catalog order) over one shared tower. An
// exception inside a check becomes a failed result carrying the message.
// With jobs > 1 checks run on that many worker threads; the output order is
// the catalog order regardless.
std::vector<CheckResult> run_suite(const LoopModel& model, int order, std::span<const CheckId> checks,
                                   unsigned jobs = 1);

// Checks whose minimum order is at most `order`.
std::vector<CheckId> checks_for_order(int order);

} // namespace moufang
