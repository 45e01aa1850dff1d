#include "moufang/associators.hpp"
#include "moufang/loop_models.hpp"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

using namespace moufang;

namespace {

// g + h plus random mixed terms; every extra monomial contains both a g and an
// h variable, so the unit law holds by construction.
LoopModel random_loop(std::mt19937& rng, std::size_t r, int max_degree)
{
    CustomModelSpec spec;
    spec.dimension = r;
    spec.components.resize(r);
    std::uniform_int_distribution<int> coeff(-2, 2);
    std::uniform_int_distribution<std::size_t> var(0, r - 1);
    for (std::size_t i = 0; i < r; ++i) {
        spec.components[i].push_back({ExponentVector::unit(2 * r, i), 1});
        spec.components[i].push_back({ExponentVector::unit(2 * r, r + i), 1});
        for (int t = 0; t < 4; ++t) {
            std::vector<int> e(2 * r, 0);
            e[var(rng)] += 1;
            e[r + var(rng)] += 1;
            const int extra = static_cast<int>(rng() % static_cast<unsigned>(max_degree - 1));
            for (int k = 0; k < extra; ++k) {
                e[rng() % (2 * r)] += 1;
            }
            const int c = coeff(rng);
            if (c != 0) {
                spec.components[i].push_back({ExponentVector(std::span<const int>(e)), Rational(c, 1 + rng() % 2)});
            }
        }
    }
    return LoopModel::custom("random", spec);
}

template <typename Family>
std::size_t mismatches(const Family& a, const Family& b)
{
    std::size_t n = 0;
    a.for_each_index([&](std::span<const std::size_t> idx) {
        if constexpr (std::is_same_v<Family, JetTensor>) {
            n += count_differences(a.at(idx), b.at(idx));
        } else {
            n += a.at(idx) != b.at(idx) ? 1 : 0;
        }
    });
    return n;
}

void expect_routes_agree(const JetVector& F)
{
    const auto first = first_order_associators(F);
    EXPECT_EQ(mismatches(first.direct.l, first.via_formula.l), 0u);
    EXPECT_EQ(mismatches(first.direct.r, first.via_formula.r), 0u);
    EXPECT_EQ(mismatches(first.direct.m, first.via_formula.m), 0u);
    const auto second = second_order_associators(F);
    EXPECT_EQ(mismatches(second.direct.l, second.via_formula.l), 0u);
    EXPECT_EQ(mismatches(second.direct.r, second.via_formula.r), 0u);
    EXPECT_EQ(mismatches(second.direct.m, second.via_formula.m), 0u);
    EXPECT_EQ(mismatches(second.direct.l_hat, second.via_formula.l_hat), 0u);
    EXPECT_EQ(mismatches(second.direct.r_hat, second.via_formula.r_hat), 0u);
    EXPECT_EQ(mismatches(second.direct.m_hat, second.via_formula.m_hat), 0u);
    const auto third = third_order_associators(F);
    EXPECT_EQ(third.direct.l, third.via_formula.l);
    EXPECT_EQ(third.direct.r, third.via_formula.r);
    EXPECT_EQ(third.direct.m, third.via_formula.m);
    EXPECT_EQ(third.direct.l_hat, third.via_formula.l_hat);
    EXPECT_EQ(third.direct.r_hat, third.via_formula.r_hat);
    EXPECT_EQ(third.direct.m_hat, third.via_formula.m_hat);
}

} // namespace

TEST(Associators, RoutesAgreeOnBuiltins)
{
    for (const std::string& name : builtin_model_names()) {
        SCOPED_TRACE(name);
        expect_routes_agree(build_multiplication_jet(builtin_model(name), 4));
    }
}

// The closed formulas hold for any loop, not only Moufang ones.
TEST(Associators, RoutesAgreeOnRandomLoops)
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        const LoopModel m = random_loop(rng, 2 + trial % 2, 4);
        expect_routes_agree(build_multiplication_jet(m, 4));
    }
}

TEST(Associators, HeisenbergTensors)
{
    const StructureTensors S = extract_structure_tensors(build_multiplication_jet(LoopModel::heisenberg(), 3));
    Tensor zero3(4, 3);
    EXPECT_EQ(S.b, zero3);
    EXPECT_EQ(S.d, zero3);
    EXPECT_EQ(S.a(2, 0, 1), 1);
    EXPECT_EQ(S.a(2, 1, 0), 0);
}

TEST(Associators, CubicTensorsAreSymmetrized)
{
    // (gh)^0 = g^0 + h^0 + g^0 g^1 h^0 + g^1 h^0 h^1 for r = 2.
    CustomModelSpec spec;
    spec.dimension = 2;
    spec.components = {{{ExponentVector{1, 0, 0, 0}, 1},
                        {ExponentVector{0, 0, 1, 0}, 1},
                        {ExponentVector{1, 1, 1, 0}, 1},
                        {ExponentVector{0, 1, 1, 1}, 1}},
                       {{ExponentVector{0, 1, 0, 0}, 1}, {ExponentVector{0, 0, 0, 1}, 1}}};
    const StructureTensors S =
        extract_structure_tensors(build_multiplication_jet(LoopModel::custom("cubic", spec), 3));
    EXPECT_EQ(S.b(0, 0, 1, 0), Rational(1, 2));
    EXPECT_EQ(S.b(0, 1, 0, 0), Rational(1, 2));
    EXPECT_EQ(S.d(0, 1, 0, 1), Rational(1, 2));
    EXPECT_EQ(S.d(0, 1, 1, 0), Rational(1, 2));
}

TEST(Associators, AuxiliaryFunctionsOfHeisenberg)
{
    const AuxiliaryFunctions aux = compute_auxiliary(build_multiplication_jet(LoopModel::heisenberg(), 3));
    // u^2_0(h) = 1 * h^1, v^2_1(g) = g^0.
    EXPECT_EQ(aux.u(2, 0), Jet::variable(3, 2, 1));
    EXPECT_EQ(aux.v(2, 1), Jet::variable(3, 2, 0));
    EXPECT_EQ(aux.w(2, 0), -Jet::variable(3, 2, 1));
    EXPECT_TRUE(aux.u2(2, 0, 0).is_zero());
}

TEST(Associators, LieModelsHaveZeroAssociator)
{
    for (const char* name : {"abelian", "heisenberg", "quaternion_chart"}) {
        const JetVector A = compute_associator_jet(build_multiplication_jet(builtin_model(name), 4), 4);
        for (const Jet& a : A) {
            EXPECT_TRUE(a.is_zero()) << name;
        }
    }
    const JetVector A = compute_associator_jet(build_multiplication_jet(LoopModel::octonion_chart(), 3), 3);
    EXPECT_FALSE(A[2].is_zero());
}

TEST(Associators, OrderRequirements)
{
    const JetVector F2 = build_multiplication_jet(LoopModel::heisenberg(), 2);
    EXPECT_THROW(extract_structure_tensors(F2), std::invalid_argument);
    EXPECT_THROW(first_order_associators(F2), std::invalid_argument);
    const JetVector F3 = build_multiplication_jet(LoopModel::heisenberg(), 3);
    EXPECT_THROW(second_order_associators(F3), std::invalid_argument);
    EXPECT_THROW(third_order_associators(F3), std::invalid_argument);
}

TEST(Associators, ExportSchema)
{
    const JetVector F = build_multiplication_jet(LoopModel::heisenberg(), 4);
    const StructureTensors S = extract_structure_tensors(F);
    const auto third = third_order_associators(F);
    const auto doc = export_tensors(S, &third.direct.l);
    EXPECT_EQ(doc["dimension"], 3);
    ASSERT_EQ(doc["c"].size(), 2u);
    EXPECT_EQ(doc["c"][0], nlohmann::ordered_json::parse(R"([2,0,1,"1"])"));
    EXPECT_EQ(doc["c"][1], nlohmann::ordered_json::parse(R"([2,1,0,"-1"])"));
    EXPECT_TRUE(doc["l3"].empty());
    EXPECT_FALSE(export_tensors(S, nullptr).contains("l3"));
}
