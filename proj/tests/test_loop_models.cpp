#include "moufang/loop_models.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

using namespace moufang;

namespace {

const char* kData = MOUFANG_DATA_DIR;

nlohmann::json law(std::size_t r, nlohmann::json components)
{
    return {{"dimension", r}, {"components", std::move(components)}};
}

// F = g + h in 2 dimensions plus extra terms for component 1.
nlohmann::json additive_2d(nlohmann::json extra)
{
    nlohmann::json c0 = {{{1, 0, 0, 0}, "1"}, {{0, 0, 1, 0}, "1"}};
    nlohmann::json c1 = {{{0, 1, 0, 0}, "1"}, {{0, 0, 0, 1}, "1"}};
    for (auto& t : extra) {
        c1.push_back(t);
    }
    return law(2, {c0, c1});
}

} // namespace

TEST(LoopModels, BuiltinsPassAxiomsMoufangAndInverse)
{
    for (const std::string& name : builtin_model_names()) {
        const LoopModel m = builtin_model(name);
        EXPECT_EQ(m.name(), name);
        EXPECT_TRUE(check_loop_axioms(m, 4).passed) << name;
        EXPECT_TRUE(check_moufang_identities(m, 4).passed) << name;
        EXPECT_TRUE(check_two_sided_inverse(m, 4).passed) << name;
    }
}

TEST(LoopModels, Dimensions)
{
    EXPECT_EQ(builtin_model("abelian").dimension(), 3u);
    EXPECT_EQ(builtin_model("heisenberg").dimension(), 3u);
    EXPECT_EQ(builtin_model("quaternion_chart").dimension(), 3u);
    EXPECT_EQ(builtin_model("octonion_chart").dimension(), 7u);
    EXPECT_THROW(builtin_model("sedenion"), std::invalid_argument);
}

TEST(LoopModels, GenerateRejectsBadOrders)
{
    const LoopModel m = LoopModel::octonion_chart();
    EXPECT_THROW(m.generate(0), std::invalid_argument);
    EXPECT_THROW(build_multiplication_jet(m, max_order() + 1), std::domain_error);
}

TEST(LoopModels, QuaternionChartLowOrderTerms)
{
    // (gh)^i = g^i + h^i + (g x h)^i - |g|^2 h^i / 2 - |h|^2 g^i / 2 + ...
    const JetVector F = build_multiplication_jet(LoopModel::quaternion_chart(), 3);
    EXPECT_EQ(F[2].coefficient({1, 0, 0, 0, 1, 0}), 1);
    EXPECT_EQ(F[2].coefficient({0, 1, 0, 1, 0, 0}), -1);
    EXPECT_EQ(F[0].coefficient({2, 0, 0, 1, 0, 0}), Rational(-1, 2));
    EXPECT_EQ(F[0].coefficient({2, 1, 0, 0, 0, 0}), 0);
    EXPECT_EQ(F[0].coefficient({0, 2, 0, 1, 0, 0}), Rational(-1, 2));
    EXPECT_EQ(F[0].coefficient({1, 0, 0, 0, 2, 0}), Rational(-1, 2));
}

TEST(LoopModels, CustomRoundTrip)
{
    const JetVector F = build_multiplication_jet(LoopModel::heisenberg(), 4);
    const CustomModelSpec spec = polynomial_spec(F);
    const nlohmann::json doc = to_json(spec);
    const LoopModel again = load_custom_model(doc, "copy");
    EXPECT_EQ(again.kind(), ModelKind::custom_polynomial);
    EXPECT_EQ(build_multiplication_jet(again, 4), F);
    EXPECT_TRUE(check_moufang_identities(again, 4).passed);
}

TEST(LoopModels, CustomNameFieldOverrides)
{
    nlohmann::json doc = additive_2d(nlohmann::json::array());
    doc["name"] = "plane";
    EXPECT_EQ(load_custom_model(doc, "fallback").name(), "plane");
}

TEST(LoopModels, UnitLawViolationIsRejected)
{
    const nlohmann::json doc = additive_2d({{{1, 0, 0, 0}, "1/2"}});
    const auto w = unit_law_violation(parse_custom_model(doc));
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->component, 1u);
    EXPECT_THROW(load_custom_model(doc, "bad"), std::invalid_argument);
}

TEST(LoopModels, MalformedDocuments)
{
    EXPECT_THROW(parse_custom_model(nlohmann::json::object()), std::invalid_argument);
    EXPECT_THROW(parse_custom_model(law(2, {{{{1, 0, 0}, "1"}}, {}})), std::invalid_argument);
    EXPECT_THROW(parse_custom_model(additive_2d({{{1, 1, 0, 0}, "x"}})), std::invalid_argument);
    EXPECT_THROW(load_custom_model(std::filesystem::path("/nonexistent/law.json")), std::invalid_argument);
}

TEST(LoopModels, NonMoufangCounterexample)
{
    const LoopModel m = load_custom_model(std::filesystem::path(kData) / "non_moufang.json");
    EXPECT_TRUE(check_loop_axioms(m, 4).passed);
    const CheckResult r = check_moufang_identities(m, 4);
    EXPECT_FALSE(r.passed);
    ASSERT_TRUE(r.first_failure.has_value());
    EXPECT_NE(r.first_failure->lhs, r.first_failure->rhs);
    EXPECT_EQ(r.first_failure->exponents.size(), 9u);
}

TEST(LoopModels, LoopProductIsComposition)
{
    const JetVector F = build_multiplication_jet(LoopModel::heisenberg(), 3);
    const std::vector<std::size_t> g{0, 1, 2};
    const std::vector<std::size_t> h{3, 4, 5};
    const JetVector x = JetVector::variables(6, 3, g);
    const JetVector y = JetVector::variables(6, 3, h);
    EXPECT_EQ(loop_product(F, x, y), F);
}

TEST(LoopModels, Determinant)
{
    EXPECT_EQ(determinant({{1, 2}, {3, 4}}), -2);
    EXPECT_EQ(determinant({{0, 1, 0}, {1, 0, 0}, {0, 0, Rational(1, 2)}}), Rational(-1, 2));
    EXPECT_EQ(determinant({{1, 2}, {2, 4}}), 0);
}

TEST(LoopModels, InverseIsTwoSided)
{
    const JetVector inv = invert_jet(LoopModel::quaternion_chart(), 5);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(inv[i], -Jet::variable(3, 5, i));
    }
}
