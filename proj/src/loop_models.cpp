#include "moufang/loop_models.hpp"

#include "moufang/octonion.hpp"

#include <fstream>
#include <map>
#include <stdexcept>
#include <utility>

namespace moufang {

std::string_view to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::abelian:
        return "abelian";
    case ModelKind::heisenberg:
        return "heisenberg";
    case ModelKind::quaternion_chart:
        return "quaternion_chart";
    case ModelKind::octonion_chart:
        return "octonion_chart";
    case ModelKind::custom_polynomial:
        return "custom_polynomial";
    }
    return "unknown";
}

namespace {

std::vector<Jet> coordinates(std::size_t num_vars, int order, std::size_t first, std::size_t count)
{
    std::vector<Jet> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(Jet::variable(num_vars, order, first + k));
    }
    return out;
}

JetVector additive_law(std::size_t r, int order)
{
    const auto g = coordinates(2 * r, order, 0, r);
    const auto h = coordinates(2 * r, order, r, r);
    std::vector<Jet> out;
    for (std::size_t i = 0; i < r; ++i) {
        out.push_back(g[i] + h[i]);
    }
    return JetVector(std::move(out));
}

// sqrt(1 - t) for a jet t without constant term: sum_n binom(1/2, n) (-t)^n.
Jet sqrt_one_minus(const Jet& t)
{
    const int order = t.reliable_order();
    Jet sum = Jet::constant(t.num_vars(), order, Rational(1));
    Jet power = sum;
    Rational binom(1);
    for (int n = 1; n <= order; ++n) {
        Rational step(3 - 2 * n, 2 * n);
        step.canonicalize();
        binom *= step; // binom(1/2, n) = binom(1/2, n-1) * (1/2 - n + 1) / n
        power = power * t;
        if (power.is_zero()) {
            break;
        }
        sum += ((n % 2 == 0) ? binom : Rational(-binom)) * power;
    }
    return sum;
}

// Imaginary-part chart of the unit sphere in the quaternions (r = 3) or the
// octonions (r = 7): g -> (sqrt(1 - |g|^2), g), so that
// F(g, h) = sqrt(1 - |g|^2) h + sqrt(1 - |h|^2) g + Im(g h).
JetVector unit_sphere_chart(std::size_t r, int order)
{
    const std::size_t n = 2 * r;
    const auto g = coordinates(n, order, 0, r);
    const auto h = coordinates(n, order, r, r);
    Jet g_norm(n, order);
    Jet h_norm(n, order);
    for (std::size_t i = 0; i < r; ++i) {
        g_norm += g[i] * g[i];
        h_norm += h[i] * h[i];
    }
    const Jet g_real = sqrt_one_minus(g_norm);
    const Jet h_real = sqrt_one_minus(h_norm);

    std::vector<Jet> out;
    out.reserve(r);
    for (std::size_t i = 0; i < r; ++i) {
        out.push_back(g_real * h[i] + h_real * g[i]);
    }
    for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t k = 0; k < r; ++k) {
            if (j == k) {
                continue;
            }
            const SignedBasis p = kOctonionTable[j + 1][k + 1];
            out[static_cast<std::size_t>(p.index - 1)] += Rational(p.sign) * (g[j] * h[k]);
        }
    }
    return JetVector(std::move(out));
}

JetVector heisenberg_law(int order)
{
    std::vector<Jet> out = additive_law(3, order).components();
    // (gh)^3 = g^3 + h^3 + g^1 h^2
    out[2] += Jet::variable(6, order, 0) * Jet::variable(6, order, 4);
    return JetVector(std::move(out));
}

JetVector polynomial_law(const CustomModelSpec& spec, int order)
{
    const std::size_t n = 2 * spec.dimension;
    std::vector<Jet> out;
    out.reserve(spec.dimension);
    for (const auto& terms : spec.components) {
        std::vector<std::pair<ExponentVector, Rational>> pairs;
        pairs.reserve(terms.size());
        for (const auto& t : terms) {
            pairs.emplace_back(t.exponents, t.coefficient);
        }
        out.push_back(Jet::from_terms(n, order, pairs));
    }
    return JetVector(std::move(out));
}

} // namespace

LoopModel::LoopModel(std::string name, std::size_t dimension, ModelKind kind, Generator generator)
    : name_(std::move(name)), dimension_(dimension), kind_(kind), generator_(std::move(generator))
{
    if (dimension_ == 0) {
        throw std::invalid_argument("loop dimension must be positive");
    }
}

LoopModel LoopModel::abelian(std::size_t dimension)
{
    return LoopModel("abelian", dimension, ModelKind::abelian,
                     [dimension](int order) { return additive_law(dimension, order); });
}

LoopModel LoopModel::heisenberg()
{
    return LoopModel("heisenberg", 3, ModelKind::heisenberg, heisenberg_law);
}

LoopModel LoopModel::quaternion_chart()
{
    return LoopModel("quaternion_chart", 3, ModelKind::quaternion_chart,
                     [](int order) { return unit_sphere_chart(3, order); });
}

LoopModel LoopModel::octonion_chart()
{
    return LoopModel("octonion_chart", 7, ModelKind::octonion_chart,
                     [](int order) { return unit_sphere_chart(7, order); });
}

LoopModel LoopModel::custom(std::string name, CustomModelSpec spec)
{
    if (spec.components.size() != spec.dimension) {
        throw std::invalid_argument("custom model: expected one component per dimension");
    }
    const std::size_t dim = spec.dimension;
    return LoopModel(std::move(name), dim, ModelKind::custom_polynomial,
                     [spec = std::move(spec)](int order) { return polynomial_law(spec, order); });
}

JetVector LoopModel::generate(int order) const
{
    if (order < 1) {
        throw std::invalid_argument("multiplication jet order must be at least 1");
    }
    return generator_(order);
}

const std::vector<std::string>& builtin_model_names()
{
    static const std::vector<std::string> names{"abelian", "heisenberg", "quaternion_chart", "octonion_chart"};
    return names;
}

LoopModel builtin_model(std::string_view name)
{
    if (name == "abelian") {
        return LoopModel::abelian();
    }
    if (name == "heisenberg") {
        return LoopModel::heisenberg();
    }
    if (name == "quaternion_chart") {
        return LoopModel::quaternion_chart();
    }
    if (name == "octonion_chart") {
        return LoopModel::octonion_chart();
    }
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Custom model files
// ---------------------------------------------------------------------------

CustomModelSpec parse_custom_model(const nlohmann::json& doc)
{
    auto bad = [](const std::string& what) { return std::invalid_argument("custom model: " + what); };
    if (!doc.is_object()) {
        throw bad("document must be a JSON object");
    }
    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer() || doc["dimension"].get<long>() < 1) {
        throw bad("\"dimension\" must be a positive integer");
    }
    CustomModelSpec spec;
    spec.dimension = doc["dimension"].get<std::size_t>();
    const std::size_t n = 2 * spec.dimension;
    if (!doc.contains("components") || !doc["components"].is_array() ||
        doc["components"].size() != spec.dimension) {
        throw bad("\"components\" must be an array with one entry per dimension");
    }
    for (const auto& component : doc["components"]) {
        if (!component.is_array()) {
            throw bad("each component must be an array of [exponents, coefficient] pairs");
        }
        std::vector<PolynomialTerm> terms;
        for (const auto& pair : component) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_array()) {
                throw bad("each term must be [[exponents...], coefficient]");
            }
            if (pair[0].size() != n) {
                throw bad("exponent vectors must have length 2r = " + std::to_string(n));
            }
            std::vector<int> exps;
            for (const auto& e : pair[0]) {
                if (!e.is_number_integer() || e.get<long>() < 0 || e.get<long>() > 255) {
                    throw bad("exponents must be integers in [0, 255]");
                }
                exps.push_back(e.get<int>());
            }
            Rational coefficient;
            if (pair[1].is_string()) {
                coefficient = parse_rational(pair[1].get<std::string>());
            } else if (pair[1].is_number_integer()) {
                coefficient = parse_rational(pair[1].dump());
            } else {
                throw bad("coefficients must be \"p/q\" or decimal strings (or JSON integers)");
            }
            terms.push_back({ExponentVector(std::span<const int>(exps)), coefficient});
        }
        spec.components.push_back(std::move(terms));
    }
    return spec;
}

nlohmann::json to_json(const CustomModelSpec& spec)
{
    nlohmann::ordered_json components = nlohmann::ordered_json::array();
    for (const auto& terms : spec.components) {
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const auto& t : terms) {
            list.push_back({t.exponents.to_vector(), to_string(t.coefficient)});
        }
        components.push_back(std::move(list));
    }
    nlohmann::ordered_json doc;
    doc["dimension"] = spec.dimension;
    doc["components"] = std::move(components);
    return nlohmann::json::parse(doc.dump());
}

CustomModelSpec polynomial_spec(const JetVector& multiplication)
{
    CustomModelSpec spec;
    spec.dimension = multiplication.dimension();
    if (multiplication.num_vars() != 2 * spec.dimension) {
        throw std::invalid_argument("multiplication jet must live in 2r variables");
    }
    for (const Jet& component : multiplication) {
        std::vector<PolynomialTerm> terms;
        for (const auto& [e, c] : component.terms()) {
            terms.push_back({e, c});
        }
        spec.components.push_back(std::move(terms));
    }
    return spec;
}

std::optional<Witness> unit_law_violation(const CustomModelSpec& spec)
{
    const std::size_t r = spec.dimension;
    // Works on the terms directly so the check covers every degree, not just
    // those below the order cap.
    for (std::size_t i = 0; i < r; ++i) {
        for (int block = 0; block < 2; ++block) {
            const std::size_t first = block == 0 ? 0 : r;
            std::map<ExponentVector, Rational, GradedLexLess> restricted;
            for (const auto& t : spec.components[i]) {
                bool inside = true;
                for (std::size_t v = 0; v < 2 * r; ++v) {
                    if (t.exponents[v] != 0 && (v < first || v >= first + r)) {
                        inside = false;
                        break;
                    }
                }
                if (inside) {
                    restricted[t.exponents] += t.coefficient;
                }
            }
            const ExponentVector expected = ExponentVector::unit(2 * r, first + i);
            for (const auto& [e, c] : restricted) {
                const Rational want = e == expected ? Rational(1) : Rational(0);
                if (c != want) {
                    return Witness{block == 0 ? "unit law F(g,0) = g" : "unit law F(0,h) = h", i, {}, e, c, want};
                }
            }
            if (!restricted.contains(expected)) {
                return Witness{block == 0 ? "unit law F(g,0) = g" : "unit law F(0,h) = h", i, {}, expected,
                               Rational(0), Rational(1)};
            }
        }
    }
    return std::nullopt;
}

LoopModel load_custom_model(const nlohmann::json& doc, std::string name)
{
    CustomModelSpec spec = parse_custom_model(doc);
    if (auto w = unit_law_violation(spec)) {
        throw std::invalid_argument("custom model violates the unit law: " + describe(*w));
    }
    if (doc.contains("name") && doc["name"].is_string()) {
        name = doc["name"].get<std::string>();
    }
    return LoopModel::custom(std::move(name), std::move(spec));
}

LoopModel load_custom_model(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open custom model file '" + path.string() + "'");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("custom model file '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return load_custom_model(doc, "file:" + path.string());
}

// ---------------------------------------------------------------------------
// Jet-level loop operations
// ---------------------------------------------------------------------------

namespace {

std::optional<Witness> unit_law_violation(const JetVector& F, std::size_t r)
{
    const int order = F.reliable_order();
    const auto g_slots = index_block(0, r);
    const auto h_slots = index_block(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        const Jet expected = Jet::variable(r, order, i);
        if (auto d = first_difference(restrict_to(F[i], g_slots), expected)) {
            ExponentVector e(2 * r);
            for (std::size_t v = 0; v < r; ++v) {
                e.set(v, d->exponents[v]);
            }
            return Witness{"unit law F(g,0) = g", i, {}, e, d->lhs, d->rhs};
        }
        if (auto d = first_difference(restrict_to(F[i], h_slots), expected)) {
            ExponentVector e(2 * r);
            for (std::size_t v = 0; v < r; ++v) {
                e.set(r + v, d->exponents[v]);
            }
            return Witness{"unit law F(0,h) = h", i, {}, e, d->lhs, d->rhs};
        }
    }
    return std::nullopt;
}

} // namespace

JetVector build_multiplication_jet(const LoopModel& model, int order)
{
    JetVector F = model.generate(order);
    if (F.dimension() != model.dimension() || F.num_vars() != 2 * model.dimension()) {
        throw std::logic_error("model generator returned a jet of the wrong shape");
    }
    if (auto w = unit_law_violation(F, model.dimension())) {
        throw std::invalid_argument("model '" + model.name() + "' violates the unit law: " + describe(*w));
    }
    return F;
}

JetVector loop_product(const JetVector& multiplication, const JetVector& x, const JetVector& y)
{
    if (x.dimension() != y.dimension() || 2 * x.dimension() != multiplication.num_vars()) {
        throw std::invalid_argument("loop_product: argument dimensions do not match the multiplication");
    }
    std::vector<Jet> args = x.components();
    args.insert(args.end(), y.begin(), y.end());
    return substitute(multiplication, args);
}

Rational determinant(std::vector<std::vector<Rational>> m)
{
    const std::size_t n = m.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            return Rational(0);
        }
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == 0) {
                continue;
            }
            const Rational factor = m[row][col] / m[col][col];
            for (std::size_t k = col; k < n; ++k) {
                m[row][k] -= factor * m[col][k];
            }
        }
    }
    return det;
}

CheckResult check_loop_axioms(const LoopModel& model, int order)
{
    CheckRecorder rec("loop_axioms", model.name(), order);
    const std::size_t r = model.dimension();
    const JetVector F = model.generate(order);
    const auto g_slots = index_block(0, r);
    const auto h_slots = index_block(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        const Jet expected = Jet::variable(r, order, i);
        rec.expect_equal("unit law F(g,0) = g", restrict_to(F[i], g_slots), expected, i);
        rec.expect_equal("unit law F(0,h) = h", restrict_to(F[i], h_slots), expected, i);
    }
    std::vector<std::vector<Rational>> u0(r, std::vector<Rational>(r));
    std::vector<std::vector<Rational>> v0(r, std::vector<Rational>(r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            u0[i][j] = F[i].coefficient(ExponentVector::unit(2 * r, j));
            v0[i][j] = F[i].coefficient(ExponentVector::unit(2 * r, r + j));
        }
    }
    const Rational det_u = determinant(u0);
    const Rational det_v = determinant(v0);
    rec.expect_nonzero("det u(e) != 0", det_u);
    rec.expect_nonzero("det v(e) != 0", det_v);
    rec.note("det u(e) = " + to_string(det_u) + ", det v(e) = " + to_string(det_v));
    return std::move(rec).finish();
}

CheckResult check_moufang_identities(const LoopModel& model, int order)
{
    if (order < 2) {
        throw std::invalid_argument("Moufang identities need order >= 2");
    }
    CheckRecorder rec("moufang_identities", model.name(), order);
    const std::size_t r = model.dimension();
    const JetVector F = build_multiplication_jet(model, order);
    auto compare = [&](std::string_view equation, const JetVector& lhs, const JetVector& rhs) {
        for (std::size_t i = 0; i < r; ++i) {
            rec.expect_equal(equation, lhs[i], rhs[i], i);
        }
    };
    auto mul = [&F](const JetVector& x, const JetVector& y) { return loop_product(F, x, y); };

    {
        const std::size_t n = 3 * r;
        const auto g = JetVector::variables(n, order, index_block(0, r));
        const auto h = JetVector::variables(n, order, index_block(r, r));
        const auto k = JetVector::variables(n, order, index_block(2 * r, r));
        compare("g(h.gk) = (gh.g)k", mul(g, mul(h, mul(g, k))), mul(mul(mul(g, h), g), k));
        compare("(kg.h)g = k(g.hg)", mul(mul(mul(k, g), h), g), mul(k, mul(g, mul(h, g))));
        compare("(gh)(kg) = g(hk.g)", mul(mul(g, h), mul(k, g)), mul(g, mul(mul(h, k), g)));
    }
    {
        const std::size_t n = 2 * r;
        const auto g = JetVector::variables(n, order, index_block(0, r));
        const auto h = JetVector::variables(n, order, index_block(r, r));
        const auto gg = mul(g, g);
        compare("g.gh = g^2 h", mul(g, mul(g, h)), mul(gg, h));
        compare("hg.g = h g^2", mul(mul(h, g), g), mul(h, gg));
        compare("gh.g = g.hg", mul(mul(g, h), g), mul(g, mul(h, g)));
    }
    return std::move(rec).finish();
}

JetVector invert_jet(const LoopModel& model, int order)
{
    const std::size_t r = model.dimension();
    const JetVector F = build_multiplication_jet(model, order);
    const auto g = JetVector::variables(r, order, index_block(0, r));
    // iota <- iota - F(g, iota) fixes one more degree per pass since
    // dF/dh(0, 0) is the identity.
    JetVector iota = -g;
    for (int pass = 0; pass <= order; ++pass) {
        JetVector next = iota - loop_product(F, g, iota);
        if (next == iota) {
            break;
        }
        iota = std::move(next);
    }
    return iota;
}

CheckResult check_two_sided_inverse(const LoopModel& model, int order)
{
    CheckRecorder rec("two_sided_inverse", model.name(), order);
    const std::size_t r = model.dimension();
    const JetVector F = build_multiplication_jet(model, order);
    const auto g = JetVector::variables(r, order, index_block(0, r));
    const JetVector iota = invert_jet(model, order);
    const JetVector right = loop_product(F, g, iota);
    const JetVector left = loop_product(F, iota, g);
    for (std::size_t i = 0; i < r; ++i) {
        rec.expect_zero("g . inv(g) = e", right[i], i);
        rec.expect_zero("inv(g) . g = e", left[i], i);
    }
    return std::move(rec).finish();
}

} // namespace moufang
