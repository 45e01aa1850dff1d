// Acceptance criteria A1-A8. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails. argv[1] is the path of the moufang_check tool.

#include "moufang/associators.hpp"
#include "moufang/loop_models.hpp"
#include "moufang/octonion.hpp"
#include "moufang/verifier.hpp"

#include "json.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace moufang;

namespace {

const std::string kData = MOUFANG_DATA_DIR;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

bool all_passed(const std::vector<CheckResult>& results, Outcome& o)
{
    bool ok = true;
    for (const CheckResult& r : results) {
        if (!r.passed || r.discrepancies != 0) {
            o.require(false, r.model + " " + r.identity + " failed");
            ok = false;
        }
    }
    return ok;
}

bool all_zero(const JetTensor& t)
{
    bool zero = true;
    t.for_each_index([&](std::span<const std::size_t> idx) { zero = zero && t.at(idx).is_zero(); });
    return zero;
}

bool all_zero(const Tensor& t)
{
    bool zero = true;
    t.for_each_index([&](std::span<const std::size_t> idx) { zero = zero && t.at(idx) == 0; });
    return zero;
}

struct Shell {
    int status;
    std::string out;
};

Shell run(const std::string& command)
{
    Shell s{-1, {}};
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe) {
        return s;
    }
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        s.out.append(buf.data(), n);
    }
    const int raw = pclose(pipe);
    s.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return s;
}

std::string quoted(const std::string& s)
{
    return "'" + s + "'";
}

Outcome a1()
{
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const CheckResult r = check_moufang_identities(LoopModel::octonion_chart(), 4);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(r.passed && r.discrepancies == 0, "Moufang/alt identities failed");
    o.require(r.verified_order == 4, "verified order " + std::to_string(r.verified_order));
    o.require(seconds < 300, "runtime " + std::to_string(seconds) + " s");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(r.comparisons) + " jet equalities in " +
                std::to_string(seconds).substr(0, 5) + " s";
    return o;
}

Outcome a2()
{
    Outcome o;
    const std::vector<CheckId> ids{CheckId::first_minimality, CheckId::second_minimality, CheckId::third_minimality};
    all_passed(run_suite(LoopModel::octonion_chart(), 4, ids), o);
    for (const char* name : {"abelian", "heisenberg", "quaternion_chart"}) {
        const Tower t(builtin_model(name), 4);
        bool zero = true;
        for (const Jet& a : t.associator()) {
            zero = zero && a.is_zero();
        }
        const auto& f = t.first_direct();
        const auto& s = t.second_direct();
        const auto& th = t.third_direct();
        zero = zero && all_zero(f.l) && all_zero(f.r) && all_zero(f.m);
        zero = zero && all_zero(s.l) && all_zero(s.r) && all_zero(s.m) && all_zero(s.l_hat) && all_zero(s.r_hat) &&
               all_zero(s.m_hat);
        zero = zero && all_zero(th.l) && all_zero(th.r) && all_zero(th.m) && all_zero(th.l_hat) &&
               all_zero(th.r_hat) && all_zero(th.m_hat);
        o.require(zero, std::string(name) + " has a nonzero associator family");
        all_passed(run_suite(builtin_model(name), 4, ids), o);
    }
    const Tower oct(LoopModel::octonion_chart(), 4);
    o.require(!all_zero(oct.third_direct().l), "octonion third-order associator unexpectedly zero");
    return o;
}

Outcome a3()
{
    Outcome o;
    const std::vector<CheckId> ids{CheckId::first_order_formulas, CheckId::second_order_formulas,
                                   CheckId::third_order_formulas};
    std::size_t comparisons = 0;
    for (const std::string& name : builtin_model_names()) {
        const auto results = run_suite(builtin_model(name), 4, ids);
        for (const CheckResult& r : results) {
            comparisons += r.comparisons;
        }
        all_passed(results, o);
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(comparisons) + " comparisons, 0 discrepancies";
    return o;
}

Outcome a4()
{
    Outcome o;
    const std::vector<CheckId> ids{CheckId::generalized_maurer_cartan, CheckId::commutation_relations};
    all_passed(run_suite(LoopModel::octonion_chart(), 4, ids), o);

    // 49 basis pairs, independently of the check's own loop.
    const Tower oct(LoopModel::octonion_chart(), 4);
    const AlgebraConstants& A = oct.algebra_constants();
    std::size_t pairs = 0;
    bool cross_nonzero = false;
    for (std::size_t j = 0; j < 7; ++j) {
        for (std::size_t k = 0; k < 7; ++k) {
            const TangentVector x = TangentVector::basis(7, j), y = TangentVector::basis(7, k);
            const auto Lx = left_translation(oct.auxiliary(), x), Ly = left_translation(oct.auxiliary(), y);
            const auto Rx = right_translation(oct.auxiliary(), x), Ry = right_translation(oct.auxiliary(), y);
            const auto LR = operator_bracket(Lx, Ry);
            const auto a = operator_bracket(Lx, Ly) -
                           (left_translation(oct.auxiliary(), bracket(A, x, y)) - Rational(2) * LR);
            const auto b = operator_bracket(Rx, Ry) -
                           (right_translation(oct.auxiliary(), bracket(A, y, x)) - Rational(2) * operator_bracket(Rx, Ly));
            const auto c = LR - operator_bracket(Rx, Ly);
            bool ok = true;
            for (std::size_t i = 0; i < 7; ++i) {
                ok = ok && a.coefficients[i].is_zero() && b.coefficients[i].is_zero() && c.coefficients[i].is_zero();
                cross_nonzero = cross_nonzero || !LR.coefficients[i].is_zero();
            }
            pairs += ok ? 1 : 0;
        }
    }
    o.require(pairs == 49, "commutation relations hold on " + std::to_string(pairs) + " of 49 pairs");
    o.require(cross_nonzero, "octonion cross terms unexpectedly vanish");

    for (const char* name : {"abelian", "heisenberg", "quaternion_chart"}) {
        const Tower t(builtin_model(name), 4);
        const std::size_t r = t.model().dimension();
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) {
                const TangentVector x = TangentVector::basis(r, j), y = TangentVector::basis(r, k);
                const auto LR = operator_bracket(left_translation(t.auxiliary(), x), right_translation(t.auxiliary(), y));
                const auto classical = operator_bracket(left_translation(t.auxiliary(), x),
                                                        left_translation(t.auxiliary(), y)) -
                                       left_translation(t.auxiliary(), bracket(t.algebra_constants(), x, y));
                for (std::size_t i = 0; i < r; ++i) {
                    o.require(LR.coefficients[i].is_zero(), std::string(name) + " [L_x,R_y] nonzero");
                    o.require(classical.coefficients[i].is_zero(), std::string(name) + " classical Maurer-Cartan fails");
                }
            }
        }
        all_passed(run_suite(builtin_model(name), 4, ids), o);
    }
    return o;
}

Outcome a5(const std::string& cli)
{
    Outcome o;
    const auto path = std::filesystem::temp_directory_path() / "moufang_acceptance_octonion_tensors.json";
    const Shell exported =
        run(quoted(cli) + " --model octonion_chart --order 4 --checks loop_axioms --export-tensors " +
            quoted(path.string()));
    o.require(exported.status == 0, "tensor export failed");
    std::ifstream in(path);
    const AlgebraConstants A = algebra_constants_from_json(nlohmann::json::parse(in));
    o.require(A.l3.has_value(), "export lacks l3");

    const CheckResult jacobi = check_jacobi_identity(A, "octonion_chart");
    o.require(!jacobi.passed && jacobi.first_failure.has_value(), "Jacobi identity did not fail");
    const TangentVector J = jacobiator(A, TangentVector::basis(7, 0), TangentVector::basis(7, 1),
                                       TangentVector::basis(7, 3));
    o.require(!J.is_zero(), "J(e1,e2,e4) = 0");
    o.require(check_malcev_identity(A).passed, "Mal'tsev identity failed");
    const CheckResult akivis = check_akivis_identity(A);
    o.require(akivis.passed, "Akivis identity failed");
    o.require(akivis.comparisons >= 7 * 7 * 7 * 7, "Akivis tensor form not exhaustive");
    o.require(check_moufang_akivis(A).passed, "J = 6(x,y,z) failed");

    const Tower heis(LoopModel::heisenberg(), 4);
    o.require(check_jacobi_identity(heis.algebra_constants()).passed, "heisenberg Jacobi failed");
    std::filesystem::remove(path);
    return o;
}

// Closed-form chart through the signed multiplication table.
std::array<double, 7> chart(const std::vector<double>& p)
{
    Octonion g{}, h{};
    double gg = 0, hh = 0;
    for (std::size_t k = 0; k < 7; ++k) {
        g[k + 1] = p[k];
        h[k + 1] = p[7 + k];
        gg += p[k] * p[k];
        hh += p[7 + k] * p[7 + k];
    }
    const Octonion gh = octonion_multiply(g, h);
    std::array<double, 7> out;
    for (std::size_t k = 0; k < 7; ++k) {
        out[k] = std::sqrt(1 - gg) * h[k + 1] + std::sqrt(1 - hh) * g[k + 1] + gh[k + 1];
    }
    return out;
}

// Slope of log(err) against log(eps), least squares.
double fitted_order(const std::vector<double>& eps, const std::vector<double>& err)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const double x = std::log(eps[k]), y = std::log(err[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome a6()
{
    Outcome o;
    const std::vector<double> eps{0.1, 0.05, 0.025};
    const JetVector reference = build_multiplication_jet(LoopModel::octonion_chart(), 6);

    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> num(-1000, 1000);
    std::vector<std::vector<Rational>> directions;
    for (int t = 0; t < 8; ++t) {
        std::vector<Rational> d(14);
        for (Rational& c : d) {
            c = Rational(num(rng), 1000);
            c.canonicalize();
        }
        directions.push_back(d);
    }

    for (int D : {3, 4}) {
        const JetVector F = build_multiplication_jet(LoopModel::octonion_chart(), D);
        int first_omitted = 0;
        for (int deg = D + 1; deg <= 6 && first_omitted == 0; ++deg) {
            for (const Jet& c : reference) {
                for (const auto& [e, coeff] : c.terms()) {
                    if (e.total_degree() == deg) {
                        first_omitted = deg;
                    }
                }
            }
        }
        std::vector<double> errors;
        for (double e : eps) {
            double worst = 0;
            for (const auto& dir : directions) {
                double norm = 0;
                for (const Rational& c : dir) {
                    norm += c.get_d() * c.get_d();
                }
                // Rational point with norm eps to double precision.
                Rational scale(e / std::sqrt(norm));
                std::vector<Rational> point;
                std::vector<double> dpoint;
                for (const Rational& c : dir) {
                    point.push_back(c * scale);
                    dpoint.push_back(point.back().get_d());
                }
                const auto exact = chart(dpoint);
                for (std::size_t i = 0; i < 7; ++i) {
                    worst = std::max(worst, std::abs(evaluate(F[i], point).get_d() - exact[i]));
                }
            }
            errors.push_back(worst);
        }
        const double order = fitted_order(eps, errors);
        std::ostringstream msg;
        msg.precision(3);
        msg << "D=" << D << " observed " << order << " (first omitted degree " << first_omitted << ")";
        o.require(order >= D + 1 - 0.5, msg.str() + " below D+1");
        o.require(std::abs(order - first_omitted) <= 0.5, msg.str() + " off the first omitted degree");
        o.require(errors[0] > errors[1] && errors[1] > errors[2], msg.str() + " not decreasing");
        o.detail += (o.detail.empty() ? "" : "; ") + msg.str();
    }
    return o;
}

Outcome a7()
{
    Outcome o;
    const LoopModel m = load_custom_model(std::filesystem::path(kData) / "non_moufang.json");
    o.require(check_loop_axioms(m, 4).passed, "axioms fail");
    for (const auto& r : {check_moufang_identities(m, 4), check_first_minimality(Tower(m, 4))}) {
        o.require(!r.passed, r.identity + " passed");
        o.require(r.first_failure.has_value() && r.first_failure->lhs != r.first_failure->rhs,
                  r.identity + " lacks a coefficient witness");
        if (r.first_failure) {
            o.detail += (o.detail.empty() ? "" : "; ") + r.identity + " witness " + describe(*r.first_failure);
        }
    }
    return o;
}

bool valid_report(const nlohmann::json& doc, std::string& why)
{
    auto fail = [&](const std::string& w) {
        why = w;
        return false;
    };
    if (!doc.is_object()) return fail("not an object");
    for (const char* key : {"config", "version", "results", "overall_pass"}) {
        if (!doc.contains(key)) return fail(std::string("missing ") + key);
    }
    if (!doc["config"].is_object() || !doc["version"].is_string() || !doc["results"].is_array() ||
        !doc["overall_pass"].is_boolean()) {
        return fail("top-level types");
    }
    bool all = true;
    for (const auto& r : doc["results"]) {
        if (!r["identity"].is_string() || !r["model"].is_string() || !r["requested_order"].is_number_integer() ||
            !r["verified_order"].is_number_integer() || !r["passed"].is_boolean() || !r.contains("first_failure")) {
            return fail("result fields");
        }
        const auto& w = r["first_failure"];
        if (!w.is_null()) {
            if (!w["component"].is_number_integer() || !w["exponents"].is_array() || !w["lhs"].is_string() ||
                !w["rhs"].is_string()) {
                return fail("witness fields");
            }
        }
        all = all && r["passed"].get<bool>();
    }
    if (all != doc["overall_pass"].get<bool>()) return fail("overall_pass inconsistent");
    return true;
}

Outcome a8(const std::string& cli)
{
    Outcome o;
    const Shell run_json = run(quoted(cli) + " --model octonion_chart --order 4 --checks all --output json");
    o.require(run_json.status == 0, "octonion run exit " + std::to_string(run_json.status));
    try {
        const auto doc = nlohmann::json::parse(run_json.out);
        std::string why;
        o.require(valid_report(doc, why), "schema: " + why);
        o.require(doc["results"].size() == 18, "expected 18 results");
    } catch (const std::exception& e) {
        o.require(false, std::string("json: ") + e.what());
    }

    const auto dir = std::filesystem::temp_directory_path();
    const auto clean = dir / "moufang_acceptance_octonion_law.json";
    const auto perturbed = dir / "moufang_acceptance_octonion_perturbed.json";
    const CustomModelSpec spec = polynomial_spec(build_multiplication_jet(LoopModel::octonion_chart(), 4));
    std::ofstream(clean) << to_json(spec).dump();
    CustomModelSpec bad = spec;
    bool changed = false;
    for (PolynomialTerm& t : bad.components[0]) {
        if (t.exponents.total_degree() == 3) {
            t.coefficient += 1;
            changed = true;
            break;
        }
    }
    o.require(changed, "no cubic term to perturb");
    std::ofstream(perturbed) << to_json(bad).dump();

    const Shell control = run(quoted(cli) + " --model " + quoted("file:" + clean.string()) + " --order 4");
    o.require(control.status == 0, "unperturbed law exit " + std::to_string(control.status));
    const Shell flipped = run(quoted(cli) + " --model " + quoted("file:" + perturbed.string()) + " --order 4");
    o.require(flipped.status == 1, "perturbed law exit " + std::to_string(flipped.status));
    std::filesystem::remove(clean);
    std::filesystem::remove(perturbed);
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    if (argc < 2) {
        std::cerr << "usage: acceptance <path to moufang_check>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"A1 Moufang axioms at jet level", a1},
        {"A2 minimality tower", a2},
        {"A3 formula vs direct", a3},
        {"A4 generalized Maurer-Cartan", a4},
        {"A5 tangent algebra", [&] { return a5(cli); }},
        {"A6 numeric convergence", a6},
        {"A7 negative control", a7},
        {"A8 CLI contract", [&] { return a8(cli); }},
    };
    bool all = true;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        all = all && o.ok;
        std::cout << (o.ok ? "PASS " : "FAIL ") << name << (o.detail.empty() ? "" : " (" + o.detail + ")") << "\n";
    }
    return all ? 0 : 1;
}
