#include "moufang/associators.hpp"

#include "moufang/loop_models.hpp"

#include <stdexcept>
#include <string>

namespace moufang {

namespace {

void require_order(const JetVector& F, int needed, const char* what)
{
    if (F.reliable_order() < needed) {
        throw std::invalid_argument(std::string(what) + " needs a multiplication jet of order >= " +
                                    std::to_string(needed) + ", got " + std::to_string(F.reliable_order()));
    }
    if (F.num_vars() != 2 * F.dimension()) {
        throw std::invalid_argument(std::string(what) + ": multiplication jet must live in 2r variables");
    }
}

ExponentVector monomial(std::size_t num_vars, std::initializer_list<std::size_t> vars)
{
    ExponentVector e(num_vars);
    for (std::size_t v : vars) {
        e.set(v, e[v] + 1);
    }
    return e;
}

Jet zero_jet(const Jet& like)
{
    return Jet(like.num_vars(), like.reliable_order());
}

} // namespace

StructureTensors extract_structure_tensors(const JetVector& F)
{
    require_order(F, 3, "structure tensor extraction");
    const std::size_t r = F.dimension();
    const std::size_t n = 2 * r;
    StructureTensors out{r, Tensor(3, r), Tensor(4, r), Tensor(4, r), Tensor(3, r)};
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) {
                out.a(i, j, k) = F[i].coefficient(monomial(n, {j, r + k}));
            }
        }
        // g^j g^k h^l appears once for j == k and collects b_jkl + b_kjl otherwise.
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = j; k < r; ++k) {
                for (std::size_t l = 0; l < r; ++l) {
                    Rational coeff = F[i].coefficient(monomial(n, {j, k, r + l}));
                    if (j != k) {
                        coeff /= 2;
                    }
                    out.b(i, j, k, l) = coeff;
                    out.b(i, k, j, l) = coeff;
                }
            }
        }
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) {
                for (std::size_t l = k; l < r; ++l) {
                    Rational coeff = F[i].coefficient(monomial(n, {j, r + k, r + l}));
                    if (k != l) {
                        coeff /= 2;
                    }
                    out.d(i, j, k, l) = coeff;
                    out.d(i, j, l, k) = coeff;
                }
            }
        }
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) {
                out.c(i, j, k) = out.a(i, j, k) - out.a(i, k, j);
            }
        }
    }
    return out;
}

AuxiliaryFunctions compute_auxiliary(const JetVector& F)
{
    require_order(F, 2, "auxiliary functions");
    const std::size_t r = F.dimension();
    const auto g_slots = index_block(0, r);
    const auto h_slots = index_block(r, r);
    AuxiliaryFunctions aux{r, JetTensor(2, r), JetTensor(2, r), JetTensor(2, r), JetTensor(3, r), JetTensor(3, r)};
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            const Jet dg = partial_derivative(F[i], j);
            const Jet dh = partial_derivative(F[i], r + j);
            aux.u(i, j) = restrict_to(dg, h_slots);
            aux.v(i, j) = restrict_to(dh, g_slots);
            aux.w(i, j) = -(aux.u(i, j) + aux.v(i, j));
            for (std::size_t k = 0; k < r; ++k) {
                aux.u2(i, j, k) = restrict_to(partial_derivative(dg, k), h_slots);
                aux.v2(i, j, k) = restrict_to(partial_derivative(dh, r + k), g_slots);
            }
        }
    }
    return aux;
}

JetVector compute_associator_jet(const JetVector& F, int order)
{
    require_order(F, order, "associator jet");
    const std::size_t r = F.dimension();
    const std::size_t n = 3 * r;
    std::vector<Jet> truncated;
    for (const Jet& c : F) {
        truncated.push_back(c.truncated(order));
    }
    const JetVector mult(std::move(truncated));
    const auto g = JetVector::variables(n, order, index_block(0, r));
    const auto h = JetVector::variables(n, order, index_block(r, r));
    const auto k = JetVector::variables(n, order, index_block(2 * r, r));
    return loop_product(mult, g, loop_product(mult, h, k)) - loop_product(mult, loop_product(mult, g, h), k);
}

// ---------------------------------------------------------------------------
// First order
// ---------------------------------------------------------------------------

FirstOrderAssociators first_order_direct(const JetVector& A, std::size_t r)
{
    if (A.num_vars() != 3 * r || A.dimension() != r) {
        throw std::invalid_argument("associator jet must have r components in 3r variables");
    }
    const auto gh = index_block(0, 2 * r);
    const auto hk = index_block(r, 2 * r);
    std::vector<std::size_t> gk = index_block(0, r);
    for (std::size_t s : index_block(2 * r, r)) {
        gk.push_back(s);
    }
    FirstOrderAssociators out{JetTensor(2, r), JetTensor(2, r), JetTensor(2, r)};
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            out.l(i, j) = restrict_to(partial_derivative(A[i], j), hk);
            out.m(i, j) = restrict_to(partial_derivative(A[i], r + j), gk);
            out.r(i, j) = restrict_to(partial_derivative(A[i], 2 * r + j), gh);
        }
    }
    return out;
}

FirstOrderAssociators first_order_formula(const JetVector& F, const AuxiliaryFunctions& aux)
{
    require_order(F, 1, "first-order formulas");
    const std::size_t r = F.dimension();
    const std::size_t n = 2 * r;
    const auto g_slots = index_block(0, r);
    const auto h_slots = index_block(r, r);

    JetTensor u_g(2, r), u_h(2, r), v_g(2, r), v_h(2, r), u_gh(2, r), v_gh(2, r);
    JetTensor dF_g(2, r), dF_h(2, r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            u_g(i, j) = embed(aux.u(i, j), n, g_slots);
            u_h(i, j) = embed(aux.u(i, j), n, h_slots);
            v_g(i, j) = embed(aux.v(i, j), n, g_slots);
            v_h(i, j) = embed(aux.v(i, j), n, h_slots);
            u_gh(i, j) = substitute(aux.u(i, j), F.components());
            v_gh(i, j) = substitute(aux.v(i, j), F.components());
            dF_g(i, j) = partial_derivative(F[i], j);
            dF_h(i, j) = partial_derivative(F[i], r + j);
        }
    }

    FirstOrderAssociators out{JetTensor(2, r), JetTensor(2, r), JetTensor(2, r)};
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            // l = -u^s_j(g) dF^i/dg^s + u^i_j(gh)
            Jet l = u_gh(i, j);
            // r = -v^i_j(gh) + v^s_j(h) dF^i/dh^s
            Jet rr = -v_gh(i, j);
            // m = -v^s_j(g) dF^i/dg^s + u^s_j(h) dF^i/dh^s
            Jet m = zero_jet(dF_g(i, 0));
            for (std::size_t s = 0; s < r; ++s) {
                l -= u_g(s, j) * dF_g(i, s);
                rr += v_h(s, j) * dF_h(i, s);
                m -= v_g(s, j) * dF_g(i, s);
                m += u_h(s, j) * dF_h(i, s);
            }
            out.l(i, j) = std::move(l);
            out.r(i, j) = std::move(rr);
            out.m(i, j) = std::move(m);
        }
    }
    return out;
}

TwoRoutes<FirstOrderAssociators> first_order_associators(const JetVector& F)
{
    require_order(F, 3, "first-order associators");
    const AuxiliaryFunctions aux = compute_auxiliary(F);
    return {first_order_direct(compute_associator_jet(F, F.reliable_order()), F.dimension()),
            first_order_formula(F, aux)};
}

// ---------------------------------------------------------------------------
// Second order
// ---------------------------------------------------------------------------

SecondOrderAssociators second_order_direct(const FirstOrderAssociators& first, std::size_t r)
{
    const auto g_slots = index_block(0, r);
    const auto h_slots = index_block(r, r);
    SecondOrderAssociators out{JetTensor(3, r), JetTensor(3, r), JetTensor(3, r),
                               JetTensor(3, r), JetTensor(3, r), JetTensor(3, r)};
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) {
                // l^i_j(g,h) = l^i_jk(h) g^k + ... = lhat^i_jk(g) h^k + ...
                out.l(i, j, k) = restrict_to(partial_derivative(first.l(i, j), k), h_slots);
                out.l_hat(i, j, k) = restrict_to(partial_derivative(first.l(i, j), r + k), g_slots);
                // r^i_j(g,h) = r^i_jk(h) g^k + ... = rhat^i_jk(g) h^k + ...
                out.r(i, j, k) = restrict_to(partial_derivative(first.r(i, j), k), h_slots);
                out.r_hat(i, j, k) = restrict_to(partial_derivative(first.r(i, j), r + k), g_slots);
                // m^i_j(g,h) = mhat^i_jk(h) g^k + ... = m^i_jk(g) h^k + ...
                out.m_hat(i, j, k) = restrict_to(partial_derivative(first.m(i, j), k), h_slots);
                out.m(i, j, k) = restrict_to(partial_derivative(first.m(i, j), r + k), g_slots);
            }
        }
    }
    return out;
}

SecondOrderAssociators second_order_formula(const StructureTensors& S, const AuxiliaryFunctions& aux)
{
    const std::size_t r = aux.dimension;
    if (S.dimension != r) {
        throw std::invalid_argument("structure tensors and auxiliary functions disagree on dimension");
    }
    JetTensor du(3, r), dv(3, r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t s = 0; s < r; ++s) {
                du(i, j, s) = partial_derivative(aux.u(i, j), s);
                dv(i, j, s) = partial_derivative(aux.v(i, j), s);
            }
        }
    }

    SecondOrderAssociators out{JetTensor(3, r), JetTensor(3, r), JetTensor(3, r),
                               JetTensor(3, r), JetTensor(3, r), JetTensor(3, r)};
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) {
                // l^i_jk = -u2^i_kj - a^s_jk u^i_s + u^s_k du^i_j/dg^s
                Jet l = -aux.u2(i, k, j);
                // m^i_jk = v2^i_jk + a^s_jk v^i_s - v^s_j dv^i_k/dg^s
                Jet m = aux.v2(i, j, k);
                // r^i_jk = v^s_j du^i_k/dg^s - u^s_k dv^i_j/dg^s
                Jet rr = zero_jet(du(i, k, 0));
                for (std::size_t s = 0; s < r; ++s) {
                    l -= S.a(s, j, k) * aux.u(i, s);
                    l += aux.u(s, k) * du(i, j, s);
                    m += S.a(s, j, k) * aux.v(i, s);
                    m -= aux.v(s, j) * dv(i, k, s);
                    rr += aux.v(s, j) * du(i, k, s);
                    rr -= aux.u(s, k) * dv(i, j, s);
                }
                out.l(i, j, k) = std::move(l);
                out.m(i, j, k) = std::move(m);
                out.r(i, j, k) = std::move(rr);
            }
        }
    }
    // l^i_jk = mhat^i_kj, m^i_jk = rhat^i_kj, r^i_jk = lhat^i_kj
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) {
                out.m_hat(i, j, k) = out.l(i, k, j);
                out.r_hat(i, j, k) = out.m(i, k, j);
                out.l_hat(i, j, k) = out.r(i, k, j);
            }
        }
    }
    return out;
}

TwoRoutes<SecondOrderAssociators> second_order_associators(const JetVector& F)
{
    require_order(F, 4, "second-order associators");
    const std::size_t r = F.dimension();
    const FirstOrderAssociators first = first_order_direct(compute_associator_jet(F, F.reliable_order()), r);
    return {second_order_direct(first, r), second_order_formula(extract_structure_tensors(F), compute_auxiliary(F))};
}

// ---------------------------------------------------------------------------
// Third order
// ---------------------------------------------------------------------------

ThirdOrderAssociators third_order_direct(const SecondOrderAssociators& second)
{
    const std::size_t r = second.l.dim();
    ThirdOrderAssociators out{Tensor(4, r), Tensor(4, r), Tensor(4, r), Tensor(4, r), Tensor(4, r), Tensor(4, r)};
    auto linear = [r](const JetTensor& family, Tensor& target) {
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) {
                for (std::size_t k = 0; k < r; ++k) {
                    for (std::size_t l = 0; l < r; ++l) {
                        target(i, j, k, l) = family(i, j, k).coefficient(ExponentVector::unit(r, l));
                    }
                }
            }
        }
    };
    linear(second.l, out.l);
    linear(second.r, out.r);
    linear(second.m, out.m);
    linear(second.l_hat, out.l_hat);
    linear(second.r_hat, out.r_hat);
    linear(second.m_hat, out.m_hat);
    return out;
}

ThirdOrderAssociators third_order_formula(const StructureTensors& S)
{
    const std::size_t r = S.dimension;
    ThirdOrderAssociators out{Tensor(4, r), Tensor(4, r), Tensor(4, r), Tensor(4, r), Tensor(4, r), Tensor(4, r)};
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) {
                for (std::size_t l = 0; l < r; ++l) {
                    // a^i_js a^s_kl - a^s_jk a^i_sl + 2 (d^i_jkl - b^i_jkl)
                    Rational value = 2 * (S.d(i, j, k, l) - S.b(i, j, k, l));
                    for (std::size_t s = 0; s < r; ++s) {
                        value += S.a(i, j, s) * S.a(s, k, l) - S.a(s, j, k) * S.a(i, s, l);
                    }
                    out.l(i, j, k, l) = value;
                }
            }
        }
    }
    // l^i_jkl = m^i_klj = r^i_ljk = lhat^i_jlk = rhat^i_lkj = mhat^i_kjl
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) {
                for (std::size_t l = 0; l < r; ++l) {
                    const Rational& value = out.l(i, j, k, l);
                    out.m(i, k, l, j) = value;
                    out.r(i, l, j, k) = value;
                    out.l_hat(i, j, l, k) = value;
                    out.r_hat(i, l, k, j) = value;
                    out.m_hat(i, k, j, l) = value;
                }
            }
        }
    }
    return out;
}

TwoRoutes<ThirdOrderAssociators> third_order_associators(const JetVector& F)
{
    require_order(F, 4, "third-order associators");
    const std::size_t r = F.dimension();
    const FirstOrderAssociators first = first_order_direct(compute_associator_jet(F, F.reliable_order()), r);
    return {third_order_direct(second_order_direct(first, r)), third_order_formula(extract_structure_tensors(F))};
}

nlohmann::ordered_json export_tensors(const StructureTensors& tensors, const Tensor* l3)
{
    auto entries = [](const Tensor& t) {
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        t.for_each_index([&](std::span<const std::size_t> idx) {
            const Rational& value = t.at(idx);
            if (value == 0) {
                return;
            }
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (std::size_t k : idx) {
                row.push_back(k);
            }
            row.push_back(to_string(value));
            list.push_back(std::move(row));
        });
        return list;
    };
    nlohmann::ordered_json doc;
    doc["dimension"] = tensors.dimension;
    doc["c"] = entries(tensors.c);
    if (l3 != nullptr) {
        doc["l3"] = entries(*l3);
    }
    return doc;
}

} // namespace moufang
