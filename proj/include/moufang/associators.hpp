#pragma once

// The symbol tower of a multiplication jet F(g, h): structure tensors,
// auxiliary functions u, v, w and their second derivatives, and the
// associators of orders one to three.
//
// Every associator family is produced twice: directly, by differentiating the
// composed associator a(g,h,k) = (g.hk) - (gh.k), and via the closed formulas
// in terms of u, v and the structure tensors. Each route is the other's
// oracle.
//
// Index conventions: tensor index 0 is the upper index i, then the lower
// indices in order. First-order families are jets in 2r variables (g, h);
// second-order families are jets in r variables.

#include "moufang/jet.hpp"
#include "moufang/tensor.hpp"

#include "json.hpp"

#include <cstddef>
#include <optional>

namespace moufang {

// (gh)^i = g^i + h^i + a^i_jk g^j h^k + b^i_jkl g^j g^k h^l + d^i_jkl g^j h^k h^l + ...
// b is stored symmetric in (j,k), d symmetric in (k,l); c^i_jk = a^i_jk - a^i_kj.
struct StructureTensors {
    std::size_t dimension = 0;
    Tensor a;
    Tensor b;
    Tensor d;
    Tensor c;
};

StructureTensors extract_structure_tensors(const JetVector& multiplication);

// u^i_j(h) = dF^i/dg^j at g = 0, v^i_j(g) = dF^i/dh^j at h = 0, w = -u - v,
// u2^i_jk(h) = d2F^i/dg^j dg^k at g = 0 (the full second derivative, so the
// Taylor term is u2/2!), v2 likewise in h. All jets in r variables.
struct AuxiliaryFunctions {
    std::size_t dimension = 0;
    JetTensor u;
    JetTensor v;
    JetTensor w;
    JetTensor u2;
    JetTensor v2;
};

AuxiliaryFunctions compute_auxiliary(const JetVector& multiplication);

// a^i(g,h,k) in 3r variables (blocks g, h, k), exact to `order`.
JetVector compute_associator_jet(const JetVector& multiplication, int order);

struct FirstOrderAssociators {
    JetTensor l;
    JetTensor r;
    JetTensor m;
};

struct SecondOrderAssociators {
    JetTensor l;
    JetTensor r;
    JetTensor m;
    JetTensor l_hat;
    JetTensor r_hat;
    JetTensor m_hat;
};

struct ThirdOrderAssociators {
    Tensor l;
    Tensor r;
    Tensor m;
    Tensor l_hat;
    Tensor r_hat;
    Tensor m_hat;
};

template <typename T>
struct TwoRoutes {
    T direct;
    T via_formula;
};

// l^i_j(g,h): derivative of a in its first slot at e, remaining slots (g,h);
// m from the second slot, r from the third.
FirstOrderAssociators first_order_direct(const JetVector& associator, std::size_t dimension);
FirstOrderAssociators first_order_formula(const JetVector& multiplication, const AuxiliaryFunctions& aux);
TwoRoutes<FirstOrderAssociators> first_order_associators(const JetVector& multiplication);

SecondOrderAssociators second_order_direct(const FirstOrderAssociators& first, std::size_t dimension);
SecondOrderAssociators second_order_formula(const StructureTensors& tensors, const AuxiliaryFunctions& aux);
TwoRoutes<SecondOrderAssociators> second_order_associators(const JetVector& multiplication);

ThirdOrderAssociators third_order_direct(const SecondOrderAssociators& second);
ThirdOrderAssociators third_order_formula(const StructureTensors& tensors);
TwoRoutes<ThirdOrderAssociators> third_order_associators(const JetVector& multiplication);

// {"dimension": r, "c": [[i,j,k,"p/q"], ...], "l3": [[i,j,k,l,"p/q"], ...]},
// nonzero entries only, 0-based indices; "l3" omitted when absent.
nlohmann::ordered_json export_tensors(const StructureTensors& tensors, const Tensor* l3);

} // namespace moufang
