#pragma once

// Finite-dimensional tangent algebra of a local loop: the bracket
// [x,y]^i = c^i_jk x^j y^k, the Jacobiator, and the trilinear Akivis product
// (x,y,z)^i = l^i_jkl x^j y^k z^l.

#include "moufang/check_result.hpp"
#include "moufang/rational.hpp"
#include "moufang/tensor.hpp"

#include "json.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace moufang {

class TangentVector {
public:
    TangentVector() = default;
    explicit TangentVector(std::size_t dimension) : components_(dimension) {}
    explicit TangentVector(std::vector<Rational> components) : components_(std::move(components)) {}

    static TangentVector basis(std::size_t dimension, std::size_t index);

    std::size_t dimension() const noexcept { return components_.size(); }
    Rational& operator[](std::size_t i) { return components_[i]; }
    const Rational& operator[](std::size_t i) const { return components_[i]; }
    const std::vector<Rational>& components() const noexcept { return components_; }
    bool is_zero() const;

    TangentVector& operator+=(const TangentVector& other);
    TangentVector& operator-=(const TangentVector& other);

    friend bool operator==(const TangentVector&, const TangentVector&) = default;

private:
    std::vector<Rational> components_;
};

TangentVector operator+(TangentVector a, const TangentVector& b);
TangentVector operator-(TangentVector a, const TangentVector& b);
TangentVector operator-(TangentVector a);
TangentVector operator*(const Rational& s, TangentVector a);

struct AlgebraConstants {
    std::size_t dimension = 0;
    Tensor c;
    std::optional<Tensor> l3;
};

// Validates shapes and antisymmetry of c; throws std::invalid_argument.
AlgebraConstants make_algebra_constants(Tensor c, std::optional<Tensor> l3 = std::nullopt);

// Reads the tensor export schema {"dimension", "c", optional "l3"}.
AlgebraConstants algebra_constants_from_json(const nlohmann::json& doc);

TangentVector bracket(const AlgebraConstants& A, const TangentVector& x, const TangentVector& y);
TangentVector jacobiator(const AlgebraConstants& A, const TangentVector& x, const TangentVector& y,
                         const TangentVector& z);
// Throws std::invalid_argument when l3 is absent.
TangentVector akivis_product(const AlgebraConstants& A, const TangentVector& x, const TangentVector& y,
                             const TangentVector& z);

// J on all basis triples; passes when the algebra is Lie.
CheckResult check_jacobi_identity(const AlgebraConstants& A, const std::string& model = {});
// Four-term identity and corrected Sagle form on basis triples, with x also
// running over the sums e_j + e_m (both sides are quadratic in x).
CheckResult check_malcev_identity(const AlgebraConstants& A, const std::string& model = {});
// Tensor form over all r^4 index tuples and vector form on basis triples.
CheckResult check_akivis_identity(const AlgebraConstants& A, const std::string& model = {});
// Moufang specialisation J(x,y,z) = 6 (x,y,z) on basis triples.
CheckResult check_moufang_akivis(const AlgebraConstants& A, const std::string& model = {});

} // namespace moufang
