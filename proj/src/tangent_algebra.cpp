#include "moufang/tangent_algebra.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace moufang {

TangentVector TangentVector::basis(std::size_t dimension, std::size_t index)
{
    if (index >= dimension) {
        throw std::out_of_range("basis index out of range");
    }
    TangentVector e(dimension);
    e[index] = 1;
    return e;
}

bool TangentVector::is_zero() const
{
    for (const Rational& q : components_) {
        if (q != 0) {
            return false;
        }
    }
    return true;
}

TangentVector& TangentVector::operator+=(const TangentVector& other)
{
    if (other.dimension() != dimension()) {
        throw std::invalid_argument("tangent vector dimension mismatch");
    }
    for (std::size_t i = 0; i < components_.size(); ++i) {
        components_[i] += other[i];
    }
    return *this;
}

TangentVector& TangentVector::operator-=(const TangentVector& other)
{
    if (other.dimension() != dimension()) {
        throw std::invalid_argument("tangent vector dimension mismatch");
    }
    for (std::size_t i = 0; i < components_.size(); ++i) {
        components_[i] -= other[i];
    }
    return *this;
}

TangentVector operator+(TangentVector a, const TangentVector& b)
{
    a += b;
    return a;
}

TangentVector operator-(TangentVector a, const TangentVector& b)
{
    a -= b;
    return a;
}

TangentVector operator-(TangentVector a)
{
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        a[i] = -a[i];
    }
    return a;
}

TangentVector operator*(const Rational& s, TangentVector a)
{
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        a[i] *= s;
    }
    return a;
}

AlgebraConstants make_algebra_constants(Tensor c, std::optional<Tensor> l3)
{
    if (c.rank() != 3 || c.dim() == 0) {
        throw std::invalid_argument("bracket constants must be a rank-3 tensor of positive dimension");
    }
    const std::size_t r = c.dim();
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) {
                if (c(i, j, k) != -c(i, k, j)) {
                    throw std::invalid_argument("bracket constants are not antisymmetric at (" + std::to_string(i) +
                                                "," + std::to_string(j) + "," + std::to_string(k) + ")");
                }
            }
        }
    }
    if (l3 && (l3->rank() != 4 || l3->dim() != r)) {
        throw std::invalid_argument("trilinear constants must be a rank-4 tensor of the algebra's dimension");
    }
    return AlgebraConstants{r, std::move(c), std::move(l3)};
}

AlgebraConstants algebra_constants_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object() || !doc.contains("dimension") || !doc["dimension"].is_number_integer() ||
        doc["dimension"].get<long>() < 1) {
        throw std::invalid_argument("tensor file: \"dimension\" must be a positive integer");
    }
    const std::size_t r = doc["dimension"].get<std::size_t>();
    auto read = [&](const char* key, std::size_t rank) {
        Tensor t(rank, r);
        const auto& list = doc.at(key);
        if (!list.is_array()) {
            throw std::invalid_argument(std::string("tensor file: \"") + key + "\" must be an array");
        }
        for (const auto& row : list) {
            if (!row.is_array() || row.size() != rank + 1 || !row[rank].is_string()) {
                throw std::invalid_argument(std::string("tensor file: malformed entry in \"") + key + "\"");
            }
            std::vector<std::size_t> idx;
            for (std::size_t k = 0; k < rank; ++k) {
                if (!row[k].is_number_integer() || row[k].get<long>() < 0 || row[k].get<std::size_t>() >= r) {
                    throw std::invalid_argument(std::string("tensor file: index out of range in \"") + key + "\"");
                }
                idx.push_back(row[k].get<std::size_t>());
            }
            t.at(idx) = parse_rational(row[rank].get<std::string>());
        }
        return t;
    };
    if (!doc.contains("c")) {
        throw std::invalid_argument("tensor file: missing \"c\"");
    }
    Tensor c = read("c", 3);
    std::optional<Tensor> l3;
    if (doc.contains("l3")) {
        l3 = read("l3", 4);
    }
    return make_algebra_constants(std::move(c), std::move(l3));
}

TangentVector bracket(const AlgebraConstants& A, const TangentVector& x, const TangentVector& y)
{
    const std::size_t r = A.dimension;
    if (x.dimension() != r || y.dimension() != r) {
        throw std::invalid_argument("bracket: dimension mismatch");
    }
    TangentVector out(r);
    for (std::size_t j = 0; j < r; ++j) {
        if (x[j] == 0) {
            continue;
        }
        for (std::size_t k = 0; k < r; ++k) {
            if (y[k] == 0) {
                continue;
            }
            const Rational xy = x[j] * y[k];
            for (std::size_t i = 0; i < r; ++i) {
                out[i] += A.c(i, j, k) * xy;
            }
        }
    }
    return out;
}

TangentVector jacobiator(const AlgebraConstants& A, const TangentVector& x, const TangentVector& y,
                         const TangentVector& z)
{
    return bracket(A, x, bracket(A, y, z)) + bracket(A, y, bracket(A, z, x)) + bracket(A, z, bracket(A, x, y));
}

TangentVector akivis_product(const AlgebraConstants& A, const TangentVector& x, const TangentVector& y,
                             const TangentVector& z)
{
    if (!A.l3) {
        throw std::invalid_argument("akivis product needs the third-order associator constants");
    }
    const std::size_t r = A.dimension;
    if (x.dimension() != r || y.dimension() != r || z.dimension() != r) {
        throw std::invalid_argument("akivis product: dimension mismatch");
    }
    TangentVector out(r);
    for (std::size_t j = 0; j < r; ++j) {
        if (x[j] == 0) {
            continue;
        }
        for (std::size_t k = 0; k < r; ++k) {
            if (y[k] == 0) {
                continue;
            }
            for (std::size_t l = 0; l < r; ++l) {
                if (z[l] == 0) {
                    continue;
                }
                const Rational xyz = x[j] * y[k] * z[l];
                for (std::size_t i = 0; i < r; ++i) {
                    out[i] += (*A.l3)(i, j, k, l) * xyz;
                }
            }
        }
    }
    return out;
}

namespace {

constexpr int kBracketDataOrder = 2;
constexpr int kTrilinearDataOrder = 3;

void compare_vectors(CheckRecorder& rec, std::string_view equation, const TangentVector& lhs,
                     const TangentVector& rhs, const std::vector<std::size_t>& lower)
{
    for (std::size_t i = 0; i < lhs.dimension(); ++i) {
        rec.expect_equal(equation, lhs[i], rhs[i], i, lower);
    }
}

// x runs over e_j and e_j + e_m (j < m); each entry carries its label.
std::vector<std::pair<TangentVector, std::vector<std::size_t>>> quadratic_probe_set(std::size_t r)
{
    std::vector<std::pair<TangentVector, std::vector<std::size_t>>> out;
    for (std::size_t j = 0; j < r; ++j) {
        out.emplace_back(TangentVector::basis(r, j), std::vector<std::size_t>{j});
    }
    for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t m = j + 1; m < r; ++m) {
            out.emplace_back(TangentVector::basis(r, j) + TangentVector::basis(r, m), std::vector<std::size_t>{j, m});
        }
    }
    return out;
}

} // namespace

CheckResult check_jacobi_identity(const AlgebraConstants& A, const std::string& model)
{
    CheckRecorder rec("jacobi_identity", model, kBracketDataOrder);
    rec.set_data_order(kBracketDataOrder);
    const std::size_t r = A.dimension;
    const TangentVector zero(r);
    for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t k = 0; k < r; ++k) {
            for (std::size_t l = 0; l < r; ++l) {
                const auto x = TangentVector::basis(r, j);
                const auto y = TangentVector::basis(r, k);
                const auto z = TangentVector::basis(r, l);
                compare_vectors(rec, "J(x,y,z) = 0", jacobiator(A, x, y, z), zero, {j, k, l});
            }
        }
    }
    return std::move(rec).finish();
}

CheckResult check_malcev_identity(const AlgebraConstants& A, const std::string& model)
{
    CheckRecorder rec("malcev_identity", model, kBracketDataOrder);
    rec.set_data_order(kBracketDataOrder);
    const std::size_t r = A.dimension;
    const TangentVector zero(r);
    std::size_t printed_sagle_failures = 0;
    std::size_t printed_sagle_cases = 0;
    std::size_t jacobi_failures = 0;
    auto br = [&A](const TangentVector& p, const TangentVector& q) { return bracket(A, p, q); };

    for (const auto& [x, label] : quadratic_probe_set(r)) {
        for (std::size_t k = 0; k < r; ++k) {
            for (std::size_t l = 0; l < r; ++l) {
                const auto y = TangentVector::basis(r, k);
                const auto z = TangentVector::basis(r, l);
                std::vector<std::size_t> lower = label;
                lower.push_back(k);
                lower.push_back(l);

                const TangentVector four_term =
                    br(br(x, y), br(z, x)) + br(br(br(x, y), z), x) + br(br(br(y, z), x), x) + br(br(br(z, x), x), y);
                compare_vectors(rec, "[[x,y],[z,x]] + [[[x,y],z],x] + [[[y,z],x],x] + [[[z,x],x],y] = 0", four_term,
                                zero, lower);

                const TangentVector sagle_rhs = jacobiator(A, x, y, br(x, z));
                compare_vectors(rec, "[J(x,y,z),x] = J(x,y,[x,z])", br(jacobiator(A, x, y, z), x), sagle_rhs, lower);

                ++printed_sagle_cases;
                if (br(jacobiator(A, x, y, x), x) != sagle_rhs) {
                    ++printed_sagle_failures;
                }
                if (label.size() == 1 && !jacobiator(A, x, y, z).is_zero()) {
                    ++jacobi_failures;
                }
            }
        }
    }
    rec.note("printed Sagle form [J(x,y,x),x] = J(x,y,[x,z]) fails on " + std::to_string(printed_sagle_failures) +
             " of " + std::to_string(printed_sagle_cases) + " probes");
    rec.note("Jacobi identity fails on " + std::to_string(jacobi_failures) + " of " + std::to_string(r * r * r) +
             " basis triples");
    return std::move(rec).finish();
}

CheckResult check_akivis_identity(const AlgebraConstants& A, const std::string& model)
{
    if (!A.l3) {
        throw std::invalid_argument("Akivis identity needs the third-order associator constants");
    }
    CheckRecorder rec("akivis_identity", model, kTrilinearDataOrder);
    rec.set_data_order(kTrilinearDataOrder);
    const std::size_t r = A.dimension;
    const Tensor& t = *A.l3;
    const Tensor& c = A.c;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) {
                for (std::size_t l = 0; l < r; ++l) {
                    const Rational alternating = t(i, j, k, l) + t(i, k, l, j) + t(i, l, j, k) - t(i, j, l, k) -
                                                 t(i, l, k, j) - t(i, k, j, l);
                    Rational cc(0);
                    for (std::size_t s = 0; s < r; ++s) {
                        cc += c(i, j, s) * c(s, k, l) + c(i, k, s) * c(s, l, j) + c(i, l, s) * c(s, j, k);
                    }
                    rec.expect_equal("sum_alt l^i_jkl = c^i_js c^s_kl + c^i_ks c^s_lj + c^i_ls c^s_jk", alternating,
                                     cc, i, {j, k, l});
                }
            }
        }
    }
    for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t k = 0; k < r; ++k) {
            for (std::size_t l = 0; l < r; ++l) {
                const auto x = TangentVector::basis(r, j);
                const auto y = TangentVector::basis(r, k);
                const auto z = TangentVector::basis(r, l);
                const TangentVector rhs = akivis_product(A, x, y, z) + akivis_product(A, y, z, x) +
                                          akivis_product(A, z, x, y) - akivis_product(A, x, z, y) -
                                          akivis_product(A, z, y, x) - akivis_product(A, y, x, z);
                compare_vectors(rec, "J(x,y,z) = (x,y,z)+(y,z,x)+(z,x,y)-(x,z,y)-(z,y,x)-(y,x,z)",
                                jacobiator(A, x, y, z), rhs, {j, k, l});
            }
        }
    }
    return std::move(rec).finish(true);
}

CheckResult check_moufang_akivis(const AlgebraConstants& A, const std::string& model)
{
    if (!A.l3) {
        throw std::invalid_argument("J = 6(x,y,z) needs the third-order associator constants");
    }
    CheckRecorder rec("moufang_akivis", model, kTrilinearDataOrder);
    rec.set_data_order(kTrilinearDataOrder);
    const std::size_t r = A.dimension;
    for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t k = 0; k < r; ++k) {
            for (std::size_t l = 0; l < r; ++l) {
                const auto x = TangentVector::basis(r, j);
                const auto y = TangentVector::basis(r, k);
                const auto z = TangentVector::basis(r, l);
                compare_vectors(rec, "J(x,y,z) = 6(x,y,z)", jacobiator(A, x, y, z),
                                Rational(6) * akivis_product(A, x, y, z), {j, k, l});
            }
        }
    }
    return std::move(rec).finish(true);
}

} // namespace moufang
