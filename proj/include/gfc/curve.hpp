#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gfc {

using Complex = std::complex<double>;

/// A generalized Fermat curve of type (k, n) with finite branch values
/// R = (0, 1, lambda_1, ..., lambda_{n-2}). Infinity is the remaining branch
/// value and is never stored.
struct CurveSpec {
    int k = 0;
    int n = 0;
    std::vector<Complex> lambdas;
    std::vector<Complex> branch_points;

    bool operator==(const CurveSpec&) const = default;
};

/// Exponent tuple alpha of the holomorphic form
///   y1^a1 dy1 / (y2^a2 ... yn^an)
/// together with its deck-eigenvalue exponents M (M1 = a1 + 1, Mi = -ai).
struct FormIndex {
    std::vector<int> alpha;
    std::vector<int> m;

    bool operator==(const FormIndex&) const = default;
    auto operator<=>(const FormIndex& other) const { return alpha <=> other.alpha; }
};

CurveSpec validate_spec(int k, int n, std::vector<Complex> lambdas);

std::int64_t genus(int k, int n);
std::int64_t genus(const CurveSpec& spec);

/// Builds a FormIndex from alpha; throws DegenerateInput if alpha is not in I_{k,n}.
FormIndex make_form(std::vector<int> alpha, int k);

bool in_form_set(std::span<const int> alpha, int k);

/// All of I_{k,n} in lexicographic order of alpha.
std::vector<FormIndex> enumerate_forms(int k, int n);
std::vector<FormIndex> enumerate_forms(const CurveSpec& spec);

std::vector<int> m_exponents(std::span<const int> alpha);
inline const std::vector<int>& m_exponents(const FormIndex& form) { return form.m; }

std::string to_string(const FormIndex& form);

}  // namespace gfc
