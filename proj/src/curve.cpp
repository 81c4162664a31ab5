#include "gfc/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gfc/errors.hpp"

namespace gfc {

CurveSpec validate_spec(int k, int n, std::vector<Complex> lambdas) {
    if (k < 2) {
        throw DegenerateInput("k must be at least 2, got " + std::to_string(k));
    }
    if (n < 2) {
        throw DegenerateInput("n must be at least 2, got " + std::to_string(n));
    }
    if (lambdas.size() != static_cast<std::size_t>(n - 2)) {
        throw DegenerateInput("expected " + std::to_string(n - 2) + " lambda values, got " +
                              std::to_string(lambdas.size()));
    }
    for (const Complex& l : lambdas) {
        if (!std::isfinite(l.real()) || !std::isfinite(l.imag())) {
            throw DegenerateInput("lambda values must be finite");
        }
    }

    CurveSpec spec;
    spec.k = k;
    spec.n = n;
    spec.lambdas = std::move(lambdas);
    spec.branch_points.reserve(n);
    spec.branch_points.emplace_back(0.0, 0.0);
    spec.branch_points.emplace_back(1.0, 0.0);
    spec.branch_points.insert(spec.branch_points.end(), spec.lambdas.begin(), spec.lambdas.end());

    const auto& r = spec.branch_points;
    for (std::size_t a = 0; a < r.size(); ++a) {
        for (std::size_t b = a + 1; b < r.size(); ++b) {
            if (r[a] == r[b]) {
                std::ostringstream msg;
                msg << "branch points r" << a + 1 << " and r" << b + 1 << " coincide at " << r[a];
                throw CollidingBranchPoints(msg.str());
            }
        }
    }
    return spec;
}

std::int64_t genus(int k, int n) {
    std::int64_t power = 1;
    for (int i = 0; i < n - 1; ++i) power *= k;
    const std::int64_t twice = 2 + power * (static_cast<std::int64_t>(n - 1) * (k - 1) - 2);
    return twice / 2;
}

std::int64_t genus(const CurveSpec& spec) { return genus(spec.k, spec.n); }

std::vector<int> m_exponents(std::span<const int> alpha) {
    std::vector<int> m(alpha.size());
    if (alpha.empty()) return m;
    m[0] = alpha[0] + 1;
    for (std::size_t i = 1; i < alpha.size(); ++i) m[i] = -alpha[i];
    return m;
}

bool in_form_set(std::span<const int> alpha, int k) {
    if (alpha.size() < 2) return false;
    int tail = 0;
    for (std::size_t i = 1; i < alpha.size(); ++i) {
        if (alpha[i] < 0 || alpha[i] > k - 1) return false;
        tail += alpha[i];
    }
    return alpha[0] >= 0 && alpha[0] <= tail - 2;
}

FormIndex make_form(std::vector<int> alpha, int k) {
    if (!in_form_set(alpha, k)) {
        FormIndex bad{alpha, {}};
        throw DegenerateInput("alpha " + to_string(bad) + " is not in I_{k,n} for k=" +
                              std::to_string(k));
    }
    FormIndex form;
    form.m = m_exponents(alpha);
    form.alpha = std::move(alpha);
    return form;
}

std::vector<FormIndex> enumerate_forms(int k, int n) {
    std::vector<FormIndex> forms;
    if (k < 2 || n < 2) return forms;

    // Odometer over (a2, ..., an) in [0, k-1]^(n-1).
    std::vector<int> tail(n - 1, 0);
    while (true) {
        const int sum = std::accumulate(tail.begin(), tail.end(), 0);
        for (int a1 = 0; a1 <= sum - 2; ++a1) {
            std::vector<int> alpha;
            alpha.reserve(n);
            alpha.push_back(a1);
            alpha.insert(alpha.end(), tail.begin(), tail.end());
            FormIndex form;
            form.m = m_exponents(alpha);
            form.alpha = std::move(alpha);
            forms.push_back(std::move(form));
        }
        int pos = n - 2;
        while (pos >= 0 && tail[pos] == k - 1) tail[pos--] = 0;
        if (pos < 0) break;
        ++tail[pos];
    }
    std::sort(forms.begin(), forms.end());
    return forms;
}

std::vector<FormIndex> enumerate_forms(const CurveSpec& spec) {
    return enumerate_forms(spec.k, spec.n);
}

std::string to_string(const FormIndex& form) {
    std::string out = "(";
    for (std::size_t i = 0; i < form.alpha.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(form.alpha[i]);
    }
    return out + ")";
}

}  // namespace gfc
