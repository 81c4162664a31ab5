#include "gfc/homology.hpp"

#include <numbers>

#include "gfc/errors.hpp"

namespace gfc {

std::int64_t conj_comm_count(int k, int n) {
    std::int64_t kn = 1;
    for (int i = 0; i < n; ++i) kn *= k;
    return static_cast<std::int64_t>(n) * (n - 1) / 2 * kn;
}

std::vector<HomologyWord> enumerate_generators(const CurveSpec& spec, bool include_powers) {
    const int k = spec.k;
    const int n = spec.n;
    std::vector<HomologyWord> words;
    words.reserve(static_cast<std::size_t>(conj_comm_count(k, n)) + (include_powers ? n : 0));
    if (include_powers) {
        for (int i = 1; i <= n; ++i) words.emplace_back(PowerWord{i});
    }
    for (int j = 1; j <= n; ++j) {
        for (int l = j + 1; l <= n; ++l) {
            std::vector<int> g(n, 0);
            while (true) {
                words.emplace_back(ConjCommWord{g, j, l});
                int pos = n - 1;
                while (pos >= 0 && g[pos] == k - 1) g[pos--] = 0;
                if (pos < 0) break;
                ++g[pos];
            }
        }
    }
    return words;
}

LetterSequence expand(const HomologyWord& word, int k) {
    LetterSequence letters;
    if (const auto* p = std::get_if<PowerWord>(&word)) {
        letters.assign(k, Letter{p->i, +1});
        return letters;
    }
    const auto& c = std::get<ConjCommWord>(word);
    const int n = static_cast<int>(c.g.size());
    for (int d = 0; d < n; ++d) {
        for (int e = 0; e < c.g[d]; ++e) letters.push_back({d + 1, +1});
    }
    letters.push_back({c.j, +1});
    letters.push_back({c.l, +1});
    letters.push_back({c.j, -1});
    letters.push_back({c.l, -1});
    for (int d = n - 1; d >= 0; --d) {
        for (int e = 0; e < c.g[d]; ++e) letters.push_back({d + 1, -1});
    }
    return letters;
}

Complex zeta_power(int k, std::int64_t e) {
    std::int64_t r = e % k;
    if (r < 0) r += k;
    if (r == 0) return {1.0, 0.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / k;
    return std::polar(1.0, angle);
}

int conjugation_exponent(const ConjCommWord& word, const FormIndex& form, int k) {
    std::int64_t sum = 0;
    for (std::size_t d = 0; d < word.g.size() && d < form.m.size(); ++d) {
        sum += static_cast<std::int64_t>(word.g[d]) * form.m[d];
    }
    std::int64_t r = sum % k;
    if (r < 0) r += k;
    return static_cast<int>(r);
}

Complex conjugation_phase(const ConjCommWord& word, const FormIndex& form, int k) {
    return zeta_power(k, conjugation_exponent(word, form, k));
}

void check_word(const HomologyWord& word, int k, int n) {
    if (const auto* p = std::get_if<PowerWord>(&word)) {
        if (p->i < 1 || p->i > n) throw DegenerateInput("power index out of range");
        return;
    }
    const auto& c = std::get<ConjCommWord>(word);
    if (static_cast<int>(c.g.size()) != n) throw DegenerateInput("conjugator has wrong length");
    for (int gd : c.g) {
        if (gd < 0 || gd > k - 1) throw DegenerateInput("conjugator exponent out of range");
    }
    if (!(1 <= c.j && c.j < c.l && c.l <= n)) {
        throw DegenerateInput("commutator indices must satisfy 1 <= j < l <= n");
    }
}

std::string to_string(const HomologyWord& word) {
    if (const auto* p = std::get_if<PowerWord>(&word)) {
        return "Power(" + std::to_string(p->i) + ")";
    }
    const auto& c = std::get<ConjCommWord>(word);
    std::string out = "ConjComm((";
    for (std::size_t d = 0; d < c.g.size(); ++d) {
        if (d) out += ',';
        out += std::to_string(c.g[d]);
    }
    return out + ")," + std::to_string(c.j) + "," + std::to_string(c.l) + ")";
}

}  // namespace gfc
