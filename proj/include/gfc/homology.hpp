#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "gfc/curve.hpp"

namespace gfc {

/// phi_i^k. Generator indices are 1-based, matching r_1 = 0, r_2 = 1, ...
struct PowerWord {
    int i = 1;
    bool operator==(const PowerWord&) const = default;
};

/// rho [phi_j, phi_l] rho^-1 with rho = phi_1^g1 ... phi_n^gn and j < l.
struct ConjCommWord {
    std::vector<int> g;
    int j = 1;
    int l = 2;
    bool operator==(const ConjCommWord&) const = default;
};

using HomologyWord = std::variant<PowerWord, ConjCommWord>;

struct Letter {
    int generator = 1;
    int sign = 1;
    bool operator==(const Letter&) const = default;
};

using LetterSequence = std::vector<Letter>;

/// Number of ConjComm generators, C(n,2) * k^n.
std::int64_t conj_comm_count(int k, int n);

/// ConjComm words ordered by (j, l, g), optionally preceded by Power(1..n).
std::vector<HomologyWord> enumerate_generators(const CurveSpec& spec, bool include_powers);

/// Free-group spelling, left to right. No reduction is applied.
LetterSequence expand(const HomologyWord& word, int k);

/// zeta_k^e with zeta_k = exp(2 pi i / k). Returns exactly 1 when k divides e.
Complex zeta_power(int k, std::int64_t e);

/// zeta_k^(sum_d g_d M_d).
Complex conjugation_phase(const ConjCommWord& word, const FormIndex& form, int k);

/// sum_d g_d M_d reduced into [0, k).
int conjugation_exponent(const ConjCommWord& word, const FormIndex& form, int k);

void check_word(const HomologyWord& word, int k, int n);

std::string to_string(const HomologyWord& word);

}  // namespace gfc
