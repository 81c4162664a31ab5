#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gfc/curve.hpp"
#include "gfc/homology.hpp"
#include "gfc/quad.hpp"

namespace gfc {

/// J(i-1, c) = integral of W(R, alpha_c) dw from the base point to r_i.
using BaseIntegrals = Eigen::MatrixXcd;

/// Rows are homology generators, columns are forms in I_{k,n} order.
struct PeriodMatrix {
    CurveSpec spec;
    Complex base_point;
    std::vector<HomologyWord> rows;
    std::vector<FormIndex> cols;
    Eigen::MatrixXcd entries;
    BaseIntegrals base_integrals;
};

/// All legs start from one base point with one shared initial branch.
BaseIntegrals base_integrals(const CurveSpec& spec, const std::vector<FormIndex>& forms,
                             Complex base_point, const QuadConfig& cfg);
BaseIntegrals base_integrals(const CurveSpec& spec, const QuadConfig& cfg);

/// (1 - zeta^Mj)(1 - zeta^Ml) / k.
Complex commutator_prefactor(const FormIndex& form, int j, int l, int k);

/// zeta^(sum g_d M_d) (1 - zeta^Mj)(1 - zeta^Ml)/k (J_l - J_j) for column `col`.
Complex period_entry(const ConjCommWord& word, const FormIndex& form, const BaseIntegrals& J,
                     Eigen::Index col, int k);

/// Power rows are exact zeros.
Complex period_entry(const HomologyWord& word, const FormIndex& form, const BaseIntegrals& J,
                     Eigen::Index col, int k);

PeriodMatrix assemble(const CurveSpec& spec, const QuadConfig& cfg, bool include_powers = false);
PeriodMatrix assemble(const CurveSpec& spec, const QuadConfig& cfg, bool include_powers,
                      Complex base_point);

}  // namespace gfc
