#include "gfc/periods.hpp"

#include "gfc/contour.hpp"
#include "gfc/errors.hpp"
#include "gfc/parallel.hpp"

namespace gfc {

BaseIntegrals base_integrals(const CurveSpec& spec, const std::vector<FormIndex>& forms,
                             Complex base_point, const QuadConfig& cfg) {
    cfg.validate();
    const int n = spec.n;
    const auto cols = static_cast<Eigen::Index>(forms.size());
    BaseIntegrals J(n, cols);
    const BranchState start = init_branch(base_point, spec.branch_points);
    parallel_for(static_cast<std::size_t>(n) * forms.size(), [&](std::size_t job) {
        const int i = static_cast<int>(job / forms.size()) + 1;
        const std::size_t c = job % forms.size();
        J(i - 1, static_cast<Eigen::Index>(c)) =
            integrate_to_branch_point(start, i, forms[c], spec, cfg);
    });
    return J;
}

BaseIntegrals base_integrals(const CurveSpec& spec, const QuadConfig& cfg) {
    return base_integrals(spec, enumerate_forms(spec), default_base_point(spec.branch_points), cfg);
}

Complex commutator_prefactor(const FormIndex& form, int j, int l, int k) {
    const Complex one(1.0, 0.0);
    return (one - zeta_power(k, form.m[j - 1])) * (one - zeta_power(k, form.m[l - 1])) /
           static_cast<double>(k);
}

Complex period_entry(const ConjCommWord& word, const FormIndex& form, const BaseIntegrals& J,
                     Eigen::Index col, int k) {
    const Complex prefactor = commutator_prefactor(form, word.j, word.l, k);
    if (prefactor == Complex(0.0, 0.0)) return {0.0, 0.0};
    const Complex span = J(word.l - 1, col) - J(word.j - 1, col);
    return conjugation_phase(word, form, k) * prefactor * span;
}

Complex period_entry(const HomologyWord& word, const FormIndex& form, const BaseIntegrals& J,
                     Eigen::Index col, int k) {
    if (const auto* c = std::get_if<ConjCommWord>(&word)) return period_entry(*c, form, J, col, k);
    return {0.0, 0.0};
}

PeriodMatrix assemble(const CurveSpec& spec, const QuadConfig& cfg, bool include_powers,
                      Complex base_point) {
    PeriodMatrix pm;
    pm.spec = spec;
    pm.base_point = base_point;
    pm.cols = enumerate_forms(spec);
    pm.rows = enumerate_generators(spec, include_powers);
    pm.base_integrals = base_integrals(spec, pm.cols, base_point, cfg);

    const auto m = static_cast<Eigen::Index>(pm.rows.size());
    const auto g = static_cast<Eigen::Index>(pm.cols.size());
    pm.entries.resize(m, g);
    for (Eigen::Index s = 0; s < m; ++s) {
        for (Eigen::Index c = 0; c < g; ++c) {
            pm.entries(s, c) = period_entry(pm.rows[s], pm.cols[c], pm.base_integrals, c, spec.k);
        }
    }
    return pm;
}

PeriodMatrix assemble(const CurveSpec& spec, const QuadConfig& cfg, bool include_powers) {
    return assemble(spec, cfg, include_powers, default_base_point(spec.branch_points));
}

}  // namespace gfc
