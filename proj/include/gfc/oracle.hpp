#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gfc/contour.hpp"
#include "gfc/homology.hpp"
#include "gfc/quad.hpp"

namespace gfc {

/// Concatenated standard loops for the word's letters, left to right in
/// traversal order.
Path word_path(const LetterSequence& letters, const CurveSpec& spec, Complex base_point);

/// -(1/k) * integral of W dw along the word's loop path, with W continued
/// from the principal branch at the base point. This is the integral of the
/// pulled-back form over the lifted word.
Complex integrate_letters(const LetterSequence& letters, const FormIndex& form,
                          const CurveSpec& spec, const QuadConfig& cfg, Complex base_point);
Complex integrate_word(const HomologyWord& word, const FormIndex& form, const CurveSpec& spec,
                       const QuadConfig& cfg, Complex base_point);
Complex integrate_word(const HomologyWord& word, const FormIndex& form, const CurveSpec& spec,
                       const QuadConfig& cfg);

double beta_function(double a, double b);

/// B((a1 + 1)/k, 1 - a2/k); classical Fermat curves only.
double beta_closed_form(const FormIndex& form, int k);

/// Arithmetic-geometric mean with the right sign choice at every step.
Complex agm(Complex a, Complex b);

/// A Z-basis of the period lattice of dw / sqrt(w (w - 1) (w - lambda)).
std::pair<Complex, Complex> agm_elliptic_periods(Complex lambda);

/// Period lattice of the (2, 3) form dy1/(y2 y3) expressed from the
/// Legendre periods above: the form is -1/2 dw / sqrt(-w(w-1)(w-lambda))
/// pulled back along a degree-4 unramified quotient map whose image in
/// homology has index 4, so the lattice is i times the Legendre lattice.
std::pair<Complex, Complex> fermat23_lattice_from_legendre(std::pair<Complex, Complex> legendre);

struct CheckResult {
    std::string name;
    bool passed = true;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct CrosscheckReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

/// Runs the independent checks that apply to `spec`: power-word vanishing,
/// contour oracle vs closed form on `sample` random ConjComm words,
/// conjugation covariance, lattice rank, Beta magnitudes (n = 2) and the
/// AGM lattice comparison ((k, n) = (2, 3)).
CrosscheckReport crosscheck_report(const CurveSpec& spec, const QuadConfig& cfg, int sample,
                                   std::uint64_t seed = 0);

}  // namespace gfc
