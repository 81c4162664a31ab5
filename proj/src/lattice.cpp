#include "gfc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "gfc/errors.hpp"

namespace gfc {
namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

// a*x + b*y = g with g = gcd(x, y) >= 0.
void extended_gcd(const BigInt& x, const BigInt& y, BigInt& g, BigInt& a, BigInt& b) {
    BigInt old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    g = old_r;
    a = old_s;
    b = old_t;
}

void axpy(BigRow& y, const BigInt& a, const BigRow& x) {
    if (a == 0) return;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (x[i] != 0) y[i] += a * x[i];
    }
}

BigRow combine(const BigInt& a, const BigRow& x, const BigInt& b, const BigRow& y) {
    BigRow out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
    return out;
}

std::int64_t to_int64(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw ReconstructionFailed("integer coefficient exceeds 64-bit range");
    }
    return v.convert_to<std::int64_t>();
}

}  // namespace

Eigen::MatrixXd real_split(const Eigen::MatrixXcd& entries) {
    Eigen::MatrixXd out(entries.rows(), 2 * entries.cols());
    out.leftCols(entries.cols()) = entries.real();
    out.rightCols(entries.cols()) = entries.imag();
    return out;
}

Eigen::MatrixXd real_split(const PeriodMatrix& pm) { return real_split(pm.entries); }

int lattice_rank(const Eigen::MatrixXd& vectors, double rank_tol) {
    if (vectors.size() == 0) return 0;
    const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXd>(vectors).singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > rank_tol * sv(0)) ++rank;
    }
    return rank;
}

std::optional<Fraction> rational_approximation(double x, std::int64_t max_den, double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    long double y = x;
    std::int64_t p_prev = 1, p_prev2 = 0;
    std::int64_t q_prev = 0, q_prev2 = 1;
    for (int iter = 0; iter < 64; ++iter) {
        const long double a_ld = std::floor(y);
        if (std::abs(a_ld) > 9e15L) return std::nullopt;
        const auto a = static_cast<std::int64_t>(a_ld);
        const std::int64_t p = a * p_prev + p_prev2;
        const std::int64_t q = a * q_prev + q_prev2;
        if (q > max_den) return std::nullopt;
        if (std::abs(x - static_cast<double>(p) / static_cast<double>(q)) <= tol) {
            return Fraction{p, q};
        }
        const long double frac = y - a_ld;
        if (frac <= 0.0L) return std::nullopt;
        y = 1.0L / frac;
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = q;
    }
    return std::nullopt;
}

HermiteForm hermite_normal_form(const std::vector<BigRow>& input) {
    struct Entry {
        BigRow v;
        BigRow combo;
    };
    const std::size_t m = input.size();
    const std::size_t dim = m ? input.front().size() : 0;
    std::map<std::size_t, Entry> echelon;  // keyed by pivot column

    for (std::size_t s = 0; s < m; ++s) {
        BigRow v = input[s];
        // Combination of v stays implicit (e_s minus recorded multiples of
        // echelon rows) until an echelon row has to change.
        std::vector<std::pair<std::size_t, BigInt>> pending;
        BigRow combo;
        bool dense = false;
        auto materialize = [&] {
            if (dense) return;
            combo.assign(m, BigInt(0));
            combo[s] = 1;
            for (const auto& [col, q] : pending) axpy(combo, -q, echelon.at(col).combo);
            pending.clear();
            dense = true;
        };

        // Entries right of a row's pivot are kept in [0, p) for each later pivot p.
        auto reduce_tail = [&](BigRow& row, BigRow& row_combo, std::size_t from) {
            for (auto jt = echelon.upper_bound(from); jt != echelon.end(); ++jt) {
                const std::size_t col = jt->first;
                const BigInt& piv = jt->second.v[col];
                if (row[col] == 0) continue;
                const BigInt q = floor_div(row[col], piv);
                if (q == 0) continue;
                axpy(row, -q, jt->second.v);
                axpy(row_combo, -q, jt->second.combo);
            }
        };

        std::size_t c = 0;
        while (true) {
            while (c < dim && v[c] == 0) ++c;
            if (c == dim) break;
            auto it = echelon.find(c);
            if (it == echelon.end()) {
                materialize();
                reduce_tail(v, combo, c);
                echelon.emplace(c, Entry{std::move(v), std::move(combo)});
                break;
            }
            Entry& e = it->second;
            const BigInt& p = e.v[c];
            const BigInt& x = v[c];
            if (x % p == 0) {
                const BigInt q = x / p;
                axpy(v, -q, e.v);
                if (dense) {
                    axpy(combo, -q, e.combo);
                } else {
                    pending.emplace_back(c, q);
                }
                continue;
            }
            materialize();
            BigInt g, a, b;
            extended_gcd(p, x, g, a, b);
            const BigInt p_red = p / g;
            const BigInt x_red = x / g;
            BigRow new_e = combine(a, e.v, b, v);
            BigRow new_v = combine(-x_red, e.v, p_red, v);
            BigRow new_e_combo = combine(a, e.combo, b, combo);
            BigRow new_v_combo = combine(-x_red, e.combo, p_red, combo);
            e.v = std::move(new_e);
            e.combo = std::move(new_e_combo);
            reduce_tail(e.v, e.combo, c);
            v = std::move(new_v);
            combo = std::move(new_v_combo);
        }
    }

    HermiteForm out;
    for (auto& [col, e] : echelon) {
        if (e.v[col] < 0) {
            for (auto& x : e.v) x = -x;
            for (auto& x : e.combo) x = -x;
        }
        out.rows.push_back(std::move(e.v));
        out.combinations.push_back(std::move(e.combo));
    }
    // Reduce above each pivot, left to right.
    for (std::size_t r = 0; r < out.rows.size(); ++r) {
        std::size_t col = 0;
        while (out.rows[r][col] == 0) ++col;
        const BigInt pivot = out.rows[r][col];
        for (std::size_t above = 0; above < r; ++above) {
            const BigInt q = floor_div(out.rows[above][col], pivot);
            if (q == 0) continue;
            axpy(out.rows[above], -q, out.rows[r]);
            axpy(out.combinations[above], -q, out.combinations[r]);
        }
    }
    return out;
}

ExtractOptions default_extract_options(const CurveSpec& spec) {
    ExtractOptions opt;
    opt.expected_rank = static_cast<int>(2 * genus(spec));
    std::int64_t bound = 1;
    for (int i = 0; i < 2 * spec.n; ++i) bound *= spec.k;
    opt.denominator_bound = bound;
    return opt;
}

LatticeBasis extract_basis(const Eigen::MatrixXd& vectors, const ExtractOptions& options) {
    const Eigen::Index m = vectors.rows();
    const Eigen::Index dim = vectors.cols();
    const int r = options.expected_rank;
    if (dim != r) {
        throw NotFullRank("vectors have dimension " + std::to_string(dim) + ", expected " +
                          std::to_string(r));
    }
    const int rank = lattice_rank(vectors, options.rank_tol);
    if (rank != r) {
        throw NotFullRank("numerical rank " + std::to_string(rank) + ", expected " +
                          std::to_string(r));
    }

    LatticeBasis out;
    if (r == 0) {
        out.basis.resize(0, 0);
        out.coefficients = IntMatrix::Zero(m, 0);
        out.generator_combinations.resize(0, m);
        out.abs_det = 1.0;
        return out;
    }

    // (1) Greedy pivoted Gram-Schmidt picks a well-conditioned independent set.
    Eigen::MatrixXd work = vectors;
    std::vector<bool> used(m, false);
    for (int step = 0; step < r; ++step) {
        Eigen::Index best = -1;
        double best_norm = 0.0;
        for (Eigen::Index s = 0; s < m; ++s) {
            if (used[s]) continue;
            const double nrm = work.row(s).norm();
            if (nrm > best_norm) {
                best_norm = nrm;
                best = s;
            }
        }
        if (best < 0 || best_norm == 0.0) throw NotFullRank("pivot selection ran out of rows");
        used[best] = true;
        out.pivot_rows.push_back(best);
        const Eigen::RowVectorXd q = work.row(best) / best_norm;
        for (Eigen::Index s = 0; s < m; ++s) {
            if (!used[s]) work.row(s) -= work.row(s).dot(q) * q;
        }
        work.row(best).setZero();
    }
    std::sort(out.pivot_rows.begin(), out.pivot_rows.end());
    Eigen::MatrixXd initial(r, dim);
    for (int i = 0; i < r; ++i) initial.row(i) = vectors.row(out.pivot_rows[i]);

    // (2) Coordinates of every generator over the initial set.
    const Eigen::MatrixXd coords =
        initial.transpose().fullPivLu().solve(vectors.transpose()).transpose();

    // (3) Rational reconstruction and a common denominator.
    std::vector<std::vector<Fraction>> fracs(m, std::vector<Fraction>(r));
    BigInt denom = 1;
    for (Eigen::Index s = 0; s < m; ++s) {
        for (int c = 0; c < r; ++c) {
            const auto f = rational_approximation(coords(s, c), options.denominator_bound,
                                                  options.match_tol);
            if (!f) {
                throw ReconstructionFailed("coordinate " + std::to_string(coords(s, c)) +
                                           " of generator " + std::to_string(s) +
                                           " has no approximant with denominator <= " +
                                           std::to_string(options.denominator_bound));
            }
            fracs[s][c] = *f;
            denom = boost::multiprecision::lcm(denom, BigInt(f->den));
        }
    }
    out.denominator = denom;

    // (4) Hermite normal form of the scaled integer coordinates.
    std::vector<BigRow> scaled(m, BigRow(r));
    for (Eigen::Index s = 0; s < m; ++s) {
        for (int c = 0; c < r; ++c) {
            scaled[s][c] = BigInt(fracs[s][c].num) * (denom / fracs[s][c].den);
        }
    }
    // Pivot rows go first so the echelon starts from a full-rank block.
    std::vector<Eigen::Index> order = out.pivot_rows;
    for (Eigen::Index s = 0; s < m; ++s) {
        if (!used[s]) order.push_back(s);
    }
    std::vector<BigRow> ordered;
    ordered.reserve(m);
    for (Eigen::Index s : order) ordered.push_back(scaled[s]);
    HermiteForm hnf = hermite_normal_form(ordered);
    if (static_cast<int>(hnf.rows.size()) != r) {
        throw NotFullRank("integer span has rank " + std::to_string(hnf.rows.size()));
    }

    const double denom_d = denom.convert_to<double>();
    Eigen::MatrixXd h(r, r);
    for (int i = 0; i < r; ++i) {
        for (int c = 0; c < r; ++c) h(i, c) = hnf.rows[i][c].convert_to<double>() / denom_d;
    }
    out.basis = h * initial;

    out.generator_combinations = IntMatrix::Zero(r, m);
    for (int i = 0; i < r; ++i) {
        for (Eigen::Index pos = 0; pos < m; ++pos) {
            out.generator_combinations(i, order[pos]) = to_int64(hnf.combinations[i][pos]);
        }
    }

    // (5) Exact coefficients of each generator: solve x * H = scaled_s.
    out.coefficients = IntMatrix::Zero(m, r);
    for (Eigen::Index s = 0; s < m; ++s) {
        BigRow x(r);
        for (int c = 0; c < r; ++c) {
            BigInt acc = scaled[s][c];
            for (int i = 0; i < c; ++i) acc -= x[i] * hnf.rows[i][c];
            const BigInt& pivot = hnf.rows[c][c];
            if (acc % pivot != 0) {
                throw ReconstructionFailed("generator " + std::to_string(s) +
                                           " is not an integer combination of the reduced basis");
            }
            x[c] = acc / pivot;
            out.coefficients(s, c) = to_int64(x[c]);
        }
    }

    const Eigen::MatrixXd rebuilt = out.coefficients.cast<double>() * out.basis;
    out.residual = (rebuilt - vectors).cwiseAbs().maxCoeff();
    const double scale = vectors.rowwise().norm().maxCoeff();
    if (out.residual > options.residual_tol * scale) {
        throw ReconstructionFailed("reconstruction residual " + std::to_string(out.residual) +
                                   " exceeds tolerance");
    }
    out.abs_det = std::abs(out.basis.fullPivLu().determinant());
    return out;
}

LatticeBasis extract_basis(const Eigen::MatrixXd& vectors, const CurveSpec& spec) {
    return extract_basis(vectors, default_extract_options(spec));
}

Expressibility express_in_basis(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& vectors,
                                double tol) {
    Expressibility out;
    const Eigen::MatrixXd coords =
        basis.transpose().fullPivLu().solve(vectors.transpose()).transpose();
    const Eigen::MatrixXd rounded = coords.array().round().matrix();
    out.max_coordinate_error = coords.size() ? (coords - rounded).cwiseAbs().maxCoeff() : 0.0;
    out.coordinates = rounded.cast<std::int64_t>();
    out.residual = vectors.size() ? (rounded * basis - vectors).cwiseAbs().maxCoeff() : 0.0;
    out.integral = out.max_coordinate_error <= tol && out.residual <= tol;
    return out;
}

bool same_lattice(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
    return express_in_basis(a, b, tol).integral && express_in_basis(b, a, tol).integral;
}

}  // namespace gfc
