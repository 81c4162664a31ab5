#include "gfc/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "gfc/errors.hpp"

namespace gfc::io {
namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

bool is_flat(const Json& j) {
    return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& e) { return is_scalar(e); });
}

// Arrays of short flat arrays, such as a row of [re, im] pairs.
bool is_small_nest(const Json& j) {
    std::size_t count = 0;
    for (const auto& e : j) {
        if (!is_flat(e)) return false;
        count += e.size();
    }
    return count <= 8;
}

void write_scalar(std::ostream& os, const Json& j) {
    if (j.is_number_float()) {
        os << format_double(j.get<double>());
    } else {
        os << j.dump();
    }
}

void write_inline(std::ostream& os, const Json& j) {
    if (is_scalar(j)) {
        write_scalar(os, j);
    } else if (j.is_array()) {
        os << '[';
        bool first = true;
        for (const auto& e : j) {
            if (!first) os << ", ";
            first = false;
            write_inline(os, e);
        }
        os << ']';
    } else {
        os << '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) os << ", ";
            first = false;
            os << Json(it.key()).dump() << ": ";
            write_inline(os, it.value());
        }
        os << '}';
    }
}

void write_value(std::ostream& os, const Json& j, int depth) {
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close_pad(2 * depth, ' ');
    if (is_scalar(j)) {
        write_scalar(os, j);
    } else if (j.is_array()) {
        if (j.empty()) {
            os << "[]";
            return;
        }
        const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return is_scalar(e); });
        if (flat || (depth > 0 && is_small_nest(j))) {
            write_inline(os, j);
            return;
        }
        os << "[\n";
        bool first = true;
        for (const auto& e : j) {
            if (!first) os << ",\n";
            first = false;
            os << pad;
            write_value(os, e, depth + 1);
        }
        os << '\n' << close_pad << ']';
    } else {
        if (j.empty()) {
            os << "{}";
            return;
        }
        if (depth > 0 && std::all_of(j.begin(), j.end(), [](const Json& e) { return is_scalar(e) || is_flat(e); })) {
            write_inline(os, j);
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) os << ",\n";
            first = false;
            os << pad << Json(it.key()).dump() << ": ";
            write_value(os, it.value(), depth + 1);
        }
        os << '\n' << close_pad << '}';
    }
}

double parse_double(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') throw DegenerateInput("malformed number '" + s + "'");
    return v;
}

int parse_int(const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        throw DegenerateInput("malformed integer '" + s + "'");
    }
    if (used != s.size()) throw DegenerateInput("malformed integer '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string join_ints(const std::vector<int>& v, char sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

std::vector<int> ints_from(const std::string& s, char sep) {
    std::vector<int> out;
    if (s.empty()) return out;
    for (const auto& part : split(s, sep)) out.push_back(parse_int(part));
    return out;
}

Json lambdas_json(const CurveSpec& spec) {
    Json arr = Json::array();
    for (const Complex& l : spec.lambdas) arr.push_back(complex_json(l));
    return arr;
}

Json forms_json(const std::vector<FormIndex>& forms) {
    Json arr = Json::array();
    for (const auto& f : forms) arr.push_back(f.alpha);
    return arr;
}

template <class T>
Json int_matrix_json(const T& m) {
    Json arr = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        arr.push_back(row);
    }
    return arr;
}

}  // namespace

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_json(std::ostream& os, const Json& doc) {
    write_value(os, doc, 0);
    os << '\n';
}

std::string to_json_text(const Json& doc) {
    std::ostringstream os;
    write_json(os, doc);
    return os.str();
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw DegenerateInput("complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json word_json(const HomologyWord& word) {
    Json j;
    if (const auto* p = std::get_if<PowerWord>(&word)) {
        j["type"] = "power";
        j["i"] = p->i;
        return j;
    }
    const auto& c = std::get<ConjCommWord>(word);
    j["type"] = "conj_comm";
    j["g"] = c.g;
    j["j"] = c.j;
    j["l"] = c.l;
    return j;
}

HomologyWord word_from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "power") return PowerWord{j.at("i").get<int>()};
    if (type == "conj_comm") {
        return ConjCommWord{j.at("g").get<std::vector<int>>(), j.at("j").get<int>(), j.at("l").get<int>()};
    }
    throw DegenerateInput("unknown generator type '" + type + "'");
}

Json info_json(const CurveSpec& spec, bool include_powers) {
    const auto forms = enumerate_forms(spec);
    const auto commutators = conj_comm_count(spec.k, spec.n);
    Json j;
    j["k"] = spec.k;
    j["n"] = spec.n;
    j["lambdas"] = lambdas_json(spec);
    j["genus"] = genus(spec);
    j["form_count"] = forms.size();
    j["forms"] = forms_json(forms);
    j["conj_comm_count"] = commutators;
    j["generator_count"] = commutators + (include_powers ? spec.n : 0);
    return j;
}

Json period_matrix_json(const PeriodMatrix& pm) {
    Json j;
    j["k"] = pm.spec.k;
    j["n"] = pm.spec.n;
    j["lambdas"] = lambdas_json(pm.spec);
    j["genus"] = genus(pm.spec);
    j["forms"] = forms_json(pm.cols);
    Json gens = Json::array();
    for (const auto& w : pm.rows) gens.push_back(word_json(w));
    j["generators"] = gens;
    Json periods = Json::array();
    for (Eigen::Index r = 0; r < pm.entries.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < pm.entries.cols(); ++c) row.push_back(complex_json(pm.entries(r, c)));
        periods.push_back(row);
    }
    j["periods"] = periods;
    j["base_point"] = complex_json(pm.base_point);
    return j;
}

PeriodMatrix period_matrix_from_json(const nlohmann::json& doc) {
    std::vector<Complex> lambdas;
    for (const auto& l : doc.at("lambdas")) lambdas.push_back(complex_from_json(l));
    PeriodMatrix pm;
    pm.spec = validate_spec(doc.at("k").get<int>(), doc.at("n").get<int>(), std::move(lambdas));
    for (const auto& f : doc.at("forms")) pm.cols.push_back(make_form(f.get<std::vector<int>>(), pm.spec.k));
    for (const auto& g : doc.at("generators")) pm.rows.push_back(word_from_json(g));
    const auto& periods = doc.at("periods");
    pm.entries.resize(static_cast<Eigen::Index>(pm.rows.size()), static_cast<Eigen::Index>(pm.cols.size()));
    if (periods.size() != pm.rows.size()) throw DegenerateInput("periods/generators length mismatch");
    for (std::size_t r = 0; r < periods.size(); ++r) {
        if (periods[r].size() != pm.cols.size()) throw DegenerateInput("period row has wrong length");
        for (std::size_t c = 0; c < pm.cols.size(); ++c) {
            pm.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(periods[r][c]);
        }
    }
    pm.base_point = complex_from_json(doc.at("base_point"));
    return pm;
}

std::string period_matrix_csv(const PeriodMatrix& pm) {
    std::ostringstream os;
    os << "# k=" << pm.spec.k << '\n';
    os << "# n=" << pm.spec.n << '\n';
    os << "# lambdas=";
    for (std::size_t i = 0; i < pm.spec.lambdas.size(); ++i) {
        if (i) os << ';';
        os << format_double(pm.spec.lambdas[i].real()) << ',' << format_double(pm.spec.lambdas[i].imag());
    }
    os << '\n';
    os << "# base_point=" << format_double(pm.base_point.real()) << ',' << format_double(pm.base_point.imag()) << '\n';
    os << "type,i,g,j,l";
    for (const auto& f : pm.cols) {
        const std::string a = join_ints(f.alpha, ' ');
        os << ",re:" << a << ",im:" << a;
    }
    os << '\n';
    for (std::size_t r = 0; r < pm.rows.size(); ++r) {
        if (const auto* p = std::get_if<PowerWord>(&pm.rows[r])) {
            os << "power," << p->i << ",,,";
        } else {
            const auto& c = std::get<ConjCommWord>(pm.rows[r]);
            os << "conj_comm,," << join_ints(c.g, ' ') << ',' << c.j << ',' << c.l;
        }
        for (std::size_t c = 0; c < pm.cols.size(); ++c) {
            const Complex z = pm.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            os << ',' << format_double(z.real()) << ',' << format_double(z.imag());
        }
        os << '\n';
    }
    return os.str();
}

PeriodMatrix period_matrix_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int k = 0, n = 0;
    std::vector<Complex> lambdas;
    Complex base{};
    std::vector<std::vector<int>> alphas;
    std::vector<HomologyWord> rows;
    std::vector<std::vector<Complex>> values;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = line.substr(2, eq - 2);
            const std::string val = line.substr(eq + 1);
            if (key == "k") {
                k = parse_int(val);
            } else if (key == "n") {
                n = parse_int(val);
            } else if (key == "lambdas" && !val.empty()) {
                for (const auto& item : split(val, ';')) {
                    const auto parts = split(item, ',');
                    if (parts.size() != 2) throw DegenerateInput("malformed lambda in CSV");
                    lambdas.emplace_back(parse_double(parts[0]), parse_double(parts[1]));
                }
            } else if (key == "base_point") {
                const auto parts = split(val, ',');
                if (parts.size() != 2) throw DegenerateInput("malformed base point in CSV");
                base = {parse_double(parts[0]), parse_double(parts[1])};
            }
            continue;
        }
        const auto cells = split(line, ',');
        if (!header_seen) {
            header_seen = true;
            for (std::size_t c = 5; c + 1 < cells.size(); c += 2) {
                if (cells[c].rfind("re:", 0) != 0) throw DegenerateInput("malformed CSV header");
                alphas.push_back(ints_from(cells[c].substr(3), ' '));
            }
            continue;
        }
        if (cells.size() != 5 + 2 * alphas.size()) throw DegenerateInput("CSV row has wrong width");
        if (cells[0] == "power") {
            rows.emplace_back(PowerWord{parse_int(cells[1])});
        } else if (cells[0] == "conj_comm") {
            rows.emplace_back(ConjCommWord{ints_from(cells[2], ' '), parse_int(cells[3]), parse_int(cells[4])});
        } else {
            throw DegenerateInput("unknown generator type '" + cells[0] + "'");
        }
        std::vector<Complex> row;
        for (std::size_t c = 0; c < alphas.size(); ++c) {
            row.emplace_back(parse_double(cells[5 + 2 * c]), parse_double(cells[6 + 2 * c]));
        }
        values.push_back(std::move(row));
    }

    PeriodMatrix pm;
    pm.spec = validate_spec(k, n, std::move(lambdas));
    pm.base_point = base;
    for (auto& a : alphas) pm.cols.push_back(make_form(std::move(a), k));
    pm.rows = std::move(rows);
    pm.entries.resize(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(pm.cols.size()));
    for (std::size_t r = 0; r < values.size(); ++r) {
        for (std::size_t c = 0; c < pm.cols.size(); ++c) {
            pm.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r][c];
        }
    }
    return pm;
}

bool same_wire_content(const PeriodMatrix& a, const PeriodMatrix& b) {
    auto bits_equal = [](Complex x, Complex y) {
        return std::memcmp(&x, &y, sizeof(Complex)) == 0;
    };
    if (!(a.spec == b.spec) || a.rows != b.rows || a.cols != b.cols) return false;
    if (!bits_equal(a.base_point, b.base_point)) return false;
    if (a.entries.rows() != b.entries.rows() || a.entries.cols() != b.entries.cols()) return false;
    for (Eigen::Index r = 0; r < a.entries.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.entries.cols(); ++c) {
            if (!bits_equal(a.entries(r, c), b.entries(r, c))) return false;
        }
    }
    return true;
}

Json basis_json(const CurveSpec& spec, const LatticeBasis& lb) {
    Json j;
    j["k"] = spec.k;
    j["n"] = spec.n;
    j["lambdas"] = lambdas_json(spec);
    j["genus"] = genus(spec);
    j["rank"] = lb.basis.rows();
    Json basis = Json::array();
    for (Eigen::Index r = 0; r < lb.basis.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < lb.basis.cols(); ++c) row.push_back(lb.basis(r, c));
        basis.push_back(row);
    }
    j["basis"] = basis;
    j["coefficients"] = int_matrix_json(lb.coefficients);
    j["generator_combinations"] = int_matrix_json(lb.generator_combinations);
    j["residual"] = lb.residual;
    j["abs_det"] = lb.abs_det;
    return j;
}

std::string basis_csv(const LatticeBasis& lb) {
    std::ostringstream os;
    os << "# residual=" << format_double(lb.residual) << '\n';
    os << "# abs_det=" << format_double(lb.abs_det) << '\n';
    os << "vector";
    for (Eigen::Index c = 0; c < lb.basis.cols(); ++c) os << ",x" << c;
    os << '\n';
    for (Eigen::Index r = 0; r < lb.basis.rows(); ++r) {
        os << r;
        for (Eigen::Index c = 0; c < lb.basis.cols(); ++c) os << ',' << format_double(lb.basis(r, c));
        os << '\n';
    }
    return os.str();
}

Json report_json(const CurveSpec& spec, const CrosscheckReport& report) {
    Json j;
    j["k"] = spec.k;
    j["n"] = spec.n;
    j["lambdas"] = lambdas_json(spec);
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json e;
        e["name"] = c.name;
        e["passed"] = c.passed;
        e["max_deviation"] = c.max_deviation;
        e["tolerance"] = c.tolerance;
        e["detail"] = c.detail;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["all_passed"] = report.all_passed();
    return j;
}

std::string report_csv(const CrosscheckReport& report) {
    std::ostringstream os;
    os << "name,passed,max_deviation,tolerance,detail\n";
    for (const auto& c : report.checks) {
        std::string detail = c.detail;
        std::replace(detail.begin(), detail.end(), ',', ';');
        os << c.name << ',' << (c.passed ? "true" : "false") << ',' << format_double(c.max_deviation) << ','
           << format_double(c.tolerance) << ',' << detail << '\n';
    }
    return os.str();
}

}  // namespace gfc::io
