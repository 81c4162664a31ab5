#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "gfc/lattice.hpp"
#include "gfc/oracle.hpp"
#include "gfc/periods.hpp"

namespace gfc::io {

using Json = nlohmann::ordered_json;

/// Shortest form is not used: doubles always carry 17 significant digits.
std::string format_double(double v);

/// Pretty printer that keeps arrays of scalars on one line and writes every
/// floating-point value through format_double.
void write_json(std::ostream& os, const Json& doc);
std::string to_json_text(const Json& doc);

Json complex_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

Json word_json(const HomologyWord& word);
HomologyWord word_from_json(const nlohmann::json& j);

Json info_json(const CurveSpec& spec, bool include_powers);

/// {"k","n","lambdas","genus","forms","generators","periods","base_point"}
Json period_matrix_json(const PeriodMatrix& pm);
PeriodMatrix period_matrix_from_json(const nlohmann::json& doc);

/// Metadata in '#' lines, then one row per generator with re/im columns
/// interleaved per form.
std::string period_matrix_csv(const PeriodMatrix& pm);
PeriodMatrix period_matrix_from_csv(const std::string& text);

/// Compares everything the wire formats carry, bit for bit.
bool same_wire_content(const PeriodMatrix& a, const PeriodMatrix& b);

Json basis_json(const CurveSpec& spec, const LatticeBasis& lb);
std::string basis_csv(const LatticeBasis& lb);

Json report_json(const CurveSpec& spec, const CrosscheckReport& report);
std::string report_csv(const CrosscheckReport& report);

}  // namespace gfc::io
