#pragma once

#include <json.hpp>

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "evo/classifier.hpp"
#include "evo/dynamics.hpp"
#include "evo/iso.hpp"

namespace evo::cli {

using Json = nlohmann::ordered_json;

/// x rounded to 12 significant digits; integral values become integers,
/// -0 becomes 0 and non-finite values null.
Json number(double x);

/// Same rounding as `number`, as text (empty for NaN).
std::string format_number(double x);

/// Four entries separated by commas. All integers or p/q literals give an
/// exact matrix; any decimal turns the whole matrix floating.
using MatrixInput = std::variant<StructMatrix<Rational>, StructMatrix<double>>;
MatrixInput parse_matrix(std::string_view text);

Json matrix_json(const Matrix2<double>& m);

template <class T>
Json classify_report(const StructMatrix<T>& input, const CanonicalRecord<T>& rec);

template <class T>
Json iso_report(const StructMatrix<T>& left, const StructMatrix<T>& right, const IsoResult<T>& res);

Json trace_json(const std::vector<TraceRecord>& records);
std::string trace_csv(const std::vector<TraceRecord>& records);

}  // namespace evo::cli
