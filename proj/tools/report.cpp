#include "report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <regex>
#include <sstream>

namespace evo::cli {

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double r = std::strtod(buf, nullptr);
  if (r == 0.0) r = 0.0;
  if (std::abs(r) < 1e15 && r == std::floor(r)) return static_cast<long long>(r);
  return r;
}

std::string format_number(double x) {
  const Json j = number(x);
  return j.is_null() ? std::string() : j.dump();
}

namespace {

Rational rational_entry(const std::string& p) {
  const auto q = parse_rational(p);
  if (!q) throw Error("malformed matrix entry '" + p + "'");
  return *q;
}

}  // namespace

MatrixInput parse_matrix(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4) throw Error("matrix needs 4 comma-separated entries, got " + std::to_string(parts.size()));

  static const std::regex rational(R"([+-]?\d+(/\d+)?)");
  bool exact = true;
  for (const auto& p : parts) {
    if (!std::regex_match(p, rational)) exact = false;
  }
  if (exact) {
    std::array<Rational, 4> e;
    for (int i = 0; i < 4; ++i) e[i] = rational_entry(parts[i]);
    return StructMatrix<Rational>(e[0], e[1], e[2], e[3]);
  }
  std::array<double, 4> e{};
  for (int i = 0; i < 4; ++i) {
    const auto& p = parts[i];
    if (std::regex_match(p, rational)) {
      e[i] = rational_entry(p).get_d();
      continue;
    }
    const char* begin = p.data() + (!p.empty() && p[0] == '+' ? 1 : 0);
    const auto res = std::from_chars(begin, p.data() + p.size(), e[i]);
    if (p.empty() || res.ec != std::errc() || res.ptr != p.data() + p.size() || !std::isfinite(e[i])) {
      throw Error("malformed matrix entry '" + p + "'");
    }
  }
  return StructMatrix<double>(e[0], e[1], e[2], e[3]);
}

Json matrix_json(const Matrix2<double>& m) {
  return Json::array({Json::array({number(m.a11), number(m.a12)}), Json::array({number(m.a21), number(m.a22)})});
}

namespace {

Json matrix_text(const Matrix2<RadicalNumber>& m) {
  return Json::array({Json::array({m.a11.str(), m.a12.str()}), Json::array({m.a21.str(), m.a22.str()})});
}

Matrix2<double> as_double(const Matrix2<RadicalNumber>& m) {
  return m.map<double>([](const RadicalNumber& x) { return x.to_double(); });
}

Matrix2<double> as_double(const Matrix2<Rational>& m) {
  return m.map<double>([](const Rational& x) { return x.get_d(); });
}

const Matrix2<double>& as_double(const Matrix2<double>& m) { return m; }

template <class T>
Json input_json(const StructMatrix<T>& m) {
  const Matrix2<double> d = as_double(m);
  return Json::array({number(d.a11), number(d.a12), number(d.a21), number(d.a22)});
}

template <class T>
Json params_json(const CanonicalClass<T>& c) {
  Json arr = Json::array();
  const auto v = c.param_values();
  for (int i = 0; i < param_count(c.tag); ++i) arr.push_back(number(v[i]));
  return arr;
}

}  // namespace

template <class T>
Json classify_report(const StructMatrix<T>& input, const CanonicalRecord<T>& rec) {
  Json j;
  j["input"] = input_json(input);
  j["mode"] = is_exact_v<T> ? "exact" : "floating";
  j["class"] = std::string(tag_name(rec.cls.tag));
  j["params"] = params_json(rec.cls);
  if constexpr (is_exact_v<T>) {
    Json exact = Json::array();
    for (int i = 0; i < param_count(rec.cls.tag); ++i) exact.push_back(rec.cls.params[i].str());
    j["params_exact"] = exact;
    j["witness"] = matrix_json(as_double(rec.witness));
    j["witness_exact"] = matrix_text(rec.witness);
  } else {
    j["witness"] = matrix_json(rec.witness);
    j["residual"] = number(rec.residual);
    j["ambiguous"] = rec.ambiguous;
  }
  j["verified"] = rec.verified;
  return j;
}

template <class T>
Json iso_report(const StructMatrix<T>& left, const StructMatrix<T>& right, const IsoResult<T>& res) {
  Json j;
  j["left"] = input_json(left);
  j["right"] = input_json(right);
  j["mode"] = is_exact_v<T> ? "exact" : "floating";
  j["isomorphic"] = res.isomorphic;
  if (res.witness) {
    j["method"] = std::string(method_name(res.method));
    j["witness"] = matrix_json(as_double(*res.witness));
    if constexpr (is_exact_v<T>) j["witness_exact"] = matrix_text(*res.witness);
    j["verified"] = true;
  }
  return j;
}

Json trace_json(const std::vector<TraceRecord>& records) {
  Json arr = Json::array();
  for (const auto& r : records) {
    Json j;
    j["s"] = number(r.s);
    j["t"] = number(r.t);
    j["class"] = std::string(tag_name(r.cls.tag));
    j["params"] = params_json(r.cls);
    if (r.expected) {
      j["expected_class"] = std::string(tag_name(r.expected->tag));
      j["expected_params"] = params_json(*r.expected);
    } else {
      j["expected_class"] = nullptr;
      j["expected_params"] = nullptr;
    }
    j["agrees"] = r.agrees ? Json(*r.agrees) : Json(nullptr);
    j["boundary"] = r.boundary;
    j["ambiguous"] = r.ambiguous;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string trace_csv(const std::vector<TraceRecord>& records) {
  std::ostringstream os;
  os << "s,t,class,param1,param2,expected_class,agrees,boundary\n";
  for (const auto& r : records) {
    const int n = param_count(r.cls.tag);
    os << format_number(r.s) << ',' << format_number(r.t) << ',' << tag_name(r.cls.tag) << ','
       << (n > 0 ? format_number(r.cls.params[0]) : "") << ',' << (n > 1 ? format_number(r.cls.params[1]) : "")
       << ',' << (r.expected ? std::string(tag_name(r.expected->tag)) : "") << ','
       << (r.agrees ? (*r.agrees ? "true" : "false") : "") << ',' << (r.boundary ? "true" : "false") << '\n';
  }
  return os.str();
}

template Json classify_report<double>(const StructMatrix<double>&, const CanonicalRecord<double>&);
template Json classify_report<Rational>(const StructMatrix<Rational>&, const CanonicalRecord<Rational>&);
template Json iso_report<double>(const StructMatrix<double>&, const StructMatrix<double>&, const IsoResult<double>&);
template Json iso_report<Rational>(const StructMatrix<Rational>&, const StructMatrix<Rational>&,
                                   const IsoResult<Rational>&);

}  // namespace evo::cli
