#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "checks.hpp"
#include "curve.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "potential.hpp"

namespace nlft {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Potential text formats. CSV: header `n,re,im`, one row per nonzero entry.
// JSON: array of objects with keys "n", "re", "im". Duplicate indices and
// values outside the open unit disc are rejected at parse time.

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& field, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(field, &pos);
    if (pos != field.size()) throw ParseError("trailing characters in " + what + ": " + field);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("cannot parse " + what + ": '" + field + "'");
  }
}

inline int parse_int(const std::string& field, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(field, &pos);
    if (pos != field.size()) throw ParseError("trailing characters in " + what + ": " + field);
    return static_cast<int>(v);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("cannot parse " + what + ": '" + field + "'");
  }
}

}  // namespace detail

inline Potential parse_potential_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty potential CSV");
  std::string header = detail::trim(line);
  header.erase(std::remove(header.begin(), header.end(), ' '), header.end());
  if (header != "n,re,im") throw ParseError("potential CSV must start with header 'n,re,im'");
  std::vector<Potential::Entry> entries;
  while (std::getline(in, line)) {
    const std::string row = detail::trim(line);
    if (row.empty()) continue;
    std::stringstream ss(row);
    std::string f0, f1, f2, extra;
    if (!std::getline(ss, f0, ',') || !std::getline(ss, f1, ',') || !std::getline(ss, f2, ','))
      throw ParseError("potential CSV row needs three fields: '" + row + "'");
    if (std::getline(ss, extra, ','))
      throw ParseError("potential CSV row has extra fields: '" + row + "'");
    entries.push_back({detail::parse_int(detail::trim(f0), "index"),
                       Complex(detail::parse_double(detail::trim(f1), "re"),
                               detail::parse_double(detail::trim(f2), "im"))});
  }
  return Potential(std::move(entries));
}

inline std::string potential_to_csv(const Potential& f) {
  std::string out = "n,re,im\n";
  for (const auto& e : f.entries())
    out += std::to_string(e.n) + "," + float17(e.value.real()) + "," +
           float17(e.value.imag()) + "\n";
  return out;
}

inline Potential parse_potential_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& ex) {
    throw ParseError(std::string("potential JSON: ") + ex.what());
  }
  if (!j.is_array()) throw ParseError("potential JSON must be an array of {n, re, im}");
  std::vector<Potential::Entry> entries;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("n") || !item.contains("re") || !item.contains("im"))
      throw ParseError("potential JSON entries need keys n, re, im");
    entries.push_back({item.at("n").get<int>(),
                       Complex(item.at("re").get<double>(), item.at("im").get<double>())});
  }
  return Potential(std::move(entries));
}

inline Json potential_to_json(const Potential& f) {
  Json arr = Json::array();
  for (const auto& e : f.entries())
    arr.push_back({{"n", e.n}, {"re", e.value.real()}, {"im", e.value.imag()}});
  return arr;
}

/// Reads a potential from disk, picking the format from the extension
/// (.json, anything else is treated as CSV).
inline Potential read_potential_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open potential file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read potential file: " + path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return parse_potential_json(buffer.str());
  std::istringstream text(buffer.str());
  return parse_potential_csv(text);
}

// ---------------------------------------------------------------------------
// Diagnostic curve dumps.

inline Json curve_to_json(const DiscreteCurve<GroupElement>& curve) {
  Json arr = Json::array();
  for (int N = curve.lo(); N <= curve.hi(); ++N) {
    const auto& g = curve.at(N);
    arr.push_back({{"N", N},
                   {"a_re", g.a.real()},
                   {"a_im", g.a.imag()},
                   {"b_re", g.b.real()},
                   {"b_im", g.b.imag()}});
  }
  return arr;
}

inline Json curve_to_json(const DiscreteCurve<AlgebraElement>& curve) {
  Json arr = Json::array();
  for (int N = curve.lo(); N <= curve.hi(); ++N) {
    const auto& x = curve.at(N);
    arr.push_back({{"N", N}, {"r", x.r}, {"s", x.s}, {"t", x.t}});
  }
  return arr;
}

// ---------------------------------------------------------------------------
// CheckReport serialization.

inline Json report_to_json(const CheckReport& rep) {
  Json meta = Json::object();
  for (const auto& [k, v] : rep.metadata) meta[k] = v;
  return Json{{"name", rep.name},     {"lhs", rep.lhs},
              {"rhs", rep.rhs},       {"ratio", rep.ratio},
              {"pass", rep.pass},     {"tolerance", rep.tolerance},
              {"metadata", meta}};
}

inline std::string report_csv_header() {
  return "name,lhs,rhs,ratio,pass,tolerance,metadata";
}

inline std::string report_to_csv_row(const CheckReport& rep) {
  std::string meta;
  for (const auto& [k, v] : rep.metadata) {
    if (!meta.empty()) meta += ";";
    meta += k + "=" + v;
  }
  return rep.name + "," + float17(rep.lhs) + "," + float17(rep.rhs) + "," +
         float17(rep.ratio) + "," + (rep.pass ? "1" : "0") + "," +
         float17(rep.tolerance) + "," + meta;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  out << text;
  if (!out) throw IoError("cannot write output file: " + path);
}

}  // namespace nlft
