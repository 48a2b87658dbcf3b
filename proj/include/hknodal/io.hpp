#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hknodal/bundle.hpp"
#include "hknodal/hilbert.hpp"
#include "hknodal/laurent.hpp"
#include "hknodal/parse.hpp"

namespace hknodal {

using json = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline json to_json_value(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

/// [[exponent, coefficient], ...] in ascending exponent order.
inline json to_json(const LaurentPoly& a) {
  json out = json::array();
  for (const auto& [e, c] : a.coefficients()) out.push_back(json::array({e, to_json_value(c)}));
  return out;
}

inline LaurentPoly laurent_from_json(const json& j) {
  LaurentPoly out;
  for (const auto& pair : j) {
    const auto& c = pair.at(1);
    out.add_term(pair.at(0).get<std::int64_t>(),
                 c.is_string() ? BigInt(c.get<std::string>()) : BigInt(c.get<std::int64_t>()));
  }
  return out;
}

inline json to_json(const ClassificationData& data) {
  json strands = json::array();
  for (const auto& st : data.strands()) {
    json s;
    s["n"] = st.n;
    s["r"] = st.r;
    s["s"] = st.s;
    s["B"] = st.B ? json(*st.B) : json(nullptr);
    strands.push_back(s);
  }
  return json{{"strands", strands}};
}

inline ClassificationData classification_from_json(const json& j) {
  std::vector<Strand> strands;
  try {
    for (const auto& s : j.at("strands")) {
      Strand st{s.at("n").get<std::int64_t>(), s.at("r").get<std::int64_t>(),
                s.at("s").get<std::int64_t>(), std::nullopt};
      if (s.contains("B") && !s.at("B").is_null()) st.B = s.at("B").get<std::int64_t>();
      strands.push_back(st);
    }
  } catch (const json::exception& e) {
    throw Error(errc::syntax_error, std::string("classification data: ") + e.what());
  }
  return ClassificationData(std::move(strands));
}

inline json to_json(const HKCoefficients& c) {
  json R = json::object();
  for (const auto& [res, v] : c.R) R[std::to_string(res)] = to_string(v);
  return json{{"mu", to_string(c.mu)}, {"alpha", to_string(c.alpha)}, {"R", R}};
}

inline HKCoefficients coefficients_from_json(const json& j) {
  HKCoefficients c;
  try {
    c.mu = Rational(j.at("mu").get<std::string>());
    c.alpha = Rational(j.at("alpha").get<std::string>());
    for (const auto& [k, v] : j.at("R").items()) c.R.emplace(std::stoi(k), Rational(v.get<std::string>()));
  } catch (const std::exception& e) {
    throw Error(errc::syntax_error, std::string("coefficients: ") + e.what());
  }
  return c;
}

/// Input for the command-line workflows: a prime, the cubic h and the
/// generators of J, all as polynomial text.
struct ProblemFile {
  std::int64_t p = 0;
  std::string h;
  std::vector<std::string> generators;
  std::string label;

  IdealSpec spec() const {
    const PrimeField field(p);
    std::vector<GradedPoly> gens;
    for (const auto& g : generators) gens.push_back(parse_form(g, field));
    return IdealSpec(parse_form(h, field), std::move(gens));
  }

  json to_json() const {
    return json{{"p", p}, {"h", h}, {"generators", generators}, {"label", label}};
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

}  // namespace detail

/// Splits a generator list on commas and newlines, ignoring blanks and
/// '#' comments.
inline std::vector<std::string> split_generators(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  bool comment = false;
  auto flush = [&] {
    auto t = detail::trim(cur);
    if (!t.empty()) out.push_back(t);
    cur.clear();
  };
  for (char c : text) {
    if (c == '\n') {
      comment = false;
      flush();
    } else if (comment) {
      continue;
    } else if (c == '#') {
      comment = true;
    } else if (c == ',') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

/// Key-value format, one "key = value" per line, '#' starts a comment:
///   p = 2
///   h = x^3 + y^3 + x*y*z
///   gens = x, y, z        (comma separated; "gen = ..." lines append one each)
///   label = free text
inline ProblemFile parse_problem_text(const std::string& text) {
  ProblemFile pf;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_p = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(errc::syntax_error, "problem line " + std::to_string(lineno) + ": expected key = value");
    const auto key = detail::trim(line.substr(0, eq)), value = detail::trim(line.substr(eq + 1));
    if (key == "p") {
      try {
        std::size_t used = 0;
        pf.p = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument("p");
      } catch (const std::exception&) {
        throw Error(errc::syntax_error, "problem line " + std::to_string(lineno) + ": bad p '" + value + "'");
      }
      have_p = true;
    } else if (key == "h") {
      pf.h = value;
    } else if (key == "gens" || key == "generators") {
      for (auto& g : split_generators(value)) pf.generators.push_back(g);
    } else if (key == "gen") {
      pf.generators.push_back(value);
    } else if (key == "label") {
      pf.label = value;
    } else {
      throw Error(errc::syntax_error, "problem line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!have_p || pf.h.empty() || pf.generators.empty())
    throw Error(errc::invalid_argument, "problem needs p, h and at least one generator");
  return pf;
}

/// {"p": 2, "h": "...", "generators": ["...", ...], "label": "..."}
inline ProblemFile parse_problem_json(const std::string& text) {
  ProblemFile pf;
  try {
    const auto j = json::parse(text);
    pf.p = j.at("p").get<std::int64_t>();
    pf.h = j.at("h").get<std::string>();
    pf.generators = j.at("generators").get<std::vector<std::string>>();
    if (j.contains("label")) pf.label = j.at("label").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(errc::syntax_error, std::string("problem JSON: ") + e.what());
  }
  if (pf.generators.empty()) throw Error(errc::invalid_argument, "problem needs at least one generator");
  return pf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::invalid_argument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Dispatches on content: a leading '{' means JSON.
inline ProblemFile load_problem(const std::string& path) {
  const auto text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_problem_json(text);
  return parse_problem_text(text);
}

}  // namespace hknodal
