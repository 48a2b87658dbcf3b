#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hknodal/bundle.hpp"
#include "hknodal/cycle.hpp"
#include "hknodal/hilbert.hpp"
#include "hknodal/io.hpp"

namespace hknodal {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "hknodal-report/1";

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int invalid_input = 1;
inline constexpr int not_artinian = 2;
inline constexpr int extraction_failed = 3;
inline constexpr int mismatch = 4;
}  // namespace exit_code

inline int exit_code_for(errc code) {
  switch (code) {
    case errc::not_artinian: return exit_code::not_artinian;
    case errc::ambiguous_extraction:
    case errc::no_consistent_data:
    case errc::q_too_small: return exit_code::extraction_failed;
    default: return exit_code::invalid_input;
  }
}

/// Result of one subcommand. `body` holds everything except timing, so it is
/// identical across runs for the same input.
struct Report {
  json body;
  std::vector<std::string> text;
  int exit_code = exit_code::ok;
};

inline Report make_report(const std::string& command, json input) {
  Report r;
  r.body["schema"] = kReportSchema;
  r.body["tool"] = "hknodal";
  r.body["version"] = kToolVersion;
  r.body["command"] = command;
  r.body["input"] = std::move(input);
  return r;
}

inline json dims_json(const HilbertData& d) { return json(d.dims); }

inline std::string dims_text(const HilbertData& d) {
  std::string s;
  for (std::size_t i = 0; i < d.dims.size(); ++i) s += (i ? " " : "") + std::to_string(d.dims[i]);
  return s;
}

inline std::string strands_text(const ClassificationData& data) {
  std::string s;
  for (const auto& st : data.strands()) {
    s += "  n=" + std::to_string(st.n) + " r=" + std::to_string(st.r) + " s=" + std::to_string(st.s);
    s += st.B ? " B=" + std::to_string(*st.B) : std::string();
    s += "\n";
  }
  if (!s.empty()) s.pop_back();
  return s;
}

inline std::string coefficients_text(const HKCoefficients& c) {
  std::string s = "mu=" + to_string(c.mu) + " alpha=" + to_string(c.alpha);
  for (const auto& [res, v] : c.R) s += " R(" + std::to_string(res) + ")=" + to_string(v);
  return s;
}

inline const char* kNodalWarning =
    "warning: h is assumed to be an irreducible nodal cubic; this is not checked";

/// e_n = dim A/(J^[q], h) with its Hilbert function.
inline Report cmd_en(const ProblemFile& problem, unsigned n, const HilbertOptions& opts = {}) {
  const auto spec = problem.spec();
  const auto q = spec.field().power_of_p(n);
  auto r = make_report("en", json{{"problem", problem.to_json()}, {"n", n}});
  const auto data = quotient_hilbert(spec, q, opts);
  r.body["result"] = json{{"q", q}, {"hilbert", dims_json(data)}, {"e_n", data.colength()}};
  r.text.push_back("q = " + std::to_string(q));
  r.text.push_back("hilbert function: " + dims_text(data));
  r.text.push_back("e_" + std::to_string(n) + " = " + std::to_string(data.colength()));
  return r;
}

/// Hilbert function, poin and the kernel series u_n at q = p^n.
inline Report cmd_series(const ProblemFile& problem, unsigned n, const HilbertOptions& opts = {}) {
  const auto spec = problem.spec();
  const auto q = spec.field().power_of_p(n);
  auto r = make_report("series", json{{"problem", problem.to_json()}, {"n", n}});
  const auto data = quotient_hilbert(spec, q, opts);
  const auto u = kernel_series_from(data, spec.degrees(), q);
  const auto e = en_from_series(u, spec.degrees(), q);
  r.body["result"] = json{{"q", q},
                          {"hilbert", dims_json(data)},
                          {"poin", to_json(poin_quotient(data))},
                          {"kernel_series", to_json(u)},
                          {"kernel_series_text", render(u)},
                          {"value_at_one", to_json_value(u.value_at_one())},
                          {"e_n", data.colength()},
                          {"e_n_from_series", to_json_value(e)}};
  r.text.push_back(kNodalWarning);
  r.text.push_back("q = " + std::to_string(q));
  r.text.push_back("hilbert function: " + dims_text(data));
  r.text.push_back("poin = " + render(poin_quotient(data)));
  r.text.push_back("u = " + render(u));
  r.text.push_back("e_n = " + std::to_string(data.colength()) + " (from series: " + e.str() + ")");
  return r;
}

struct Classification {
  std::uint64_t q;
  LaurentPoly series;
  ClassificationData data;
  HKCoefficients coefficients;
  bool rank_ok;
  bool degree_ok;
};

inline Classification classify(const IdealSpec& spec, unsigned n, const HilbertOptions& opts) {
  const auto q = spec.field().power_of_p(n);
  auto u = kernel_series(spec, q, opts);
  auto data = extract_data(u, q, spec.field());
  auto coeffs = hk_coefficients(data, spec.degrees(), spec.field());
  std::int64_t sum_d = 0;
  for (auto d : spec.degrees()) sum_d += d;
  const bool rank_ok = data.rank() == static_cast<std::int64_t>(spec.generators().size()) - 1;
  const bool degree_ok = data.degree_pairing() == 3 * sum_d;
  return {q, std::move(u), std::move(data), std::move(coeffs), rank_ok, degree_ok};
}

inline Report cmd_classify(const ProblemFile& problem, unsigned n, const HilbertOptions& opts = {}) {
  const auto spec = problem.spec();
  auto r = make_report("classify", json{{"problem", problem.to_json()}, {"n", n}});
  const auto c = classify(spec, n, opts);
  r.body["result"] = json{{"q", c.q},
                          {"kernel_series", to_json(c.series)},
                          {"classification", to_json(c.data)},
                          {"coefficients", to_json(c.coefficients)},
                          {"checks", {{"rank_equals_s_minus_1", c.rank_ok},
                                      {"degree_equals_3_sum_d", c.degree_ok}}}};
  r.text.push_back(kNodalWarning);
  r.text.push_back("u = " + render(c.series) + "  (q = " + std::to_string(c.q) + ")");
  r.text.push_back("strands:");
  r.text.push_back(strands_text(c.data));
  r.text.push_back(coefficients_text(c.coefficients));
  r.text.push_back(std::string("rank check ") + (c.rank_ok ? "ok" : "FAILED") + ", degree check " +
                   (c.degree_ok ? "ok" : "FAILED"));
  if (!c.rank_ok || !c.degree_ok) r.exit_code = exit_code::mismatch;
  return r;
}

/// Predictions of e_n from coefficients. Values of n where the formula does
/// not apply (n = 0 in characteristic 3) are reported as null.
inline json prediction_table(const HKCoefficients& coeffs, const PrimeField& field,
                             const std::vector<unsigned>& ns, std::vector<std::string>& text) {
  json rows = json::array();
  for (auto n : ns) {
    json row{{"n", n}, {"q", to_json_value(big_pow(field.characteristic(), n))}};
    if (field.characteristic() == 3 && n == 0) {
      row["e_n"] = nullptr;
      text.push_back("n=" + std::to_string(n) + ": formula does not apply");
    } else {
      const auto e = predict_en(coeffs, field, n);
      row["e_n"] = to_json_value(e);
      text.push_back("n=" + std::to_string(n) + ": e_n = " + e.str());
    }
    rows.push_back(row);
  }
  return rows;
}

/// Predict from a problem, classifying at n_classify first.
inline Report cmd_predict(const ProblemFile& problem, unsigned n_classify,
                          const std::vector<unsigned>& ns, const HilbertOptions& opts = {}) {
  const auto spec = problem.spec();
  auto r = make_report("predict", json{{"problem", problem.to_json()},
                                       {"classify_n", n_classify},
                                       {"n", ns}});
  const auto c = classify(spec, n_classify, opts);
  r.body["result"]["classification"] = to_json(c.data);
  r.body["result"]["coefficients"] = to_json(c.coefficients);
  r.text.push_back(coefficients_text(c.coefficients));
  r.body["result"]["predictions"] = prediction_table(c.coefficients, spec.field(), ns, r.text);
  return r;
}

/// Predict from stored classification data and generator degrees.
inline Report cmd_predict(const ClassificationData& data, const std::vector<std::int64_t>& degrees,
                          std::int64_t p, const std::vector<unsigned>& ns) {
  const PrimeField field(p);
  auto r = make_report("predict", json{{"classification", to_json(data)},
                                       {"degrees", degrees},
                                       {"p", p},
                                       {"n", ns}});
  const auto coeffs = hk_coefficients(data, degrees, field);
  r.body["result"]["coefficients"] = to_json(coeffs);
  r.text.push_back(coefficients_text(coeffs));
  r.body["result"]["predictions"] = prediction_table(coeffs, field, ns, r.text);
  return r;
}

/// Classify at n_classify, then compare predicted and direct e_n for
/// n in [n_min, n_max]. Any mismatch sets exit code 4.
inline Report cmd_verify(const ProblemFile& problem, unsigned n_classify, unsigned n_max,
                         std::optional<unsigned> n_min = std::nullopt,
                         const HilbertOptions& opts = {}) {
  const auto spec = problem.spec();
  const bool char3 = spec.field().characteristic() == 3;
  const unsigned lo = n_min.value_or(char3 ? 1 : 0);
  auto r = make_report("verify", json{{"problem", problem.to_json()},
                                      {"classify_n", n_classify},
                                      {"n_min", lo},
                                      {"n_max", n_max}});
  const auto c = classify(spec, n_classify, opts);
  r.body["result"]["classification"] = to_json(c.data);
  r.body["result"]["coefficients"] = to_json(c.coefficients);
  r.body["result"]["checks"] = {{"rank_equals_s_minus_1", c.rank_ok},
                                {"degree_equals_3_sum_d", c.degree_ok}};
  r.text.push_back(kNodalWarning);
  r.text.push_back(coefficients_text(c.coefficients));
  bool all_match = c.rank_ok && c.degree_ok;
  json rows = json::array();
  for (unsigned n = lo; n <= n_max; ++n) {
    const auto q = spec.field().power_of_p(n);
    const BigInt direct = colength(spec, q, opts);
    json row{{"n", n}, {"q", q}, {"direct", to_json_value(direct)}};
    if (char3 && n == 0) {
      row["predicted"] = nullptr;
      row["match"] = nullptr;
      r.text.push_back("n=0: direct " + direct.str() + ", formula does not apply");
    } else {
      const auto predicted = predict_en(c.coefficients, spec.field(), n);
      const bool match = predicted == direct;
      all_match = all_match && match;
      row["predicted"] = to_json_value(predicted);
      row["match"] = match;
      r.text.push_back("n=" + std::to_string(n) + ": predicted " + predicted.str() + ", direct " +
                       direct.str() + (match ? "  ok" : "  MISMATCH"));
    }
    rows.push_back(row);
  }
  r.body["result"]["table"] = rows;
  r.body["result"]["all_match"] = all_match;
  if (!all_match) r.exit_code = exit_code::mismatch;
  return r;
}

/// Bloc structure and invariants of a cycle.
inline Report cmd_cycle(const std::string& text) {
  const auto a = Cycle::parse(text);
  auto r = make_report("cycle", json{{"cycle", text}});
  json blocs = json::array();
  for (const auto& b : a.blocs())
    blocs.push_back({{"entry", b.entry}, {"length", b.length}, {"epsilon", b.epsilon},
                     {"epsilon_star", b.epsilon_star}});
  json series = json::object();
  bool agree = true;
  for (auto [name, fn] : {std::pair{"P2", &P2}, std::pair{"P3", &P3}, std::pair{"P4", &P4}}) {
    const auto closed = fn(a, SeriesMode::closed), direct = fn(a, SeriesMode::direct);
    agree = agree && closed == direct;
    series[name] = {{"closed", to_json(closed)}, {"direct", to_json(direct)},
                    {"text", render(closed)}, {"agree", closed == direct}};
    r.text.push_back(std::string(name) + " = " + render(closed) +
                     (closed == direct ? "" : "  (direct: " + render(direct) + ")"));
  }
  r.body["result"] = {{"canonical", a.str()},    {"blocs", blocs},
                      {"gamma1", a.gamma1()},    {"gamma2", a.gamma2()},
                      {"gamma3", a.gamma3()},    {"gamma4", a.gamma4()},
                      {"theta", a.theta()},      {"h0_m1", h0_indecomposable(a, 1)},
                      {"series", series}};
  r.text.insert(r.text.begin(),
                "cycle " + a.str() + ": gamma1=" + std::to_string(a.gamma1()) +
                    " gamma2=" + std::to_string(a.gamma2()) + " gamma3=" + std::to_string(a.gamma3()) +
                    " gamma4=" + std::to_string(a.gamma4()) + " theta=" + std::to_string(a.theta()));
  if (!agree) r.exit_code = exit_code::mismatch;
  return r;
}

/// Closed form vs. classification pipeline vs. direct engine for J = (x, y, z)
/// and h = x^3 + y^3 + xyz. The direct column is filled for q <= direct_max_q.
inline Report cmd_pardue(std::int64_t p, unsigned n_max, std::uint64_t direct_max_q = 64,
                         const HilbertOptions& opts = {}) {
  const PrimeField field(p);
  auto r = make_report("pardue", json{{"p", p}, {"n_max", n_max}, {"direct_max_q", direct_max_q}});
  const IdealSpec spec(parse_form("x^3+y^3+x*y*z", field),
                       {parse_form("x", field), parse_form("y", field), parse_form("z", field)});
  const auto coeffs = hk_coefficients(pardue_data(), {1, 1, 1}, field);
  r.body["result"]["classification"] = to_json(pardue_data());
  r.body["result"]["coefficients"] = to_json(coeffs);
  bool all_match = true;
  json rows = json::array();
  for (unsigned n = 0; n <= n_max; ++n) {
    const auto q = field.power_of_p(n);
    const BigInt closed = pardue_closed_form(field, n);
    json row{{"n", n}, {"q", q}, {"closed_form", to_json_value(closed)}};
    std::string line = "n=" + std::to_string(n) + " q=" + std::to_string(q) + ": closed " + closed.str();
    bool match = true;
    if (p == 3 && n == 0) {
      row["pipeline"] = nullptr;
      row["series_identity"] = nullptr;
      line += ", pipeline n/a";
    } else {
      const auto predicted = predict_en(coeffs, field, n);
      const bool series_ok = synth_series(pardue_data(), q, field) == pardue_series(q);
      row["pipeline"] = to_json_value(predicted);
      row["series_identity"] = series_ok;
      match = match && predicted == closed && series_ok;
      line += ", pipeline " + predicted.str();
    }
    if (q <= direct_max_q) {
      const BigInt direct = colength(spec, q, opts);
      row["direct"] = to_json_value(direct);
      match = match && direct == closed;
      line += ", direct " + direct.str();
    } else {
      row["direct"] = nullptr;
    }
    row["match"] = match;
    all_match = all_match && match;
    r.text.push_back(line + (match ? "  ok" : "  MISMATCH"));
    rows.push_back(row);
  }
  r.body["result"]["table"] = rows;
  r.body["result"]["all_match"] = all_match;
  if (!all_match) r.exit_code = exit_code::mismatch;
  return r;
}

}  // namespace hknodal
