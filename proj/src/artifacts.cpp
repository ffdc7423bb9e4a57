#include "crossidf/artifacts.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

namespace crossidf {

using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> relation_strings(const FactorSpec& spec) {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < spec.relations.size(); ++j) {
    std::string s = "x" + std::to_string(spec.generator_count + j + 1) + "=";
    for (int k = 0; k < spec.generator_count; ++k)
      if (spec.relations[j] >> k & 1u) s += "x" + std::to_string(k + 1);
    out.push_back(std::move(s));
  }
  return out;
}

json constraint_list(const std::vector<UniformityConstraint>& cs) {
  json arr = json::array();
  for (const auto& c : cs) arr.push_back(json{{"T", c.T}, {"star", c.star}});
  return arr;
}

json config_echo(const EnumerateOptions& opts) {
  return json{
      {"control_factors", opts.spec.control_count},
      {"noise_factors", opts.spec.noise_count},
      {"generators", opts.spec.generator_count},
      {"relations", relation_strings(opts.spec)},
      {"runs", opts.runs},
      {"require_uniform", constraint_list(opts.require_uniform)},
      {"forbid_uniform", constraint_list(opts.forbid_uniform)},
      {"anchors", opts.anchors},
  };
}

MultilinearPoly free_indicator(const Design& d) {
  return coeffs_from_response01(d.u, d.spec.free_factors());
}

// Nonzero coefficients keyed by displayed monomial, ascending (weight, mask).
json coefficient_object(const MultilinearPoly& p, const std::vector<std::string>& vars) {
  std::vector<Monomial> masks;
  for (const auto& [m, v] : p.coeffs) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](Monomial a, Monomial b) {
    return std::make_pair(weight(a), a) < std::make_pair(weight(b), b);
  });
  json obj = json::object();
  for (const Monomial m : masks)
    obj[monomial_display(m, vars)] = rat_to_string(p.coeffs.at(m));
  return obj;
}

}  // namespace

EnumerateResult run_enumerate(const EnumerateOptions& opts) {
  EnumerateResult res;
  res.constraints = build_constraints(opts.spec, opts.runs);
  for (const auto& c : opts.require_uniform) res.constraints.require_uniform.push_back(c);
  res.constraints.forbid_uniform = opts.forbid_uniform;
  res.solutions = enumerate_designs(res.constraints, opts.workers);
  res.orbits = classify_orbits(res.solutions);
  std::map<std::uint64_t, int> by_word;
  for (std::size_t i = 0; i < res.solutions.size(); ++i)
    by_word[res.solutions[i].word()] = static_cast<int>(i);
  for (const auto& d : canonical_reps(res.solutions, opts.anchors))
    res.representative_indices.push_back(by_word.at(d.word()));
  return res;
}

std::string enumeration_bundle_json(const EnumerateOptions& opts,
                                    const EnumerateResult& res) {
  json words = json::array();
  for (const auto& d : res.solutions) words.push_back(word_to_hex(d.word()));
  json canonical = json::array();
  for (const std::uint64_t w : res.orbits.canonical) canonical.push_back(word_to_hex(w));
  const json doc = {
      {"config", config_echo(opts)},
      {"constraints",
       json{{"runs", res.constraints.runs},
            {"require_uniform", constraint_list(res.constraints.require_uniform)},
            {"forbid_uniform", constraint_list(res.constraints.forbid_uniform)}}},
      {"solutions", words},
      {"orbits", res.orbits.orbits},
      {"canonical_words", canonical},
      {"stabilizer_orders", res.orbits.stabilizer_orders},
      {"representatives", res.representative_indices},
  };
  return doc.dump(2) + "\n";
}

std::string representatives_json(const EnumerateOptions& opts,
                                 const EnumerateResult& res) {
  const auto vars = factor_names(opts.spec, false);
  json reps = json::array();
  for (const int idx : res.representative_indices) {
    const Design& d = res.solutions[idx];
    reps.push_back(json{
        {"solution_index", idx},
        {"word", word_to_hex(d.word())},
        {"coefficients", coefficient_object(free_indicator(d), vars)},
    });
  }
  const json doc = {{"config", config_echo(opts)}, {"representatives", reps}};
  return doc.dump(2) + "\n";
}

AnalyzeResult run_analyze(const Design& d, const TermOrder& order) {
  AnalyzeResult r;
  r.design = d;
  r.indicator = free_indicator(d);
  r.strength_free = strength(d, false);
  r.strength_star = strength(d, true);

  const int nstar = d.spec.star_factors();
  r.star_pairs_uniform = true;
  for (int a = 1; a <= nstar && r.star_pairs_uniform; ++a)
    for (int b = a + 1; b <= nstar; ++b)
      if (!is_uniform(marginal(d, {a, b}, true))) {
        r.star_pairs_uniform = false;
        break;
      }
  for (int a = 1; a <= nstar; ++a)
    for (int b = a + 1; b <= nstar; ++b)
      for (int c = b + 1; c <= nstar; ++c)
        if (!is_uniform(marginal(d, {a, b, c}, true)))
          r.nonuniform_star_triples.push_back({a, b, c});
  r.profile = check_cross_profile(d);

  std::vector<std::vector<Rat>> pts;
  for (const auto& row : d.points(true)) pts.emplace_back(row.begin(), row.end());
  r.basis = quotient_basis(pts, order);
  r.confounding = confounding_matrix(
      r.basis, default_model_terms(d.spec.control_count, d.spec.noise_count),
      default_model_names(d.spec.control_count, d.spec.noise_count),
      factor_names(d.spec, true));
  r.greedy = estimable_subset_greedy(r.confounding);
  std::vector<int> all_cols(r.confounding.col_names.size());
  for (std::size_t j = 0; j < all_cols.size(); ++j) all_cols[j] = static_cast<int>(j) + 1;
  r.all_columns = verify_estimable(r.confounding, all_cols);
  return r;
}

namespace {

json profile_json(const ProfileReport& p) {
  return json{{"pass", p.pass},
              {"unexpected_nonuniform", p.unexpected_nonuniform},
              {"unexpected_uniform", p.unexpected_uniform}};
}

json estimability_json(const EstimabilityReport& e) {
  return json{{"columns", e.columns}, {"rank", e.rank}, {"estimable", e.estimable}};
}

std::vector<std::string> order_names(const TermOrder& order,
                                     const std::vector<std::string>& vars) {
  std::vector<std::string> out;
  for (const int v : order.priority) out.push_back(vars[v]);
  return out;
}

}  // namespace

std::string analysis_json(const AnalyzeResult& r, const TermOrder& order) {
  const auto star_vars = factor_names(r.design.spec, true);
  const auto free_vars = factor_names(r.design.spec, false);
  json basis = json::array();
  for (const auto& e : r.basis.monomials) basis.push_back(monomial_name(e, star_vars));
  json rows = json::array();
  for (std::size_t i = 0; i < r.confounding.rows.size(); ++i) {
    json entries = json::array();
    for (const Rat& v : r.confounding.entries[i]) entries.push_back(rat_to_string(v));
    rows.push_back(entries);
  }
  const json doc = {
      {"config", json{{"order", order_names(order, star_vars)}}},
      {"design", json{{"runs", r.design.run_count()},
                      {"word", word_to_hex(r.design.word())}}},
      {"indicator", json::parse(indicator_to_json(r.indicator, free_vars))},
      {"strength", json{{"free", r.strength_free}, {"star", r.strength_star}}},
      {"star_profile", json{{"pairs_uniform", r.star_pairs_uniform},
                            {"nonuniform_triples", r.nonuniform_star_triples},
                            {"cross_profile", profile_json(r.profile)}}},
      {"quotient_basis", basis},
      {"confounding", json{{"rows", r.confounding.row_names},
                           {"columns", r.confounding.col_names},
                           {"entries", rows}}},
      {"estimability", json{{"greedy", estimability_json(r.greedy)},
                            {"all_columns", estimability_json(r.all_columns)}}},
  };
  return doc.dump(2) + "\n";
}

namespace {

std::string join_triples(const std::vector<std::vector<int>>& triples) {
  std::string s;
  for (const auto& t : triples) {
    if (!s.empty()) s += ' ';
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(t[k]);
    }
  }
  return s.empty() ? "none" : s;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ' ';
    s += std::to_string(v[k]);
  }
  return s.empty() ? "none" : s;
}

}  // namespace

std::string analysis_text(const AnalyzeResult& r) {
  const auto star_vars = factor_names(r.design.spec, true);
  const auto free_vars = factor_names(r.design.spec, false);
  std::ostringstream out;
  out << "runs: " << r.design.run_count() << "\n";
  out << "word: " << word_to_hex(r.design.word()) << "\n\n";
  out << render_grid(r.design) << "\n";
  out << "indicator (free space):\n";
  {
    std::vector<Monomial> masks;
    for (const auto& [m, v] : r.indicator.coeffs) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](Monomial a, Monomial b) {
      return std::make_pair(weight(a), a) < std::make_pair(weight(b), b);
    });
    for (const Monomial m : masks)
      out << "  " << monomial_display(m, free_vars) << ": "
          << rat_to_string(r.indicator.coeffs.at(m)) << "\n";
  }
  out << "strength: free " << r.strength_free << ", star " << r.strength_star << "\n";
  out << "star 2-marginals uniform: " << (r.star_pairs_uniform ? "yes" : "no") << "\n";
  out << "non-uniform star 3-marginals (" << r.nonuniform_star_triples.size()
      << "): " << join_triples(r.nonuniform_star_triples) << "\n";
  out << "cross profile: " << (r.profile.pass ? "pass" : "fail") << "\n";
  if (!r.profile.unexpected_nonuniform.empty())
    out << "  unexpected non-uniform: " << join_triples(r.profile.unexpected_nonuniform) << "\n";
  if (!r.profile.unexpected_uniform.empty())
    out << "  unexpected uniform: " << join_triples(r.profile.unexpected_uniform) << "\n";
  out << "quotient basis (" << r.basis.monomials.size() << "):";
  for (const auto& e : r.basis.monomials) out << " " << monomial_name(e, star_vars);
  out << "\n";
  out << "estimable columns (greedy, rank " << r.greedy.rank << "): "
      << join_ints(r.greedy.columns) << "\n";
  out << "  parameters:";
  for (const int c : r.greedy.columns) out << " " << r.confounding.col_names[c - 1];
  out << "\n";
  out << "all " << r.confounding.col_names.size()
      << " columns estimable: " << (r.all_columns.estimable ? "yes" : "no") << " (rank "
      << r.all_columns.rank << ")\n";
  return out.str();
}

std::string quotient_basis_json(const QuotientBasis& qb,
                                const std::vector<std::string>& vars) {
  json monos = json::array();
  for (const auto& e : qb.monomials) monos.push_back(monomial_name(e, vars));
  const json doc = {{"variables", vars}, {"monomials", monos}};
  return doc.dump(2) + "\n";
}

std::string confounding_csv(const ConfoundingMatrix& cm) {
  std::string out = "term";
  for (const auto& name : cm.col_names) out += "," + name;
  out += '\n';
  for (std::size_t i = 0; i < cm.rows.size(); ++i) {
    out += cm.row_names[i];
    for (const Rat& v : cm.entries[i]) out += "," + rat_to_string(v);
    out += '\n';
  }
  return out;
}

std::string render_grid(const Design& d) {
  const int s = d.spec.generator_count;
  const int q = d.spec.noise_count;
  const int derived = d.spec.control_count - s;
  const auto control = d.spec.control_fraction_points();
  const std::size_t label_width = static_cast<std::size_t>(s) + (derived ? derived + 1 : 0);

  auto pattern = [](const std::vector<int>& pt, int from, int count) {
    std::string s2;
    for (int j = from; j < from + count; ++j) s2 += pt[j] == 1 ? '+' : '-';
    return s2;
  };

  std::ostringstream out;
  out << std::string(label_width, ' ');
  for (std::size_t yc = 0; yc < std::size_t{1} << q; ++yc)
    out << "  " << pattern(point_from_index(q, yc), 0, q);
  out << "\n";
  for (std::size_t xc = 0; xc < control.size(); ++xc) {
    out << pattern(control[xc], 0, s);
    if (derived) out << " " << pattern(control[xc], s, derived);
    for (std::size_t yc = 0; yc < std::size_t{1} << q; ++yc) {
      const bool in = d.u[(xc << q) | yc] != 0;
      out << "  " << std::string(q / 2, ' ') << (in ? 'o' : '.')
          << std::string(q - 1 - q / 2, ' ');
    }
    out << "\n";
  }
  return out.str();
}

namespace {

// First coefficient-level difference between two representatives documents,
// named by representative and monomial; falls back to a generic note.
std::string representatives_diff(const std::string& golden, const std::string& fresh) {
  json g, f;
  try {
    g = json::parse(golden);
    f = json::parse(fresh);
  } catch (const json::exception&) {
    return "content differs (golden is not valid JSON)";
  }
  try {
    const auto& gr = g.at("representatives");
    const auto& fr = f.at("representatives");
    if (gr.size() != fr.size())
      return "representative count differs: golden " + std::to_string(gr.size()) +
             ", recomputed " + std::to_string(fr.size());
    for (std::size_t i = 0; i < gr.size(); ++i) {
      const std::string gw = gr[i].at("word").get<std::string>();
      const std::string fw = fr[i].at("word").get<std::string>();
      if (gw != fw)
        return "representative " + std::to_string(i + 1) + ": word differs: golden " + gw +
               ", recomputed " + fw;
      const auto& gc = gr[i].at("coefficients");
      const auto& fc = fr[i].at("coefficients");
      for (const auto& [mono, val] : fc.items()) {
        if (!gc.contains(mono))
          return "representative " + std::to_string(i + 1) + " (word " + fw +
                 "): coefficient of " + mono + " missing from golden";
        if (gc.at(mono) != val)
          return "representative " + std::to_string(i + 1) + " (word " + fw +
                 "): coefficient of " + mono + " differs: golden " +
                 gc.at(mono).get<std::string>() + ", recomputed " + val.get<std::string>();
      }
      for (const auto& [mono, val] : gc.items())
        if (!fc.contains(mono))
          return "representative " + std::to_string(i + 1) + " (word " + fw +
                 "): golden has extra coefficient of " + mono;
    }
  } catch (const json::exception&) {
    return "content differs (structure mismatch)";
  }
  return "content differs";
}

// Reference 24-run design: the anchored representative featured throughout
// the golden artifacts (quotient basis, confounding matrix, design CSV).
constexpr std::uint64_t kDesign24Word = 0xc12629581a946483ull;

Design reference_design24() {
  return Design::from_word(FactorSpec::default_instance(), kDesign24Word);
}

// Reference 32-run design: the full control fraction crossed with the
// y1y2y3 = +1 half of the noise factorial.
Design reference_design32() {
  const auto spec = FactorSpec::default_instance();
  std::vector<std::vector<int>> outer;
  for (std::size_t yc = 0; yc < std::size_t{1} << spec.noise_count; ++yc) {
    const auto pt = point_from_index(spec.noise_count, yc);
    int prod = 1;
    for (const int lv : pt) prod *= lv;
    if (prod == 1) outer.push_back(pt);
  }
  return direct_product(spec, spec.control_fraction_points(), outer);
}

}  // namespace

std::vector<std::string> golden_artifact_names() {
  return {"enumeration.json", "representatives.json", "design24.csv",
          "design32.csv",     "quotient_basis.json",  "confounding.csv"};
}

std::string golden_artifact_content(const std::string& name, int workers) {
  if (name == "enumeration.json" || name == "representatives.json") {
    EnumerateOptions opts;
    opts.workers = workers;
    const EnumerateResult res = run_enumerate(opts);
    return name == "enumeration.json" ? enumeration_bundle_json(opts, res)
                                      : representatives_json(opts, res);
  }
  if (name == "design24.csv") return design_to_csv(reference_design24(), true);
  if (name == "design32.csv") return design_to_csv(reference_design32(), true);
  if (name == "quotient_basis.json" || name == "confounding.csv") {
    const Design d = reference_design24();
    const AnalyzeResult r = run_analyze(d, TermOrder::degrevlex(d.spec.star_factors()));
    return name == "quotient_basis.json"
               ? quotient_basis_json(r.basis, factor_names(d.spec, true))
               : confounding_csv(r.confounding);
  }
  throw std::invalid_argument("unknown golden artifact: " + name);
}

std::vector<VerifyIssue> verify_goldens(const std::string& dir, int workers) {
  std::vector<VerifyIssue> issues;
  for (const auto& name : golden_artifact_names()) {
    const std::string path = dir + "/" + name;
    std::string golden;
    try {
      golden = read_file(path);
    } catch (const IoError&) {
      issues.push_back({name, "missing golden file"});
      continue;
    }
    const std::string fresh = golden_artifact_content(name, workers);
    if (golden == fresh) continue;
    std::string detail = "content differs";
    if (name == "representatives.json") detail = representatives_diff(golden, fresh);
    issues.push_back({name, detail});
  }
  return issues;
}

}  // namespace crossidf
