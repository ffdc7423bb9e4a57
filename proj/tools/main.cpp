// crossidf: enumerate, analyze, and verify two-level cross-array designs.
//
// Exit codes: 0 success (including zero solutions), 1 verification mismatch,
// 2 usage or config error, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crossidf/artifacts.hpp"

namespace {

using namespace crossidf;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(what + ": '" + item + "' is not an integer");
    }
  }
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

// "i,j,k" or "i,j,k:star".
UniformityConstraint parse_subset(const std::string& s, const std::string& what) {
  UniformityConstraint c;
  std::string body = s;
  const auto colon = s.find(':');
  if (colon != std::string::npos) {
    const std::string tag = s.substr(colon + 1);
    if (tag != "star" && tag != "free")
      throw UsageError(what + ": space tag must be 'star' or 'free', got '" + tag + "'");
    c.star = tag == "star";
    body = s.substr(0, colon);
  }
  c.T = parse_int_list(body, what);
  return c;
}

TermOrder parse_order(const std::string& s, const FactorSpec& spec) {
  const auto vars = factor_names(spec, true);
  if (s.empty() || s == "default") return TermOrder::degrevlex(spec.star_factors());
  TermOrder order;
  std::stringstream ss(s);
  std::string item;
  std::vector<bool> seen(vars.size(), false);
  while (std::getline(ss, item, ',')) {
    const auto it = std::find(vars.begin(), vars.end(), item);
    if (it == vars.end())
      throw UsageError("--order: unknown variable '" + item + "'");
    const int j = static_cast<int>(it - vars.begin());
    if (seen[j]) throw UsageError("--order: variable '" + item + "' repeated");
    seen[j] = true;
    order.priority.push_back(j);
  }
  if (order.priority.size() != vars.size())
    throw UsageError("--order must list all " + std::to_string(vars.size()) + " variables");
  return order;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

std::string plural(std::size_t n, const std::string& noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

Design load_design(const std::string& path) {
  return design_from_csv(read_file(path), path);
}

int cmd_enumerate(const EnumerateOptions& opts, const std::string& out_path) {
  const EnumerateResult res = run_enumerate(opts);
  emit(out_path, enumeration_bundle_json(opts, res));
  std::cerr << plural(res.solutions.size(), "solution") << ", "
            << plural(res.orbits.orbits.size(), "orbit") << ", "
            << plural(res.representative_indices.size(), "anchored representative")
            << "\n";
  return kExitOk;
}

int cmd_analyze(const std::string& in_path, const TermOrder& order,
                const std::string& format, const std::string& out_path) {
  const AnalyzeResult r = run_analyze(load_design(in_path), order);
  std::string content;
  if (format == "text")
    content = analysis_text(r);
  else if (format == "csv")
    content = confounding_csv(r.confounding);
  else
    content = analysis_json(r, order);
  emit(out_path, content);
  return kExitOk;
}

int cmd_verify(const std::string& dir, int workers, bool update) {
  if (update) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);  // write_file reports failure
    for (const auto& name : golden_artifact_names())
      write_file(dir + "/" + name, golden_artifact_content(name, workers));
    std::cerr << "wrote " << plural(golden_artifact_names().size(), "golden artifact")
              << " to " << dir << "\n";
    return kExitOk;
  }
  const auto issues = verify_goldens(dir, workers);
  if (issues.empty()) {
    std::cerr << "verified " << plural(golden_artifact_names().size(), "golden artifact")
              << "\n";
    return kExitOk;
  }
  for (const auto& issue : issues)
    std::cerr << "mismatch: " << issue.file << ": " << issue.detail << "\n";
  return kExitMismatch;
}

int cmd_indicator(const std::string& in_path, const std::string& out_path) {
  const Design d = load_design(in_path);
  const auto p = coeffs_from_response01(d.u, d.spec.free_factors());
  emit(out_path, indicator_to_json(p, factor_names(d.spec, false)));
  return kExitOk;
}

int cmd_design(const std::string& in_path, const std::string& word_hex, bool star,
               const std::string& out_path) {
  const auto spec = FactorSpec::default_instance();
  Design d;
  if (!word_hex.empty()) {
    d = Design::from_word(spec, hex_to_word(word_hex));
  } else {
    const auto [p, vars] = indicator_from_json(read_file(in_path), in_path);
    if (p.n != spec.free_factors())
      throw UsageError("indicator must have " + std::to_string(spec.free_factors()) +
                       " variables");
    if (!is_indicator(p))
      throw UsageError("polynomial is not an indicator (not 0/1-valued)");
    const auto resp = response_from_coeffs(p);
    std::vector<std::uint8_t> u(resp.size());
    for (std::size_t i = 0; i < resp.size(); ++i) u[i] = resp[i] == 1 ? 1 : 0;
    d = Design{spec, u};
  }
  emit(out_path, design_to_csv(d, star));
  return kExitOk;
}

int cmd_strength(const std::string& in_path) {
  const Design d = load_design(in_path);
  std::cout << "free: " << strength(d, false) << "\nstar: " << strength(d, true) << "\n";
  return kExitOk;
}

int cmd_marginals(const std::string& in_path, const std::vector<std::string>& subsets,
                  const std::string& out_path) {
  const Design d = load_design(in_path);
  std::string out;
  for (const auto& s : subsets) {
    const auto c = parse_subset(s, "--T");
    out += marginal_to_json(marginal(d, c.T, c.star));
  }
  emit(out_path, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-level cross-array designs via polynomial indicator functions"};
  app.require_subcommand(1);
  app.formatter(std::make_shared<CLI::Formatter>());

  int runs = 24;
  int workers = 1;
  std::string order_spec = "default";
  std::string format = "json";
  std::string out_path;
  std::string in_path;
  std::string dir = "goldens";
  std::string word_hex;
  bool star = true;
  bool update = false;
  std::vector<std::string> anchor_specs;
  std::vector<std::string> require_specs;
  std::vector<std::string> forbid_specs;
  std::vector<std::string> subset_specs;

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate all designs satisfying the constraints");
  enumerate->add_option("--runs", runs, "Run count (default 24)");
  enumerate->add_option("--workers", workers, "Worker threads for the search");
  enumerate->add_option("--anchor", anchor_specs,
                        "Anchor point as comma-separated free-space levels; repeatable");
  enumerate->add_option("--require-uniform", require_specs,
                        "Extra uniformity constraint 'i,j,k[:star]'; repeatable");
  enumerate->add_option("--forbid-uniform", forbid_specs,
                        "Drop solutions whose marginal 'i,j,k[:star]' is uniform; repeatable");
  enumerate->add_option("--out", out_path, "Write the result bundle here (default stdout)");

  auto* analyze = app.add_subcommand("analyze", "Full report for one design CSV");
  analyze->add_option("file", in_path, "Design CSV")->required();
  analyze->add_option("--order", order_spec,
                      "Term-order priority, comma-separated variables highest first");
  analyze->add_option("--format", format, "json | text | csv (confounding matrix only)")
      ->check(CLI::IsMember({"json", "text", "csv"}));
  analyze->add_option("--out", out_path, "Write the report here (default stdout)");

  auto* verify = app.add_subcommand("verify", "Recompute golden artifacts and byte-compare");
  verify->add_option("--dir", dir, "Golden directory (default goldens)");
  verify->add_option("--workers", workers, "Worker threads for the recomputation");
  verify->add_flag("--update", update, "Rewrite the golden artifacts instead of comparing");

  auto* indicator = app.add_subcommand("indicator", "Design CSV -> indicator coefficients JSON");
  indicator->add_option("file", in_path, "Design CSV")->required();
  indicator->add_option("--out", out_path, "Write the JSON here (default stdout)");

  auto* design = app.add_subcommand("design", "Indicator JSON or occupancy word -> design CSV");
  design->add_option("file", in_path, "Indicator JSON");
  design->add_option("--word", word_hex, "Occupancy word, 16 hex digits");
  design->add_flag("--star,!--free", star, "Emit star-space columns (default) or free-space");
  design->add_option("--out", out_path, "Write the CSV here (default stdout)");

  auto* strength_cmd = app.add_subcommand("strength", "Free- and star-space strength of a design CSV");
  strength_cmd->add_option("file", in_path, "Design CSV")->required();

  auto* marginals = app.add_subcommand("marginals", "Marginal counts for factor subsets");
  marginals->add_option("file", in_path, "Design CSV")->required();
  marginals->add_option("--T", subset_specs, "Factor subset 'i,j,k[:star]'; repeatable")
      ->required();
  marginals->add_option("--out", out_path, "Write the JSON here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*enumerate) {
      EnumerateOptions opts;
      opts.runs = runs;
      opts.workers = workers;
      if (workers < 1) throw UsageError("--workers must be at least 1");
      if (!anchor_specs.empty()) {
        opts.anchors.clear();
        for (const auto& s : anchor_specs) {
          auto pt = parse_int_list(s, "--anchor");
          for (const int v : pt)
            if (v != 1 && v != -1) throw UsageError("--anchor levels must be -1 or 1");
          if (static_cast<int>(pt.size()) != opts.spec.free_factors())
            throw UsageError("--anchor needs " + std::to_string(opts.spec.free_factors()) +
                             " levels");
          opts.anchors.push_back(std::move(pt));
        }
      }
      for (const auto& s : require_specs)
        opts.require_uniform.push_back(parse_subset(s, "--require-uniform"));
      for (const auto& s : forbid_specs)
        opts.forbid_uniform.push_back(parse_subset(s, "--forbid-uniform"));
      return cmd_enumerate(opts, out_path);
    }
    if (*analyze)
      return cmd_analyze(in_path, parse_order(order_spec, FactorSpec::default_instance()),
                         format, out_path);
    if (*verify) {
      if (workers < 1) throw UsageError("--workers must be at least 1");
      return cmd_verify(dir, workers, update);
    }
    if (*indicator) return cmd_indicator(in_path, out_path);
    if (*design) {
      if (word_hex.empty() == in_path.empty())
        throw UsageError("design needs exactly one of an indicator JSON file or --word");
      return cmd_design(in_path, word_hex, star, out_path);
    }
    if (*strength_cmd) return cmd_strength(in_path);
    if (*marginals) return cmd_marginals(in_path, subset_specs, out_path);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const crossidf::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const crossidf::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
