#include "crossidf/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace crossidf {

using json = nlohmann::ordered_json;

ParseError::ParseError(const std::string& file, int line_, const std::string& what)
    : std::runtime_error(file + ":" + std::to_string(line_) + ": " + what),
      line(line_) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("cannot write " + path);
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (const char ch : line) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (ch != ' ' && ch != '\t' && ch != '\r') {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

std::string design_to_csv(const Design& d, bool star) {
  std::string out;
  const auto names = factor_names(d.spec, star);
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (j) out += ',';
    out += names[j];
  }
  out += '\n';
  for (const auto& row : d.points(star)) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += row[j] == 1 ? "1" : "-1";
    }
    out += '\n';
  }
  return out;
}

Design design_from_csv(const std::string& text, const std::string& file) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(file, 1, "empty file");
  const auto spec = FactorSpec::default_instance();
  const auto header = split(line, ',');
  bool star;
  if (header == factor_names(spec, true)) {
    star = true;
  } else if (header == factor_names(spec, false)) {
    star = false;
  } else {
    throw ParseError(file, 1, "header must name the star or free factors");
  }
  std::vector<std::vector<int>> pts;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size())
      throw ParseError(file, lineno, "expected " + std::to_string(header.size()) + " columns");
    std::vector<int> pt;
    for (const auto& c : cells) {
      if (c == "1" || c == "+1")
        pt.push_back(1);
      else if (c == "-1")
        pt.push_back(-1);
      else
        throw ParseError(file, lineno, "levels must be -1 or 1, got '" + c + "'");
    }
    pts.push_back(std::move(pt));
  }
  try {
    return Design::from_points(spec, pts);
  } catch (const std::invalid_argument& e) {
    throw ParseError(file, lineno, e.what());
  }
}

std::string monomial_display(Monomial m, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t j = 0; j < vars.size(); ++j)
    if (m >> j & 1u) s += vars[j];
  return s.empty() ? "1" : s;
}

namespace {

long long to_ll(const Int& v, const std::string& what) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::invalid_argument(what + " exceeds the JSON integer range");
  return static_cast<long long>(v);
}

}  // namespace

std::string indicator_to_json(const MultilinearPoly& p,
                              const std::vector<std::string>& vars) {
  if (static_cast<int>(vars.size()) != p.n)
    throw std::invalid_argument("one variable name per factor");
  std::vector<Monomial> masks;
  for (const auto& [m, v] : p.coeffs) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](Monomial a, Monomial b) {
    return std::make_pair(weight(a), a) < std::make_pair(weight(b), b);
  });
  json terms = json::array();
  for (const Monomial m : masks) {
    json support = json::array();
    for (int j = 0; j < p.n; ++j)
      if (m >> j & 1u) support.push_back(j);
    const Rat& v = p.coeffs.at(m);
    terms.push_back(json{
        {"support", support},
        {"num", to_ll(boost::multiprecision::numerator(v), "numerator")},
        {"den", to_ll(boost::multiprecision::denominator(v), "denominator")},
    });
  }
  const json doc = {{"n", p.n}, {"vars", vars}, {"terms", terms}};
  return doc.dump(2) + "\n";
}

std::pair<MultilinearPoly, std::vector<std::string>> indicator_from_json(
    const std::string& text, const std::string& file) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(file, static_cast<int>(e.byte), e.what());
  }
  try {
    MultilinearPoly p;
    p.n = doc.at("n").get<int>();
    if (p.n < 0 || p.n > 16) throw std::invalid_argument("n out of range");
    std::vector<std::string> vars = doc.at("vars").get<std::vector<std::string>>();
    if (static_cast<int>(vars.size()) != p.n)
      throw std::invalid_argument("vars length must equal n");
    for (const auto& term : doc.at("terms")) {
      Monomial m = 0;
      for (const int j : term.at("support").get<std::vector<int>>()) {
        if (j < 0 || j >= p.n) throw std::invalid_argument("support index out of range");
        if (m >> j & 1u) throw std::invalid_argument("repeated support index");
        m |= 1u << j;
      }
      const long long num = term.at("num").get<long long>();
      const long long den = term.at("den").get<long long>();
      if (den == 0) throw std::invalid_argument("zero denominator");
      if (p.coeffs.count(m)) throw std::invalid_argument("repeated term");
      p.set_coeff(m, Rat(num, den));
    }
    return {std::move(p), std::move(vars)};
  } catch (const json::exception& e) {
    throw ParseError(file, 0, e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(file, 0, e.what());
  }
}

std::string marginal_to_json(const MarginalTable& t) {
  const json doc = {
      {"T", t.T}, {"star", t.star}, {"counts", t.counts}, {"uniform", is_uniform(t)}};
  return doc.dump(2) + "\n";
}

std::string word_to_hex(std::uint64_t w) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[w & 0xf];
    w >>= 4;
  }
  return s;
}

std::uint64_t hex_to_word(const std::string& s) {
  if (s.empty() || s.size() > 16) throw std::invalid_argument("occupancy word must be 1-16 hex digits");
  std::uint64_t w = 0;
  for (const char ch : s) {
    int d;
    if (ch >= '0' && ch <= '9')
      d = ch - '0';
    else if (ch >= 'a' && ch <= 'f')
      d = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F')
      d = ch - 'A' + 10;
    else
      throw std::invalid_argument("invalid hex digit in occupancy word");
    w = (w << 4) | static_cast<std::uint64_t>(d);
  }
  return w;
}

}  // namespace crossidf
