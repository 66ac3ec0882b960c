#include "psforms/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace psforms::io {

namespace fs = std::filesystem;

ParseError::ParseError(std::string f, std::string loc, const std::string& message)
    : InputError(f + ":" + (loc.empty() ? "" : " " + loc + ":") + " " + message),
      file(std::move(f)),
      location(std::move(loc)) {}

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

std::string ptr(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string ptr(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

struct Ctx {
  const std::string& file;
  [[noreturn]] void fail(const std::string& where, const std::string& msg) const { throw ParseError(file, where, msg); }

  const Json& field(const Json& obj, const std::string& where, const char* key) const {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
  }
  const Json& array(const Json& j, const std::string& where) const {
    if (!j.is_array()) fail(where, "expected an array");
    return j;
  }
  std::string string(const Json& j, const std::string& where) const {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
  }
  long integer(const Json& j, const std::string& where) const {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long>();
  }
  Rational rational(const Json& j, const std::string& where) const {
    try {
      if (j.is_string()) return parse_rational(j.get<std::string>());
      if (j.is_number_integer()) return Rational(j.get<long>());
    } catch (const InputError& e) {
      fail(where, e.what());
    }
    fail(where, "expected a rational string \"p/q\"");
  }
  Simplex simplex(const Json& j, const std::string& where) const {
    array(j, where);
    std::vector<VertexId> vs;
    for (std::size_t i = 0; i < j.size(); ++i) vs.push_back(string(j[i], ptr(where, i)));
    try {
      return Simplex(std::move(vs));
    } catch (const InputError& e) {
      fail(where, e.what());
    }
  }
};

/// Sign of the permutation that sorts `v` (entries distinct).
template <typename T>
int sort_sign(std::vector<T> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[j] < v[i]) sign = -sign;
  return sign;
}

Json string_array(const std::vector<std::string>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s);
  return out;
}

}  // namespace

Json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "", "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::string msg = e.what();
    auto cut = msg.find("parse error");
    throw ParseError(path.string(), line_col(text, e.byte > 0 ? e.byte - 1 : 0), cut == std::string::npos ? msg : msg.substr(cut));
  }
}

SimplicialComplex complex_from_json(const Json& j, const std::string& file) {
  Ctx c{file};
  std::set<VertexId> names;
  if (j.is_object() && j.contains("vertices")) {
    const Json& vs = c.array(j["vertices"], "/vertices");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      auto name = c.string(vs[i], ptr("/vertices", i));
      if (name.empty()) c.fail(ptr("/vertices", i), "empty vertex name");
      if (!names.insert(name).second) c.fail(ptr("/vertices", i), "duplicate vertex \"" + name + "\"");
    }
  }
  const Json& gens = c.array(c.field(j, "", "simplices"), "/simplices");
  std::vector<Simplex> simplices;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string where = ptr("/simplices", i);
    Simplex s = c.simplex(gens[i], where);
    if (!names.empty())
      for (const auto& v : s.vertices())
        if (!names.count(v)) c.fail(where, "vertex \"" + v + "\" is not listed in \"vertices\"");
    simplices.push_back(std::move(s));
  }
  for (const auto& v : names) simplices.push_back(Simplex{v});
  if (simplices.empty()) c.fail("/simplices", "the complex has no simplices");
  return SimplicialComplex::closure(simplices);
}

Json to_json(const SimplicialComplex& K) {
  Json out;
  out["vertices"] = string_array(K.vertices());
  Json gens = Json::array();
  for (const auto& s : K.maximal_simplices()) gens.push_back(to_json(s));
  out["simplices"] = gens;
  return out;
}

LieAlgebra lie_algebra_from_json(const Json& j, const std::string& file) {
  Ctx c{file};
  const long n = c.integer(c.field(j, "", "dim"), "/dim");
  if (n < 0 || n > LieAlgebra::kMaxDim)
    c.fail("/dim", "dimension must lie in 0.." + std::to_string(LieAlgebra::kMaxDim));
  LieAlgebra g(static_cast<int>(n));
  std::set<std::pair<long, long>> seen;
  if (j.contains("brackets")) {
    const Json& bs = c.array(j["brackets"], "/brackets");
    for (std::size_t b = 0; b < bs.size(); ++b) {
      const std::string where = ptr("/brackets", b);
      const Json& entry = c.array(bs[b], where);
      if (entry.size() != 3) c.fail(where, "expected [i, j, [[k, \"p/q\"], ...]]");
      const long i = c.integer(entry[0], ptr(where, 0));
      const long k = c.integer(entry[1], ptr(where, 1));
      if (i < 0 || k < 0 || i >= n || k >= n) c.fail(where, "basis index out of range");
      if (i >= k) c.fail(where, "bracket pairs must satisfy i < j");
      if (!seen.insert({i, k}).second) c.fail(where, "bracket listed twice");
      std::vector<std::pair<int, Rational>> value;
      std::set<long> outs;
      const Json& vals = c.array(entry[2], ptr(where, 2));
      for (std::size_t t = 0; t < vals.size(); ++t) {
        const std::string at = ptr(ptr(where, 2), t);
        const Json& kv = c.array(vals[t], at);
        if (kv.size() != 2) c.fail(at, "expected [k, \"p/q\"]");
        const long out = c.integer(kv[0], ptr(at, 0));
        if (out < 0 || out >= n) c.fail(ptr(at, 0), "basis index out of range");
        if (!outs.insert(out).second) c.fail(ptr(at, 0), "component listed twice");
        value.emplace_back(static_cast<int>(out), c.rational(kv[1], ptr(at, 1)));
      }
      g.set_bracket(static_cast<int>(i), static_cast<int>(k), value);
    }
  }
  if (auto bad = jacobi_defect(g)) c.fail("/brackets", bad->what());
  return g;
}

Json to_json(const LieAlgebra& g) {
  Json out;
  out["dim"] = g.dim();
  Json bs = Json::array();
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = i + 1; j < g.dim(); ++j) {
      Json val = Json::array();
      auto b = g.bracket(i, j);
      for (int k = 0; k < g.dim(); ++k)
        if (b[k] != 0) val.push_back(Json::array({k, to_string(b[k])}));
      if (!val.empty()) bs.push_back(Json::array({i, j, val}));
    }
  }
  out["brackets"] = bs;
  return out;
}

PiecewiseForm piecewise_from_json(const Json& j, ComplexPtr parent, const std::string& file) {
  Ctx c{file};
  const int n = parent->fiber().dim();
  const Json* terms = &j;
  std::string base;
  std::optional<int> degree;
  if (j.is_object()) {
    degree = static_cast<int>(c.integer(c.field(j, "", "degree"), "/degree"));
    if (*degree < 0) c.fail("/degree", "degree must be nonnegative");
    terms = &c.field(j, "", "terms");
    base = "/terms";
  }
  c.array(*terms, base.empty() ? "/" : base);

  struct Parsed {
    Simplex s;
    FormKey key;
    Exponents e;
    Rational coeff;
  };
  std::vector<Parsed> parsed;
  for (std::size_t t = 0; t < terms->size(); ++t) {
    const std::string where = ptr(base, t);
    const Json& term = (*terms)[t];
    if (!term.is_object()) c.fail(where, "expected a term object");
    Simplex s = c.simplex(c.field(term, where, "simplex"), ptr(where, "simplex"));
    if (!parent->base().contains(s)) c.fail(ptr(where, "simplex"), s.to_string() + " is not in the complex");
    Rational coeff = c.rational(c.field(term, where, "coeff"), ptr(where, "coeff"));

    Exponents e(s.size(), 0);
    if (term.contains("monomial")) {
      const Json& mono = term["monomial"];
      if (!mono.is_object()) c.fail(ptr(where, "monomial"), "expected an object {vertex: exponent}");
      for (auto it = mono.begin(); it != mono.end(); ++it) {
        const std::string at = ptr(ptr(where, "monomial"), it.key());
        auto pos = s.position(it.key());
        if (!pos) c.fail(at, "vertex \"" + it.key() + "\" is not in " + s.to_string());
        if (*pos == 0) c.fail(at, "\"" + it.key() + "\" is the anchor of " + s.to_string() + " and cannot be a variable");
        long x = c.integer(it.value(), at);
        if (x < 0 || x > 65535) c.fail(at, "exponent out of range");
        e[*pos] = static_cast<std::uint16_t>(x);
      }
    }

    FormKey key;
    int sign = 1;
    if (term.contains("dt")) {
      const Json& dt = c.array(term["dt"], ptr(where, "dt"));
      std::vector<std::size_t> positions;
      for (std::size_t i = 0; i < dt.size(); ++i) {
        const std::string at = ptr(ptr(where, "dt"), i);
        auto name = c.string(dt[i], at);
        auto pos = s.position(name);
        if (!pos) c.fail(at, "vertex \"" + name + "\" is not in " + s.to_string());
        if (*pos == 0) c.fail(at, "\"" + name + "\" is the anchor of " + s.to_string() + " and has no dt");
        if (key.dt & (DtMask{1} << *pos)) c.fail(at, "repeated dt factor");
        key.dt |= DtMask{1} << *pos;
        positions.push_back(*pos);
      }
      sign *= sort_sign(positions);
    }
    if (term.contains("dual")) {
      const Json& du = c.array(term["dual"], ptr(where, "dual"));
      std::vector<long> idx;
      for (std::size_t i = 0; i < du.size(); ++i) {
        const std::string at = ptr(ptr(where, "dual"), i);
        long k = c.integer(du[i], at);
        if (k < 0 || k >= n) c.fail(at, "dual index out of range for a fiber of dimension " + std::to_string(n));
        if (key.dual & (DualMask{1} << k)) c.fail(at, "repeated dual factor");
        key.dual |= DualMask{1} << k;
        idx.push_back(k);
      }
      sign *= sort_sign(idx);
    }
    const int deg = std::popcount(key.dt) + std::popcount(key.dual);
    if (!degree) degree = deg;
    if (deg != *degree)
      c.fail(where, "term has degree " + std::to_string(deg) + ", expected " + std::to_string(*degree));
    parsed.push_back(Parsed{std::move(s), key, std::move(e), coeff * sign});
  }

  PiecewiseForm out(parent, degree.value_or(0));
  std::map<Simplex, AlgebroidForm> parts;
  for (const auto& p : parsed) {
    auto [it, fresh] = parts.try_emplace(p.s, p.s, n, out.degree());
    it->second.add_monomial(p.key, p.e, p.coeff);
  }
  for (auto& [s, w] : parts) out.set(s, std::move(w));
  return out;
}

Json terms_to_json(const AlgebroidForm& w) {
  Json out = Json::array();
  const Simplex& s = w.simplex();
  for (const auto& [key, poly] : w.terms()) {
    for (const auto& [e, coeff] : poly.terms()) {
      Json t;
      t["simplex"] = to_json(s);
      t["coeff"] = to_string(coeff);
      Json mono = Json::object();
      for (std::size_t i = 1; i < e.size(); ++i)
        if (e[i] != 0) mono[s[i]] = e[i];
      t["monomial"] = mono;
      Json dt = Json::array();
      for (std::size_t i = 1; i < s.size(); ++i)
        if (key.dt & (DtMask{1} << i)) dt.push_back(s[i]);
      t["dt"] = dt;
      Json dual = Json::array();
      for (int k = 0; k < 64; ++k)
        if (key.dual & (DualMask{1} << k)) dual.push_back(k);
      t["dual"] = dual;
      out.push_back(std::move(t));
    }
  }
  return out;
}

Json to_json(const PiecewiseForm& w) {
  Json terms = Json::array();
  for (const auto& [s, c] : w.components())
    for (auto& t : terms_to_json(c)) terms.push_back(std::move(t));
  Json out;
  out["degree"] = w.degree();
  out["terms"] = terms;
  return out;
}

Cover cover_from_json(const Json& j, const std::string& file) {
  Ctx c{file};
  const Json& ms = c.array(c.field(j, "", "cover"), "/cover");
  Cover out;
  for (std::size_t i = 0; i < ms.size(); ++i) out.members.push_back(StarOpen{c.simplex(ms[i], ptr("/cover", i))});
  if (out.members.empty()) c.fail("/cover", "the cover has no members");
  return out;
}

Json to_json(const Cover& cv) {
  Json ms = Json::array();
  for (const auto& m : cv.members) ms.push_back(to_json(m.center));
  Json out;
  out["cover"] = ms;
  return out;
}

SectionFamily load_sections(const fs::path& path, ComplexPtr parent, const Cover& cover) {
  std::vector<fs::path> files(cover.members.size());
  if (fs::is_directory(path)) {
    for (std::size_t i = 0; i < files.size(); ++i) {
      files[i] = path / (std::to_string(i) + ".json");
      if (!fs::exists(files[i])) throw ParseError(files[i].string(), "", "missing section for cover member " + std::to_string(i));
    }
  } else {
    Json map = read_json(path);
    Ctx c{path.string()};
    if (!map.is_object()) c.fail("", "expected an object mapping member index to a form file");
    std::vector<bool> have(files.size(), false);
    for (auto it = map.begin(); it != map.end(); ++it) {
      const std::string at = ptr("", it.key());
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(it.key(), &used);
        if (used != it.key().size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        c.fail(at, "keys must be cover member indices");
      }
      if (idx >= files.size()) c.fail(at, "no cover member " + it.key());
      fs::path f = c.string(it.value(), at);
      files[idx] = f.is_absolute() ? f : path.parent_path() / f;
      have[idx] = true;
    }
    for (std::size_t i = 0; i < have.size(); ++i)
      if (!have[i]) c.fail("", "missing section for cover member " + std::to_string(i));
  }
  SectionFamily fam;
  for (std::size_t i = 0; i < files.size(); ++i) {
    auto carrier = make_complex(closed_star_subcomplex(parent->base(), cover.members[i]), parent->fiber());
    fam.sections.push_back(load_piecewise(files[i], carrier, false));
  }
  return fam;
}

Json to_json(const Simplex& s) { return string_array(s.vertices()); }

Json to_json(const BettiTable& t) {
  Json out;
  out["betti"] = t.betti;
  out["weights_used"] = t.weights_used;
  out["stabilized"] = t.stabilized;
  Json blocks = Json::array();
  for (const auto& b : t.blocks) {
    Json e;
    e["p"] = b.p;
    e["w"] = b.w;
    e["dim"] = b.dim;
    e["rank"] = b.rank;
    blocks.push_back(e);
  }
  out["blocks"] = blocks;
  out["pivot_orders_agree"] = t.pivot_orders_agree;
  if (!t.warning.empty()) out["warning"] = t.warning;
  return out;
}

Json to_json(const Incompatibility& w) {
  Json out;
  out["simplex"] = to_json(w.simplex);
  out["face"] = to_json(w.face);
  out["difference"] = terms_to_json(w.difference);
  return out;
}

Json to_json(const PartitionCertificate& c) {
  Json out;
  out["sum_is_one"] = c.sum_is_one;
  out["subordinate"] = c.subordinate;
  out["denominator_positive"] = c.denominator_positive;
  Json wit = Json::array();
  for (const auto& [s, j] : c.positivity_witness) {
    Json e;
    e["simplex"] = to_json(s);
    e["member"] = j;
    wit.push_back(e);
  }
  out["positivity_witness"] = wit;
  if (!c.failure.empty()) out["failure"] = c.failure;
  return out;
}

SimplicialComplex load_complex(const fs::path& path) { return complex_from_json(read_json(path), path.string()); }

LieAlgebra load_lie_algebra(const fs::path& path) { return lie_algebra_from_json(read_json(path), path.string()); }

PiecewiseForm load_piecewise(const fs::path& path, ComplexPtr parent, bool validate) {
  PiecewiseForm w = piecewise_from_json(read_json(path), std::move(parent), path.string());
  if (validate) validate_piecewise(w);
  return w;
}

Cover load_cover(const fs::path& path) { return cover_from_json(read_json(path), path.string()); }

}  // namespace psforms::io
