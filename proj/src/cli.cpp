#include "psforms/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <optional>
#include <ostream>

#include "psforms/io.hpp"
#include "psforms/random.hpp"

namespace psforms::cli {

namespace {

namespace fs = std::filesystem;
using io::Json;

struct Options {
  std::string complex_file;
  std::string lie_file;
  std::string form_file;
  std::string sub_file;
  std::string cover_file;
  std::string sections_file;
  std::optional<int> max_degree;
  std::optional<int> max_weight;
  std::uint64_t seed = 1;
  int trials = 10;
};

ComplexPtr load_parent(const Options& o) {
  SimplicialComplex K = io::load_complex(o.complex_file);
  LieAlgebra g = o.lie_file.empty() ? LieAlgebra::abelian(0) : io::load_lie_algebra(o.lie_file);
  return make_complex(std::move(K), std::move(g));
}

Cover load_cover_in(const Options& o, const SimplicialComplex& K) {
  Cover c = io::load_cover(o.cover_file);
  for (std::size_t i = 0; i < c.members.size(); ++i)
    if (!K.contains(c.members[i].center))
      throw io::ParseError(o.cover_file, "/cover/" + std::to_string(i),
                           c.members[i].center.to_string() + " is not in the complex");
  return c;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

Json missing_witness(const Simplex& s) {
  Json w;
  w["missing"] = io::to_json(s);
  return w;
}

int cmd_cohomology(const Options& o, std::ostream& out, std::ostream& err) {
  auto parent = load_parent(o);
  const int p_max = o.max_degree.value_or(parent->base().dim() + parent->fiber().dim());
  const int W = o.max_weight.value_or(p_max + 2);
  if (p_max < 0 || W < 0) throw InputError("--max-degree and --max-weight must be nonnegative");
  BettiTable t = betti(parent, p_max, W);
  Json report = io::to_json(t);
  auto oracle = kunneth_oracle(parent->base(), parent->fiber());
  oracle.resize(p_max + 1, 0);
  report["kunneth_oracle"] = oracle;
  report["matches_oracle"] = oracle == t.betti;
  report["model"] = "trivialized fiber on every simplex; the Kunneth oracle applies to this model only";
  if (!t.stabilized) err << "warning: " << t.warning << "\n";
  emit(out, report);
  return ok;
}

int cmd_check(const Options& o, std::ostream& out) {
  auto parent = load_parent(o);
  PiecewiseForm w = io::load_piecewise(o.form_file, parent, false);
  Json report;
  report["degree"] = w.degree();
  if (auto bad = find_incompatibility(w)) {
    report["valid"] = false;
    report["witness"] = io::to_json(*bad);
    emit(out, report);
    return check_failed;
  }
  report["valid"] = true;
  emit(out, report);
  return ok;
}

int cmd_extend(const Options& o, std::ostream& out) {
  auto parent = load_parent(o);
  SimplicialComplex L = io::load_complex(o.sub_file);
  if (!L.is_subcomplex_of(parent->base()))
    throw io::ParseError(o.sub_file, "", "not a subcomplex of " + o.complex_file);
  auto sub = make_complex(L, parent->fiber());
  PiecewiseForm w = io::load_piecewise(o.form_file, sub, false);
  Json report;
  if (auto bad = find_incompatibility(w)) {
    report["extended"] = false;
    report["witness"] = io::to_json(*bad);
    emit(out, report);
    return check_failed;
  }
  PiecewiseForm ext = extend_from_subcomplex(parent, w);
  report["extended"] = true;
  report["restriction_matches"] = restrict_to_subcomplex(ext, L) == w;
  report["valid"] = !find_incompatibility(ext).has_value();
  report["form"] = io::to_json(ext);
  emit(out, report);
  return ok;
}

int cmd_partition(const Options& o, std::ostream& out) {
  auto parent = load_parent(o);
  Cover cover = load_cover_in(o, parent->base());
  Json report;
  report["cover"] = io::to_json(cover)["cover"];
  auto check = is_cover(parent->base(), cover);
  if (!check.ok()) {
    report["is_cover"] = false;
    report["witness"] = missing_witness(*check.missing);
    emit(out, report);
    return check_failed;
  }
  report["is_cover"] = true;
  PartitionOfUnity p = partition_of_unity(parent, cover);
  PartitionCertificate cert = certify(p);
  const Json cert_json = io::to_json(cert);
  for (auto it = cert_json.begin(); it != cert_json.end(); ++it) report[it.key()] = it.value();
  Json fns = Json::array();
  for (std::size_t j = 0; j < p.functions.size(); ++j) {
    Json f;
    f["center"] = io::to_json(cover.members[j].center);
    f["numerator"] = io::to_json(p.functions[j].numerator)["terms"];
    fns.push_back(f);
  }
  report["functions"] = fns;
  emit(out, report);
  return cert.ok() ? ok : check_failed;
}

int cmd_glue(const Options& o, std::ostream& out) {
  auto parent = load_parent(o);
  Cover cover = load_cover_in(o, parent->base());
  Json report;
  auto check = is_cover(parent->base(), cover);
  if (!check.ok()) {
    report["glued"] = false;
    report["witness"] = missing_witness(*check.missing);
    emit(out, report);
    return check_failed;
  }
  SectionFamily fam = io::load_sections(o.sections_file, parent, cover);
  try {
    PiecewiseForm w = check_gluing(parent, cover, fam);
    report["glued"] = true;
    report["form"] = io::to_json(w);
    emit(out, report);
    return ok;
  } catch (const SectionsIncompatible& e) {
    Json wit;
    wit["members"] = Json::array({io::to_json(cover.members[e.first].center), io::to_json(cover.members[e.second].center)});
    wit["simplex"] = io::to_json(e.simplex);
    wit["difference"] = io::terms_to_json(e.difference);
    report["glued"] = false;
    report["witness"] = wit;
  } catch (const Incompatible& e) {
    report["glued"] = false;
    report["witness"] = io::to_json(e.witness);
  }
  emit(out, report);
  return check_failed;
}

int cmd_laws(const Options& o, std::ostream& out) {
  auto parent = load_parent(o);
  if (o.trials < 0) throw InputError("--trials must be nonnegative");
  random::Rng rng(o.seed);
  const auto& K = parent->base();
  Json report;
  report["seed"] = o.seed;
  report["trials"] = o.trials;
  report["laws"] = presheaf_law_names();
  for (int t = 0; t < o.trials; ++t) {
    StarChain chain = random::star_chain(rng, K);
    auto carrier = make_complex(closed_star_subcomplex(K, chain.outer), parent->fiber());
    const int p = std::uniform_int_distribution<int>(0, 1)(rng);
    PiecewiseForm omega = random::piecewise(rng, carrier, p);
    PiecewiseForm eta = random::piecewise(rng, carrier, 1 - p);
    try {
      check_presheaf_laws(*parent, chain, omega, eta);
    } catch (const LawViolation& e) {
      report["passed"] = false;
      Json wit;
      wit["trial"] = t;
      wit["law"] = e.law;
      wit["chain"] = Json::array({io::to_json(chain.outer.center), io::to_json(chain.middle.center),
                                  io::to_json(chain.inner.center)});
      wit["detail"] = e.witness;
      report["witness"] = wit;
      emit(out, report);
      return check_failed;
    }
  }
  report["passed"] = true;
  emit(out, report);
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact piecewise Lie algebroid forms: cohomology and sheaf checks", "psforms"};
  app.require_subcommand(1, 1);
  Options o;

  auto common = [&](CLI::App* sub, bool need_lie) {
    sub->add_option("-k,--complex", o.complex_file, "simplicial complex file")->required()->check(CLI::ExistingFile);
    auto* g = sub->add_option("-g,--lie", o.lie_file, "Lie algebra file (default: zero fiber)")->check(CLI::ExistingFile);
    if (need_lie) g->required();
  };

  auto* coh = app.add_subcommand("cohomology", "betti numbers by weight blocks");
  common(coh, false);
  coh->add_option("--max-degree", o.max_degree, "highest degree (default dim K + dim g)");
  coh->add_option("--max-weight", o.max_weight, "weight bound W (default max degree + 2)");

  auto* chk = app.add_subcommand("check", "face compatibility of a piecewise form");
  chk->add_option("form", o.form_file, "piecewise form file")->required()->check(CLI::ExistingFile);
  common(chk, false);

  auto* ext = app.add_subcommand("extend", "extend a form from a subcomplex");
  ext->add_option("form", o.form_file, "piecewise form on the subcomplex")->required()->check(CLI::ExistingFile);
  common(ext, false);
  ext->add_option("--sub", o.sub_file, "subcomplex file")->required()->check(CLI::ExistingFile);

  auto* part = app.add_subcommand("partition", "partition of unity for a star cover");
  common(part, false);
  part->add_option("--cover", o.cover_file, "cover file")->required()->check(CLI::ExistingFile);

  auto* glue = app.add_subcommand("glue", "glue sections over a star cover");
  common(glue, false);
  glue->add_option("--cover", o.cover_file, "cover file")->required()->check(CLI::ExistingFile);
  glue->add_option("--sections", o.sections_file, "directory of <index>.json or index map file")
      ->required()
      ->check(CLI::ExistingPath);

  auto* laws = app.add_subcommand("laws", "randomized presheaf law checks on star chains");
  common(laws, false);
  laws->add_option("--seed", o.seed, "random seed");
  laws->add_option("--trials", o.trials, "number of random chains");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return input_error;
  }

  try {
    if (*coh) return cmd_cohomology(o, out, err);
    if (*chk) return cmd_check(o, out);
    if (*ext) return cmd_extend(o, out);
    if (*part) return cmd_partition(o, out);
    if (*glue) return cmd_glue(o, out);
    if (*laws) return cmd_laws(o, out);
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const JacobiViolation& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const NotInComplex& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}

}  // namespace psforms::cli
