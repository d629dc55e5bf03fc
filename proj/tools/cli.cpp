#include "qct/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "qct/catalog.hpp"
#include "qct/quantum.hpp"

namespace qct {

namespace {

struct Options {
  bool json = false;
  bool csv = false;
  std::uint64_t cap = SearchConfig{}.cap;
  unsigned threads = 0;
  std::uint64_t seed = SearchConfig{}.seed;
  unsigned samples = SearchConfig{}.samples;
  std::string catalog;

  SearchConfig config() const {
    SearchConfig c;
    c.cap = cap;
    c.threads = threads;
    c.seed = seed;
    c.samples = samples;
    return c;
  }
};

nlohmann::json read_json(const std::string& path) {
  try {
    if (path == "-") return nlohmann::json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string poly_text(const std::vector<unsigned>& c) {
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    std::string coef = c[i] == 1 && i > 0 ? "" : std::to_string(c[i]);
    std::string mono = i == 0 ? "" : i == 1 ? "x" : "x^" + std::to_string(i);
    out += (out.empty() ? "" : "+") + coef + mono;
  }
  return out.empty() ? "0" : out;
}

std::string basis_text(const Field& f, const std::vector<Elem>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + f.format(v[i]);
  return out + "}";
}

nlohmann::json basis_json(const Field& f, const std::vector<Elem>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (auto x : v) out.push_back(f.format(x));
  return out;
}

std::string describe(const DistanceResult& d) {
  std::string s = std::to_string(d.value) + " (" + to_string(d.exactness) + ", " + to_string(d.method) + ")";
  if (d.upper && !d.is_exact()) s += ", lightest sampled word " + std::to_string(*d.upper);
  if (d.declared) s += ", declared " + std::to_string(*d.declared);
  return s;
}

void print_code(std::ostream& out, const LinearCode& c) {
  out << format_params(c) << "  " << c.provenance() << "\n";
  if (auto d = c.distance_info()) out << "  d: " << describe(*d) << "\n";
  if (c.defining_set()) out << "  defining set: " << c.defining_set()->exponents.size() << " exponents\n";
}

void print_result(std::ostream& out, const AqcResult& r) {
  const auto& p = r.params;
  out << p.format() << "  " << p.construction << "\n";
  out << "  exact: dz " << (p.dz_exact ? "yes" : "no") << ", dx " << (p.dx_exact ? "yes" : "no")
      << "; purity " << to_string(p.purity) << "\n";
  for (const auto& c : r.checks) {
    out << "  [" << (c.passed ? " ok " : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  for (const auto& n : p.notes) out << "  note: " << n << "\n";
}

void print_report(std::ostream& out, const VerificationReport& r) {
  std::size_t width = 0;
  for (const auto& row : r.rows) width = std::max(width, row.claim.size());
  out << r.target << "\n";
  for (const auto& row : r.rows) {
    out << "  " << std::left << std::setw(static_cast<int>(width)) << row.claim << "  " << std::setw(22)
        << to_string(row.status) << row.summary << "\n";
  }
  out << "  confirmed " << r.count(RowStatus::confirmed) << ", formula-consistent "
      << r.count(RowStatus::formula_consistent) << ", inconsistent " << r.count(RowStatus::inconsistent)
      << ", unverifiable-at-scale " << r.count(RowStatus::unverifiable_at_scale) << "\n";
}

void print_entry(std::ostream& out, const CatalogEntry& e) {
  out << e.id.substr(0, 12) << "  " << std::left << std::setw(9) << e.kind << " ";
  const auto& p = e.payload;
  if (e.kind == "quantum" && p.contains("dz")) {
    out << "[[" << p.value("n", 0) << "," << p.value("k", 0) << ",{" << p.value("dz", 0) << "," << p.value("dx", 0)
        << "}]]_" << p.value("q", 0);
    if (p.contains("claim")) out << "  " << p.value("audit", "") << " " << p.value("status", "");
  } else if (e.kind == "classical" && p.contains("n")) {
    out << "[" << p.value("n", 0) << "," << p.value("k", 0) << "]  " << p.value("provenance", "");
  } else if (e.kind == "report") {
    out << p.value("target", "") << " (" << p.value("rows", nlohmann::json::array()).size() << " rows)";
  }
  out << "  " << e.created << "\n";
}

std::unique_ptr<Catalog> open_catalog(const Options& o) {
  if (o.catalog.empty()) return nullptr;
  return std::make_unique<Catalog>(o.catalog);
}

// "[[n,k,{a,b}]]_q" -> payload fields.
std::optional<nlohmann::json> claim_fields(const std::string& claim) {
  unsigned long n, k, a, b, q;
  if (std::sscanf(claim.c_str(), "[[%lu,%lu,{%lu,%lu}]]_%lu", &n, &k, &a, &b, &q) != 5) return std::nullopt;
  return nlohmann::json{{"n", n}, {"k", k}, {"dz", std::max(a, b)}, {"dx", std::min(a, b)}, {"q", q}};
}

struct Cli {
  Options opt;
  std::ostream& out;
  std::function<int()> action;

  int emit_code(const LinearCode& c) {
    if (auto cat = open_catalog(opt)) cat->put("classical", to_json(c));
    if (opt.json) {
      out << to_json(c).dump(2) << "\n";
    } else {
      print_code(out, c);
    }
    return 0;
  }

  int emit_result(const AqcResult& r) {
    if (auto cat = open_catalog(opt)) cat->put("quantum", to_json(r.params));
    if (opt.json) {
      out << to_json(r).dump(2) << "\n";
    } else {
      print_result(out, r);
    }
    return r.ok() ? 0 : 1;
  }

  int emit_results(const std::vector<std::pair<std::string, AqcResult>>& rs, const std::string& rejected = "") {
    bool ok = true;
    auto cat = open_catalog(opt);
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, r] : rs) {
      ok = ok && r.ok();
      if (cat) cat->put("quantum", to_json(r.params));
      j[name] = to_json(r);
      if (!opt.json) {
        out << name << ": ";
        print_result(out, r);
      }
    }
    if (!rejected.empty()) {
      j["rejected"] = rejected;
      if (!opt.json) out << "rejected: " << rejected << "\n";
    }
    if (opt.json) out << j.dump(2) << "\n";
    return ok ? 0 : 1;
  }
};

void on(CLI::App* sub, Cli& cli, std::function<int()> f) {
  sub->callback([&cli, f = std::move(f)] { cli.action = f; });
}

void add_field(CLI::App& app, Cli& cli) {
  auto* sub = app.add_subcommand("field", "Field description, dual and self-dual bases");
  static unsigned p, e, sub_e;
  static std::vector<std::string> dual, hdual;
  static bool self_dual;
  sub_e = 1;
  dual.clear();
  hdual.clear();
  self_dual = false;
  sub->add_option("--p", p, "characteristic")->required();
  sub->add_option("--e", e, "degree over GF(p)")->required();
  sub->add_option("--sub-e", sub_e, "degree of the subfield for bases")->capture_default_str();
  sub->add_option("--dual-basis", dual, "basis elements (w^i, w, 1, packed ints)")->delimiter(',');
  sub->add_option("--hermitian-dual-basis", hdual, "basis for the Hermitian dual basis")->delimiter(',');
  sub->add_flag("--self-dual", self_dual, "search for a self-dual basis");
  on(sub, cli, [&cli] {
    auto f = build_field(p, e);
    nlohmann::json j = field_to_json(*f);
    std::ostringstream text;
    text << "GF(" << f->order() << ") = GF(" << p << ")[x]/(" << poly_text(f->modulus()) << "), w = "
         << poly_text(f->coefficients(f->generator())) << "\n";
    auto parse_basis = [&](const std::vector<std::string>& items) {
      ExtensionBasis b{embedding(p, sub_e, e), {}};
      for (const auto& s : items) b.elements.push_back(f->parse(s));
      if (b.size() != e / sub_e || !is_basis(b)) throw PreconditionError(basis_text(*f, b.elements) + " is not a basis");
      return b;
    };
    if (!dual.empty()) {
      auto b = parse_basis(dual);
      auto d = find_dual_basis(b);
      j["basis"] = basis_json(*f, b.elements);
      j["dual_basis"] = basis_json(*f, d.elements);
      text << "dual of " << basis_text(*f, b.elements) << ": " << basis_text(*f, d.elements) << "\n";
    }
    if (!hdual.empty()) {
      auto b = parse_basis(hdual);
      auto d = find_hermitian_dual_basis(b);
      j["hermitian_basis"] = basis_json(*f, b.elements);
      j["hermitian_dual_basis"] = basis_json(*f, d.elements);
      text << "Hermitian dual of " << basis_text(*f, b.elements) << ": " << basis_text(*f, d.elements) << "\n";
    }
    if (self_dual) {
      if (e % sub_e) throw PreconditionError("sub-e must divide e");
      auto b = find_self_dual_basis(embedding(p, sub_e, e), SelfDualSearch{.seed = cli.opt.seed});
      j["self_dual_basis"] = b ? basis_json(*f, b->elements) : nlohmann::json(nullptr);
      text << "self-dual basis: " << (b ? basis_text(*f, b->elements) : std::string("none")) << "\n";
    }
    cli.out << (cli.opt.json ? j.dump(2) + "\n" : text.str());
    return 0;
  });
}

void add_code(CLI::App& app, Cli& cli) {
  auto* code = app.add_subcommand("code", "Classical codes");
  code->require_subcommand(1);
  auto* build = code->add_subcommand("build", "Build a code from a family");
  build->require_subcommand(1);

  static std::uint64_t q;
  static std::size_t k, n, delta, s, pos;
  static unsigned m, i;
  static std::string in, which, basis, c1_path, c2_path;
  static bool parity, distance;
  which = "s";
  basis = "auto";
  parity = false;
  distance = false;
  in = "-";

  auto with_distance = [&cli](LinearCode c) {
    if (distance) min_distance(c, cli.opt.config());
    return cli.emit_code(c);
  };

  auto* rs = build->add_subcommand("rs", "Reed-Solomon RS(q,k), n = q-1");
  rs->add_option("--q", q)->required();
  rs->add_option("--k", k)->required();
  rs->add_flag("--distance", distance);
  on(rs, cli, [with_distance] { return with_distance(rs_code(q, k)); });

  auto* bch = build->add_subcommand("bch", "Narrow-sense BCH code");
  bch->add_option("--q", q)->required();
  bch->add_option("--n", n)->required();
  bch->add_option("--delta", delta)->required();
  bch->add_flag("--distance", distance);
  on(bch, cli, [with_distance] { return with_distance(bch_narrow_sense(q, n, delta)); });

  auto* simplex = build->add_subcommand("simplex", "Simplex code S_m or the code C_0 containing it");
  simplex->add_option("--m", m)->required();
  simplex->add_option("--which", which, "s or c0")->check(CLI::IsMember({"s", "c0"}))->capture_default_str();
  simplex->add_flag("--distance", distance);
  on(simplex, cli, [with_distance] {
    auto [sm, c0] = simplex_and_c0(m);
    return with_distance(which == "s" ? sm : c0);
  });

  auto* prep = build->add_subcommand("preparata", "Binary cyclic code B_i with zeros 1 and 2^i+1");
  prep->add_option("--m", m)->required();
  prep->add_option("--i", i)->required();
  prep->add_flag("--distance", distance);
  on(prep, cli, [with_distance] { return with_distance(preparata_like_bi(m, i)); });

  auto* nega = build->add_subcommand("negacyclic", "Negacyclic C_s over GF(q^2)");
  nega->add_option("--q", q)->required();
  nega->add_option("--n", n)->required();
  nega->add_option("--s", s)->required();
  on(nega, cli, [&cli] {
    auto r = negacyclic_cs(q, n, s, cli.opt.config());
    if (!cli.opt.json) {
      cli.emit_code(r.code);
      cli.out << "  MDS: " << (r.mds ? "yes" : "no") << "\n  C^{perp h} in C: defining sets "
              << (r.hdual_contained_defset ? "yes" : "no") << ", matrices " << (r.hdual_contained_matrix ? "yes" : "no")
              << "\n";
      return 0;
    }
    auto j = to_json(r.code);
    j["mds"] = r.mds;
    j["hdual_contained"] = {{"defining_set", r.hdual_contained_defset}, {"matrix", r.hdual_contained_matrix}};
    if (auto cat = open_catalog(cli.opt)) cat->put("classical", to_json(r.code));
    cli.out << j.dump(2) << "\n";
    return 0;
  });

  auto* imp = build->add_subcommand("import", "Import {q, generator, ...} or a full code record");
  imp->add_option("--in", in, "JSON file, - for stdin")->capture_default_str();
  imp->add_flag("--distance", distance);
  on(imp, cli, [with_distance] { return with_distance(import_code(read_json(in))); });

  auto load = [] { return import_code(read_json(in)); };

  auto* dist = code->add_subcommand("distance", "Minimum distance");
  dist->add_option("--in", in)->capture_default_str();
  on(dist, cli, [&cli, load] {
    auto c = load();
    auto d = min_distance(c, cli.opt.config());
    if (cli.opt.json) {
      cli.out << to_json(d, true).dump(2) << "\n";
    } else {
      cli.out << format_params(c) << "\n  d: " << describe(d) << "\n";
    }
    return 0;
  });

  auto* du = code->add_subcommand("dual", "Euclidean dual");
  du->add_option("--in", in)->capture_default_str();
  on(du, cli, [&cli, load] { return cli.emit_code(dual(load())); });

  auto* hd = code->add_subcommand("hdual", "Hermitian dual (field of square order)");
  hd->add_option("--in", in)->capture_default_str();
  on(hd, cli, [&cli, load] { return cli.emit_code(hermitian_dual(load())); });

  auto* pu = code->add_subcommand("puncture", "Delete one coordinate");
  pu->add_option("--in", in)->capture_default_str();
  pu->add_option("--pos", pos, "0-based position; default last");
  on(pu, cli, [&cli, load, pu] {
    auto c = load();
    return cli.emit_code(puncture(c, pu->count("--pos") ? pos : c.length() - 1));
  });

  auto* ex = code->add_subcommand("extend", "Append an overall parity coordinate");
  ex->add_option("--in", in)->capture_default_str();
  on(ex, cli, [&cli, load] { return cli.emit_code(extend_parity(load())); });

  auto* xp = code->add_subcommand("expand", "Subfield expansion Phi_B over GF(q)");
  xp->add_option("--in", in)->capture_default_str();
  xp->add_option("--q", q, "subfield order")->required();
  xp->add_option("--basis", basis, "auto, polynomial or self-dual")
      ->check(CLI::IsMember({"auto", "polynomial", "self-dual"}))
      ->capture_default_str();
  xp->add_flag("--parity", parity, "append a parity symbol per block");
  on(xp, cli, [&cli, load] {
    auto c = load();
    auto sub = prime_power(q);
    const auto& f = c.field();
    if (!sub || sub->first != f.characteristic() || f.degree() % sub->second) {
      throw PreconditionError("GF(" + std::to_string(q) + ") is not a subfield of GF(" + std::to_string(f.order()) + ")");
    }
    auto tower = embedding(sub->first, sub->second, f.degree());
    std::optional<ExtensionBasis> b;
    if (basis != "polynomial") b = find_self_dual_basis(tower, SelfDualSearch{.seed = cli.opt.seed});
    if (!b && basis == "self-dual") throw PreconditionError("no self-dual basis exists for this extension");
    if (!b) b = polynomial_basis(tower);
    return cli.emit_code(parity ? expand_with_parity(c, *b, cli.opt.config()) : expand_basis(c, *b));
  });
}

void add_quantum(CLI::App& app, Cli& cli) {
  auto* qa = app.add_subcommand("quantum", "Asymmetric quantum code pipelines");
  qa->require_subcommand(1);
  static std::uint64_t q;
  static std::size_t n, k, k1, k2, delta, s, matrix_limit;
  static unsigned m, i, d1, d2;
  static std::string c1_path, c2_path, in;
  static bool punctured;
  matrix_limit = 255;
  in = "-";
  punctured = false;

  auto* css = qa->add_subcommand("css", "CSS from C1 in C2 (code records)");
  css->add_option("--c1", c1_path)->required();
  css->add_option("--c2", c2_path)->required();
  on(css, cli, [&cli] {
    return cli.emit_result(css_standard(import_code(read_json(c1_path)), import_code(read_json(c2_path)), cli.opt.config()));
  });

  auto* cssh = qa->add_subcommand("css-hermitian", "Hermitian CSS with C1^{perp h} in C2");
  cssh->add_option("--c1", c1_path)->required();
  cssh->add_option("--c2", c2_path)->required();
  on(cssh, cli, [&cli] {
    return cli.emit_result(css_hermitian(import_code(read_json(c1_path)), import_code(read_json(c2_path)), cli.opt.config()));
  });

  auto* allone = qa->add_subcommand("allone", "[[n,k-1,{d,2}]] from a code containing all-ones");
  allone->add_option("--in", in)->capture_default_str();
  on(allone, cli, [&cli] { return cli.emit_result(allone_aqc(import_code(read_json(in)), cli.opt.config())); });

  auto* bch = qa->add_subcommand("bch", "All-ones construction on a narrow-sense BCH code");
  bch->add_option("--q", q)->required();
  bch->add_option("--n", n)->required();
  bch->add_option("--delta", delta)->required();
  bch->add_flag("--punctured", punctured, "only the punctured code");
  on(bch, cli, [&cli] {
    auto [whole, punct] = th_best_bch(q, n, delta, cli.opt.config());
    if (punctured) return cli.emit_result(punct);
    return cli.emit_results({{"code", whole}, {"punctured", punct}});
  });

  auto* sd = qa->add_subcommand("self-dual", "[[n,n/2-1,{d,2}]] from a binary self-dual code");
  sd->add_option("--in", in)->capture_default_str();
  on(sd, cli, [&cli] { return cli.emit_result(th_best_self_dual(import_code(read_json(in)), cli.opt.config())); });

  auto* sx = qa->add_subcommand("simplex", "[[2^m-1,m,{2^(m-1)-1,2}]] from S_m in C_0");
  sx->add_option("--m", m)->required();
  on(sx, cli, [&cli] { return cli.emit_result(th_best_simplex(m, cli.opt.config())); });

  auto* b1 = qa->add_subcommand("bch1", "CSS on B(d2)^perp in B(d1), n = 2^m-1");
  b1->add_option("--m", m)->required();
  b1->add_option("--d1", d1)->required();
  b1->add_option("--d2", d2)->required();
  b1->add_option("--matrix-limit", matrix_limit, "largest n built as matrices")->capture_default_str();
  on(b1, cli, [&cli] { return cli.emit_result(lemma_bch1(m, d1, d2, cli.opt.config(), matrix_limit)); });

  auto* ch = qa->add_subcommand("charpin", "Both CSS families on B_i and BCH codes");
  ch->add_option("--m", m)->required();
  ch->add_option("--i", i)->required();
  ch->add_option("--matrix-limit", matrix_limit)->capture_default_str();
  on(ch, cli, [&cli] {
    auto r = charpin_family(m, i, cli.opt.config(), matrix_limit);
    std::vector<std::pair<std::string, AqcResult>> rs = {{"first", r.first}};
    if (r.second) rs.emplace_back("second", *r.second);
    return cli.emit_results(rs, r.second_rejected);
  });

  auto* rsum = qa->add_subcommand("rs-sum", "CSS on RS + extended RS direct sums");
  rsum->add_option("--q", q)->required();
  rsum->add_option("--k1", k1)->required();
  rsum->add_option("--k2", k2)->required();
  on(rsum, cli, [&cli] { return cli.emit_result(rs_direct_sum_aqc(q, k1, k2, cli.opt.config())); });

  auto* cc = qa->add_subcommand("concat", "CSS on parity-augmented expansions of RS(q^m,k)");
  cc->add_option("--q", q)->required();
  cc->add_option("--m", m)->required();
  cc->add_option("--k1", k1)->required();
  cc->add_option("--k2", k2)->required();
  on(cc, cli, [&cli] { return cli.emit_result(concat_expand_aqc(q, m, k1, k2, cli.opt.config())); });

  auto* qc = qa->add_subcommand("quantum-concat", "Parameters of the concatenation with the inner AQMDS code");
  qc->add_option("--q", q)->required();
  qc->add_option("--m", m)->required();
  qc->add_option("--k1", k1)->required();
  qc->add_option("--k2", k2)->required();
  qc->add_option("--k", k)->required();
  on(qc, cli, [&cli] {
    auto p = quantum_concat_params(q, m, k1, k2, k);
    if (auto cat = open_catalog(cli.opt)) cat->put("quantum", to_json(p));
    if (cli.opt.json) {
      cli.out << to_json(p).dump(2) << "\n";
    } else {
      cli.out << p.format() << "  " << p.construction << "\n";
      for (const auto& note : p.notes) cli.out << "  note: " << note << "\n";
    }
    return 0;
  });

  auto* ne = qa->add_subcommand("negacyclic-expand", "Expansion of C_s^{perp h} in C_s to GF(q)");
  ne->add_option("--q", q)->required();
  ne->add_option("--n", n)->required();
  ne->add_option("--s", s)->required();
  ne->add_option("--m", m)->required();
  on(ne, cli, [&cli] { return cli.emit_result(negacyclic_expand_aqc(q, n, s, m, cli.opt.config())); });
}

void add_audit(CLI::App& app, Cli& cli) {
  auto* au = app.add_subcommand("audit", "Re-derive and classify table rows");
  static std::string which;
  auto targets = audit_targets();
  targets.push_back("all");
  au->add_option("table", which, "table1..table4, examples or all")->required()->check(CLI::IsMember(targets));
  on(au, cli, [&cli] {
    std::vector<std::string> which_list = which == "all" ? audit_targets() : std::vector<std::string>{which};
    nlohmann::json all = nlohmann::json::array();
    auto cat = open_catalog(cli.opt);
    for (const auto& t : which_list) {
      auto r = audit_table(t, cli.opt.config());
      if (cat) {
        auto rep = cat->put("report", to_json(r));
        for (const auto& row : r.rows) {
          auto fields = claim_fields(row.claim);
          if (!fields) continue;
          (*fields)["audit"] = r.target;
          (*fields)["claim"] = row.claim;
          (*fields)["status"] = to_string(row.status);
          (*fields)["summary"] = row.summary;
          cat->put("quantum", *fields, {rep.id});
        }
      }
      if (cli.opt.csv) {
        cli.out << to_csv(r);
      } else if (cli.opt.json) {
        all.push_back(to_json(r));
      } else {
        print_report(cli.out, r);
      }
    }
    if (cli.opt.json && !cli.opt.csv) cli.out << (all.size() == 1 ? all[0] : all).dump(2) << "\n";
    return 0;
  });
}

void add_catalog(CLI::App& app, Cli& cli) {
  auto* ca = app.add_subcommand("catalog", "JSON-lines catalog (path from --catalog or QCT_CATALOG)");
  ca->require_subcommand(1);
  static std::string in, kind, id;
  static std::vector<std::string> inputs;
  static CatalogQuery query;
  in = "-";
  kind.clear();
  inputs.clear();
  query = {};

  auto need = [&cli]() {
    if (cli.opt.catalog.empty()) throw PreconditionError("no catalog path: pass --catalog or set QCT_CATALOG");
    return Catalog(cli.opt.catalog);
  };
  auto print = [&cli](const std::vector<CatalogEntry>& es) {
    if (cli.opt.json) {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& e : es) j.push_back(to_json(e));
      cli.out << j.dump(2) << "\n";
    } else {
      for (const auto& e : es) print_entry(cli.out, e);
    }
    return 0;
  };

  auto* put = ca->add_subcommand("put", "Store a JSON record");
  put->add_option("--in", in)->capture_default_str();
  put->add_option("--kind", kind, "classical, quantum or report; inferred when omitted");
  put->add_option("--input", inputs, "ids of entries this record derives from");
  on(put, cli, [need, print] {
    auto j = read_json(in);
    std::string k = kind;
    if (k.empty()) k = j.contains("rows") ? "report" : j.contains("dz") ? "quantum" : "classical";
    if (k == "classical") j = to_json(import_code(j));
    if (k == "quantum") j = to_json(aqc_from_json(j));
    return print({need().put(k, j, inputs)});
  });

  auto* get = ca->add_subcommand("get", "Fetch an entry by id or unique prefix");
  get->add_option("id", id)->required();
  on(get, cli, [&cli, need] {
    auto e = need().get(id);
    cli.out << (cli.opt.json ? to_json(e).dump(2) : to_json(e).dump()) << "\n";
    return 0;
  });

  auto* list = ca->add_subcommand("list", "List entries");
  on(list, cli, [need, print] { return print(need().list()); });

  auto* search = ca->add_subcommand("search", "Entries matching every given predicate");
  search->add_option("--kind", query.kind);
  search->add_option("--n", query.n);
  search->add_option("--k", query.k);
  search->add_option("--q", query.q);
  search->add_option("--dz-min", query.dz_min);
  search->add_option("--dx-min", query.dx_min);
  on(search, cli, [need, print] { return print(need().search(query)); });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Asymmetric quantum codes from classical codes: fields, codes, CSS pipelines, table audits"};
  app.name("qct");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");
  Cli cli{Options{}, out, {}};
  auto& o = cli.opt;
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_flag("--csv", o.csv, "CSV output for audit reports");
  app.add_option("--cap", o.cap, "largest codeword count enumerated exactly")->envname("QCT_CAP")->capture_default_str();
  app.add_option("--threads", o.threads, "worker threads, 0 for all cores")->envname("QCT_THREADS")->capture_default_str();
  app.add_option("--seed", o.seed, "seed for randomized searches")->envname("QCT_SEED")->capture_default_str();
  app.add_option("--samples", o.samples, "information-set iterations beyond the cap")
      ->envname("QCT_SAMPLES")
      ->capture_default_str();
  app.add_option("--catalog", o.catalog, "catalog path; results are stored when given")->envname("QCT_CATALOG");
  app.fallthrough();

  add_field(app, cli);
  add_code(app, cli);
  add_quantum(app, cli);
  add_audit(app, cli);
  add_catalog(app, cli);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const Error& e) {
    err << "qct: " << e.what() << "\n";
    return 1;
  }
  try {
    return cli.action ? cli.action() : 2;
  } catch (const Error& e) {
    err << "qct: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "qct: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qct
