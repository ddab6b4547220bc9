#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "blockdescent/serialize.hpp"

using namespace bd;
namespace fs = std::filesystem;

namespace {

/// Exit codes.
enum Exit { kPass = 0, kMathFail = 1, kUsage = 2, kCap = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroupSource {
  std::string builtin;
  std::string file;
  std::size_t cap = kDefaultOrderCap;

  GroupPtr load() const {
    if (builtin.empty() == file.empty()) throw UsageError("give exactly one of --builtin or --group");
    if (!builtin.empty()) return builtin_group(builtin);
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read group file " + file);
    std::stringstream ss;
    ss << in.rdbuf();
    auto g = std::const_pointer_cast<PermGroup>(parse_group(ss.str(), cap));
    g->label = fs::path(file).stem().string();
    return g;
  }
  std::string name() const { return builtin.empty() ? fs::path(file).stem().string() : builtin; }
};

FieldPtr parse_field(const std::string& s) {
  unsigned p = 0, n = 0;
  char comma = 0, extra = 0;
  std::istringstream in(s);
  if (!(in >> p >> comma >> n) || comma != ',' || (in >> extra)) throw UsageError("field must be given as p,n: " + s);
  return make_field(p, n);
}

std::uint64_t resolve_seed(std::uint64_t flag) {
  const char* env = std::getenv("BLOCKDESCENT_SEED");
  if (!env || !*env) return flag;
  char* end = nullptr;
  errno = 0;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (errno || *end || *env == '-') throw UsageError(std::string("BLOCKDESCENT_SEED is not an unsigned integer: ") + env);
  return v;
}

void emit(const Json& j, const std::string& out) {
  std::string text = j.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

void write_artifact(const fs::path& dir, const std::string& name, const Json& j) {
  fs::create_directories(dir);
  std::ofstream f(dir / (name + ".json"), std::ios::binary);
  if (!f) throw UsageError("cannot write artifact " + (dir / name).string());
  f << j.dump(2) << "\n";
}

std::string file_label(std::string s) {
  for (char& c : s)
    if (c == '\'') c = 'p';
    else if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  return s;
}

/// Every simple module of the block is absolutely irreducible over f.
bool block_split(const GroupAlgebra& ga, const BlockData& b, Rng& rng) {
  for (const auto& s : chop(block_regular_module(ga, b.idempotent), rng))
    if (hom_space(s.module, s.module).size() != 1) return false;
  return true;
}

// ---- blocks ----

struct BlocksArgs {
  GroupSource src;
  std::string field = "2,2";
  std::string artifacts;
  std::string out;
  bool json = false;
  std::uint64_t seed = 0;
};

int cmd_blocks(const BlocksArgs& a) {
  GroupPtr g = a.src.load();
  FieldPtr f = parse_field(a.field);
  Rng rng(resolve_seed(a.seed));
  GroupAlgebra ga(g, f);
  auto blocks = central_idempotents(ga);
  Json j = blocks_to_json(g, f, blocks);
  if (!a.artifacts.empty()) {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      Json simples = Json::array();
      for (const auto& s : chop(block_regular_module(ga, blocks[i].idempotent), rng)) {
        const std::string name = "block" + std::to_string(i) + "_" + file_label(s.label);
        write_artifact(a.artifacts, name, module_to_json(s.module));
        simples.push_back({{"label", s.label}, {"dim", s.module.dim()}, {"artifact", name + ".json"}});
      }
      j["blocks"][i]["simples"] = simples;
    }
  }
  if (a.json) {
    emit(j, a.out);
    return kPass;
  }
  std::ostringstream t;
  t << "group " << a.src.name() << " of order " << g->order() << " over " << f->name() << "\n";
  t << "block  dim  defect  principal  support\n";
  for (const auto& row : j["blocks"]) {
    char line[96];
    std::snprintf(line, sizeof line, "%-5zu  %-3zu  %-6zu  %-9s  %zu\n", row["index"].get<std::size_t>(),
                  row["dim"].get<std::size_t>(), row["defect_order"].get<std::size_t>(),
                  row["principal"].get<bool>() ? "yes" : "no", row["support_size"].get<std::size_t>());
    t << line;
    if (row.contains("simples")) {
      t << "       simples:";
      for (const auto& s : row["simples"]) t << " " << s["label"].get<std::string>();
      t << "\n";
    }
  }
  if (a.out.empty() || a.out == "-") {
    std::cout << t.str();
  } else {
    std::ofstream f(a.out);
    if (!f) throw UsageError("cannot write " + a.out);
    f << t.str();
  }
  return kPass;
}

// ---- classify ----

struct ClassifyArgs {
  GroupSource src;
  std::string field = "2,2";
  std::size_t block = 0;
  std::string out;
  bool json = false;
  std::uint64_t seed = 0;
};

int cmd_classify(const ClassifyArgs& a) {
  GroupPtr g = a.src.load();
  FieldPtr f = parse_field(a.field);
  if (f->characteristic() != 2) throw PreconditionFailed("classification needs characteristic 2");
  Rng rng(resolve_seed(a.seed));
  GroupAlgebra ga(g, f);
  auto blocks = central_idempotents(ga);
  if (a.block >= blocks.size()) throw UsageError("block index out of range");
  const BlockData& b = blocks[a.block];
  if (!is_klein_four(b.defect)) throw PreconditionFailed("defect group is not a Klein four group");
  auto cls = classify_source_algebra(ga, b, rng);
  Json j = {{"schema", "blockdescent.classification/v1"},
            {"group", group_to_json(*g)},
            {"field", field_to_json(*f)},
            {"block", a.block},
            {"classification", classification_to_json(cls)}};
  if (a.json) {
    emit(j, a.out);
  } else {
    std::ostringstream t;
    t << "block " << a.block << " of " << a.src.name() << " over " << f->name() << ": source algebra "
      << kind_name(cls.kind) << " (dim " << cls.source_dim << "), Brauer correspondent " << kind_name(cls.local_kind)
      << " (dim " << cls.local_dim << ")\n";
    if (a.out.empty() || a.out == "-")
      std::cout << t.str();
    else
      std::ofstream(a.out) << t.str();
  }
  return cls.source_match.ok() && cls.local_match.ok() && cls.pairing_ok ? kPass : kMathFail;
}

// ---- verify ----

struct VerifyArgs {
  GroupSource src;
  std::string theorem = "3.1";
  std::string k = "2,1", kprime = "2,2";
  std::size_t block = 0;
  bool assert_splitting = false, no_extension = false, timings = false, verbose = false;
  std::string out, artifacts;
  std::uint64_t seed = 0;
};

int cmd_verify(const VerifyArgs& a) {
  GroupPtr g = a.src.load();
  FieldPtr k = parse_field(a.k), kp = parse_field(a.kprime);
  std::uint64_t seed = resolve_seed(a.seed);
  Rng rng(seed);
  ReportInput in{seed, a.timings, false, false};
  if (!a.assert_splitting) {
    GroupAlgebra ga(g, kp);
    auto blocks = central_idempotents(ga);
    if (a.block < blocks.size()) {
      in.split_checked = true;
      in.split = block_split(ga, blocks[a.block], rng);
      if (!in.split) {
        if (a.src.builtin.empty())
          throw UsageError(kp->name() + " is not a splitting field for the block; pass --assert-splitting to proceed");
        std::cerr << "warning: " << kp->name() << " is not a splitting field for block " << a.block << "\n";
      }
    }
  }
  TheoremOptions opt;
  opt.block = a.block;
  opt.verify_extension = !a.no_extension;
  opt.group_name = a.src.name();
  TheoremReport r;
  if (a.theorem == "3.1")
    r = run_theorem_3_1(g, k, kp, rng, opt);
  else if (a.theorem == "3")
    r = run_theorem_3(g, k, kp, rng, opt);
  else
    throw UsageError("--theorem must be 3.1 or 3");
  if (a.verbose)
    for (const auto& [stage, secs] : r.timings) std::fprintf(stderr, "%-14s %8.2f s\n", stage.c_str(), secs);

  Json j = theorem_report_to_json(r, in);
  emit(j, a.out);
  if (!a.artifacts.empty()) {
    fs::path dir = a.artifacts;
    auto terms = [&](const BoundedComplex& x, const std::string& tag) {
      if (x.terms.empty()) return;
      write_artifact(dir, "complex_" + tag, complex_to_json(x));
      for (int n = x.lo; n <= x.hi(); ++n)
        write_artifact(dir, tag + "_" + file_label(x.term(n).label.empty() ? "deg" + std::to_string(n) : x.term(n).label),
                       module_to_json(x.term(n)));
    };
    terms(r.complex_ext, "ext");
    terms(r.complex, "base");
    if (r.descent) {
      FieldTower tower(k, kp);
      for (std::size_t t = 0; t < r.descent->terms.size(); ++t)
        write_artifact(dir, "certificate_" + std::to_string(r.descent->form.lo + static_cast<int>(t)),
                       certificate_to_json(r.descent->terms[t], tower));
    }
  }
  if (!a.out.empty() && a.out != "-")
    std::cout << "theorem " << a.theorem << " " << a.src.name() << ": " << (r.pass ? "pass" : "FAIL")
              << (r.hypothesis_ok ? "" : " (hypothesis unsatisfiable)") << "\n";
  return r.pass ? kPass : kMathFail;
}

// ---- descend ----

struct DescendArgs {
  std::string module;
  std::string k;
  std::string out;
  std::uint64_t seed = 0;
};

int cmd_descend(const DescendArgs& a) {
  std::ifstream in(a.module);
  if (!in) throw UsageError("cannot read module artifact " + a.module);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("module artifact is not JSON: ") + e.what(), 0);
  }
  RepModule m = module_from_json(doc);
  FieldPtr k = a.k.empty() ? make_field(m.field()->characteristic(), 1) : parse_field(a.k);
  if (k->characteristic() != m.field()->characteristic() || m.field()->degree() % k->degree())
    throw UsageError(k->name() + " is not a subfield of " + m.field()->name());
  Rng rng(resolve_seed(a.seed));
  FieldTower tower(k, m.field());
  Stability st = is_gamma_stable(m, tower, rng);
  if (!st.stable) {
    RepModule tw = galois_twist(m, tower);
    auto fp = trace_fingerprint(m), tfp = trace_fingerprint(tw);
    Json w = {{"schema", "blockdescent.instability/v1"},
              {"module", m.label},
              {"tower", {{"base", field_to_json(*k)}, {"extension", field_to_json(*m.field())}}},
              {"stable", false},
              {"witness",
               {{"reason", fp != tfp ? "trace fingerprints differ" : "no isomorphism to the Frobenius twist"},
                {"fingerprint", fp},
                {"twist_fingerprint", tfp},
                {"twist", module_to_json(tw)}}}};
    emit(w, a.out);
    std::cerr << "module " << m.label << " is not stable under Gal(" << m.field()->name() << "/" << k->name()
              << ")\n";
    return kMathFail;
  }
  DescentCertificate cert = descend_module(m, tower, rng);
  Json j = certificate_to_json(cert, tower);
  emit(j, a.out);
  return j["verified"].get<bool>() ? kPass : kMathFail;
}

void add_group_flags(CLI::App* sub, GroupSource& src) {
  sub->add_option("--builtin", src.builtin, "built-in group")->check(CLI::IsMember({"a5", "a4", "v4", "v4xc3", "c3", "s3", "trivial"}));
  sub->add_option("--group", src.file, "group file (cycle notation, one generator per line)");
  sub->add_option("--max-order", src.cap, "largest group order accepted");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blocks, source algebras and descent of splendid Rickard complexes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "blockdescent 1.0");

  BlocksArgs ba;
  auto* blocks = app.add_subcommand("blocks", "block decomposition of kG");
  add_group_flags(blocks, ba.src);
  blocks->add_option("--field,--k", ba.field, "field as p,n")->capture_default_str();
  blocks->add_option("--artifacts", ba.artifacts, "write the simple modules of each block here");
  blocks->add_flag("--json", ba.json, "JSON output");
  blocks->add_option("--out,-o", ba.out, "output file");
  blocks->add_option("--seed", ba.seed, "random seed")->capture_default_str();

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "source algebra of a Klein four block");
  add_group_flags(classify, ca.src);
  classify->add_option("--field,--k", ca.field, "field as p,n")->capture_default_str();
  classify->add_option("--block", ca.block, "block index")->capture_default_str();
  classify->add_flag("--json", ca.json, "JSON output");
  classify->add_option("--out,-o", ca.out, "output file");
  classify->add_option("--seed", ca.seed, "random seed")->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a descent theorem and print the report");
  add_group_flags(verify, va.src);
  verify->add_option("--theorem", va.theorem, "3.1 or 3")->capture_default_str();
  verify->add_option("--k", va.k, "base field as p,n")->capture_default_str();
  verify->add_option("--kprime", va.kprime, "extension field as p,n")->capture_default_str();
  verify->add_option("--block", va.block, "block index over k'")->capture_default_str();
  verify->add_flag("--assert-splitting", va.assert_splitting, "skip the splitting field check");
  verify->add_flag("--no-extension", va.no_extension, "skip the Rickard check over k'");
  verify->add_flag("--timings", va.timings, "include stage timings in the report");
  verify->add_flag("-v,--verbose", va.verbose, "print stage timings to stderr");
  verify->add_option("--out,-o", va.out, "report file");
  verify->add_option("--artifacts", va.artifacts, "write complexes, terms and certificates here");
  verify->add_option("--seed", va.seed, "random seed")->capture_default_str();

  DescendArgs da;
  auto* descend = app.add_subcommand("descend", "descend a Galois-stable module artifact");
  descend->add_option("--module", da.module, "module artifact")->required();
  descend->add_option("--k", da.k, "base field as p,n (default: the prime field)");
  descend->add_option("--out,-o", da.out, "certificate file");
  descend->add_option("--seed", da.seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*blocks) return cmd_blocks(ba);
    if (*classify) return cmd_classify(ca);
    if (*verify) return cmd_verify(va);
    if (*descend) return cmd_descend(da);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedField& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const RetryBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMathFail;
  }
  return kUsage;
}
