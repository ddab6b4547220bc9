#include "blockdescent/serialize.hpp"

#include <cstdio>

namespace bd {

namespace {

constexpr const char* kHex = "0123456789abcdef";

unsigned hex_value(char c) {
  if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
  if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
  if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
  throw ParseError("bad hex digit in matrix row", 0);
}

unsigned entry_digits(const Field& f) { return (f.degree() + 3) / 4; }

std::string pack_row(const Field& f, std::span<const Elt> row) {
  std::string s;
  if (f.order() == 2) {
    for (std::size_t j = 0; j < row.size(); j += 4) {
      unsigned nib = 0;
      for (std::size_t b = 0; b < 4; ++b) nib = nib << 1 | (j + b < row.size() ? row[j + b] : 0u);
      s.push_back(kHex[nib]);
    }
    return s;
  }
  const unsigned w = entry_digits(f);
  for (Elt x : row)
    for (unsigned d = w; d-- > 0;) s.push_back(kHex[(x >> (4 * d)) & 15u]);
  return s;
}

std::string cycles(const Perm& p) { return format_cycles(p); }

Json tower_json(const FieldTower& t) { return {{"base", field_to_json(*t.base())}, {"extension", field_to_json(*t.ext())}}; }

Json dims_json(const std::map<int, std::size_t>& m) {
  Json j = Json::object();
  for (auto [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

Json cartan_json(const std::vector<std::vector<std::size_t>>& c) {
  Json j = Json::array();
  for (const auto& row : c) j.push_back(row);
  return j;
}

}  // namespace

Json field_to_json(const Field& f) { return {{"p", f.characteristic()}, {"n", f.degree()}}; }

FieldPtr field_from_json(const Json& j) { return make_field(j.at("p").get<unsigned>(), j.at("n").get<unsigned>()); }

Json matrix_to_json(const Matrix& m) {
  const Field& f = *m.field();
  Json j = {{"rows", m.rows()}, {"cols", m.cols()}};
  Json data = Json::array();
  if (f.characteristic() == 2) {
    j["encoding"] = f.order() == 2 ? "hex-bits" : "hex-entries";
    for (std::size_t i = 0; i < m.rows(); ++i) data.push_back(pack_row(f, m.row(i)));
  } else {
    j["encoding"] = "integers";
    for (std::size_t i = 0; i < m.rows(); ++i) data.push_back(std::vector<unsigned>(m.row(i).begin(), m.row(i).end()));
  }
  j["data"] = std::move(data);
  return j;
}

Matrix matrix_from_json(const Json& j, const FieldPtr& f) {
  const std::size_t rows = j.at("rows").get<std::size_t>(), cols = j.at("cols").get<std::size_t>();
  const std::string enc = j.at("encoding").get<std::string>();
  const Json& data = j.at("data");
  if (data.size() != rows) throw ParseError("matrix row count mismatch", 0);
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (enc == "integers") {
      auto v = data[i].get<std::vector<unsigned>>();
      if (v.size() != cols) throw ParseError("matrix column count mismatch", 0);
      for (std::size_t c = 0; c < cols; ++c) {
        if (v[c] >= f->order()) throw ParseError("matrix entry outside the field", 0);
        m(i, c) = static_cast<Elt>(v[c]);
      }
      continue;
    }
    const std::string s = data[i].get<std::string>();
    if (enc == "hex-bits") {
      if (s.size() != (cols + 3) / 4) throw ParseError("matrix row length mismatch", 0);
      for (std::size_t c = 0; c < cols; ++c) m(i, c) = static_cast<Elt>(hex_value(s[c / 4]) >> (3 - c % 4) & 1u);
    } else if (enc == "hex-entries") {
      const unsigned w = entry_digits(*f);
      if (s.size() != cols * w) throw ParseError("matrix row length mismatch", 0);
      for (std::size_t c = 0; c < cols; ++c) {
        unsigned x = 0;
        for (unsigned d = 0; d < w; ++d) x = x << 4 | hex_value(s[c * w + d]);
        if (x >= f->order()) throw ParseError("matrix entry outside the field", 0);
        m(i, c) = static_cast<Elt>(x);
      }
    } else {
      throw ParseError("unknown matrix encoding " + enc, 0);
    }
  }
  return m;
}

std::string matrix_digest(const Matrix& m) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  std::string head = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":";
  for (char c : head) mix(static_cast<unsigned char>(c));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (char c : pack_row(*m.field(), m.row(i))) mix(static_cast<unsigned char>(c));
    mix('\n');
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json group_to_json(const PermGroup& g) {
  if (const auto& pi = g.product_info()) return {{"product", {group_to_json(*pi->left), group_to_json(*pi->right)}}};
  Json gens = Json::array();
  for (const auto& p : g.generators()) gens.push_back(cycles(p));
  Json j = {{"degree", g.degree()}, {"order", g.order()}, {"generators", gens}};
  if (!g.label.empty()) j["label"] = g.label;
  return j;
}

GroupPtr group_from_json(const Json& j) {
  if (j.contains("product")) return direct_product(group_from_json(j.at("product")[0]), group_from_json(j.at("product")[1]));
  const std::size_t degree = j.at("degree").get<std::size_t>();
  std::vector<Perm> gens;
  for (const auto& s : j.at("generators")) gens.push_back(parse_cycles(s.get<std::string>(), degree));
  auto g = std::const_pointer_cast<PermGroup>(make_group(degree, std::move(gens)));
  g->label = j.value("label", "");
  if (j.contains("order") && j.at("order").get<std::size_t>() != g->order())
    throw ParseError("group order does not match its generators", 0);
  return g;
}

Json module_to_json(const RepModule& m) {
  Json gens = Json::array();
  for (const auto& g : m.gens()) gens.push_back(matrix_to_json(g));
  return {{"schema", "blockdescent.module/v1"},
          {"label", m.label},
          {"field", field_to_json(*m.field())},
          {"group", group_to_json(*m.group())},
          {"dim", m.dim()},
          {"generators", gens}};
}

RepModule module_from_json(const Json& j) {
  if (j.value("schema", "") != "blockdescent.module/v1") throw ParseError("not a module artifact", 0);
  FieldPtr f = field_from_json(j.at("field"));
  GroupPtr g = group_from_json(j.at("group"));
  const std::size_t dim = j.at("dim").get<std::size_t>();
  Gens gens;
  for (const auto& m : j.at("generators")) {
    Matrix a = matrix_from_json(m, f);
    if (a.rows() != dim || a.cols() != dim) throw ParseError("generator matrix has the wrong size", 0);
    gens.push_back(std::move(a));
  }
  if (gens.size() != g->generators().size()) throw ParseError("one matrix per group generator expected", 0);
  return RepModule(f, g, dim, std::move(gens), j.value("label", ""));
}

Json complex_to_json(const BoundedComplex& x) {
  Json terms = Json::array(), diffs = Json::array();
  for (int n = x.lo; n <= x.hi(); ++n) {
    Json t = module_to_json(x.term(n));
    t["degree"] = n;
    terms.push_back(std::move(t));
  }
  for (int n = x.lo + 1; n <= x.hi(); ++n) {
    Json d = matrix_to_json(x.d(n));
    d["degree"] = n;
    diffs.push_back(std::move(d));
  }
  return {{"schema", "blockdescent.complex/v1"},
          {"left_block", x.left_block},
          {"right_block", x.right_block},
          {"lo", x.lo},
          {"terms", terms},
          {"differentials", diffs}};
}

Json certificate_to_json(const DescentCertificate& c, const FieldTower& tower) {
  Json wit = Json::array();
  for (const auto& w : c.stability) wit.push_back(matrix_to_json(w));
  return {{"schema", "blockdescent.descent_certificate/v1"},
          {"tower", tower_json(tower)},
          {"dim", c.form.dim()},
          {"form", module_to_json(c.form)},
          {"target", module_to_json(c.target)},
          {"isomorphism", matrix_to_json(c.iso)},
          {"stability_witnesses", wit},
          {"verified", c.verify(tower)}};
}

Json rickard_to_json(const RickardReport& r) {
  auto side = [](const SideReport& s) {
    Json certs = Json::object();
    auto cert = [](const Matrix& m) { return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"digest", matrix_digest(m)}}; };
    certs["section"] = cert(s.section);
    certs["retraction"] = cert(s.retraction);
    certs["isomorphism"] = cert(s.iso);
    return Json{{"name", s.name},
                {"pass", s.pass},
                {"failure", s.failure},
                {"term_dims", dims_json(s.term_dims)},
                {"homology_dims", dims_json(s.homology_dims)},
                {"checks",
                 {{"range_supported", s.range_supported},
                  {"terms_projective", s.terms_projective},
                  {"homology_concentrated", s.homology_concentrated},
                  {"outgoing_split", s.outgoing_split},
                  {"incoming_split", s.incoming_split},
                  {"complement_regular", s.complement_regular},
                  {"certificates_verified", s.certificates_verified}}},
                {"complement_dim", s.complement_dim},
                {"certificates", certs}};
  };
  return {{"schema", "blockdescent.rickard/v1"}, {"pass", r.pass}, {"sides", {side(r.left), side(r.right)}}};
}

Json splendid_to_json(const SplendidReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms) {
    Json s = Json::array();
    for (const auto& v : t.summands)
      s.push_back({{"dim", v.dim},
                   {"vertex_order", v.vertex.order()},
                   {"within_delta", v.within_delta},
                   {"trivial_source", v.trivial_source}});
    terms.push_back({{"degree", t.degree}, {"summands", s}});
  }
  return {{"pass", r.pass}, {"terms", terms}};
}

Json classification_to_json(const SourceAlgebraClass& c) {
  auto match = [](const ModelMatch& m, const GroupPtr& target) {
    GroupPtr model = model_group(m.kind);
    Json gens = Json::array();
    for (int s : model->generator_indices())
      gens.push_back({{"model", cycles(model->element(s))},
                      {"image", cycles(target->element(m.embedding[static_cast<std::size_t>(s)]))}});
    return Json{{"model", kind_name(m.kind)},
                {"generator_images", gens},
                {"unital", m.unital},
                {"multiplicative", m.multiplicative},
                {"bijective", m.bijective},
                {"p_compatible", m.p_compatible},
                {"images_digest", matrix_digest(m.images)}};
  };
  return {{"kind", kind_name(c.kind)},
          {"local_kind", kind_name(c.local_kind)},
          {"source_dim", c.source_dim},
          {"local_dim", c.local_dim},
          {"cartan", cartan_json(c.cartan)},
          {"local_cartan", cartan_json(c.local_cartan)},
          {"source_isomorphism", match(c.source_match, c.triple.p.ambient())},
          {"local_isomorphism", match(c.local_match, c.triple.normalizer.as_group())},
          {"pairing_ok", c.pairing_ok},
          {"embedding_injective", c.triple.embedding_injective}};
}

Json blocks_to_json(const GroupPtr& g, const FieldPtr& f, const std::vector<BlockData>& blocks) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const BlockData& b = blocks[i];
    Json defect = Json::array();
    for (int x : b.defect.generators()) defect.push_back(cycles(g->element(x)));
    std::size_t support = 0;
    for (Elt x : b.idempotent) support += x != 0;
    rows.push_back({{"index", i},
                    {"dim", b.dimension},
                    {"principal", b.principal},
                    {"defect_order", b.defect.order()},
                    {"defect_generators", defect},
                    {"support_size", support}});
  }
  return {{"schema", "blockdescent.blocks/v1"},
          {"group", group_to_json(*g)},
          {"field", field_to_json(*f)},
          {"blocks", rows}};
}

Json theorem_report_to_json(const TheoremReport& r, const ReportInput& in) {
  Json j;
  j["schema"] = "blockdescent.theorem_report/v1";
  j["input"] = {{"theorem", r.theorem},
                {"group", r.group},
                {"group_order", r.group_order},
                {"k", field_to_json(*r.k)},
                {"kprime", field_to_json(*r.kprime)},
                {"p", 2},
                {"block_index", r.block_index},
                {"seed", in.seed},
                {"splitting_field", in.split_checked ? Json(in.split) : Json("asserted")}};
  Json blocks = Json::array();
  for (std::size_t i = 0; i < r.blocks.size(); ++i)
    blocks.push_back({{"index", i},
                      {"dim", r.blocks[i].dim},
                      {"defect_order", r.blocks[i].defect_order},
                      {"principal", r.blocks[i].principal},
                      {"support_size", r.blocks[i].support.size()}});
  j["blocks"] = blocks;
  Json defect = Json::array();
  if (r.classification) {
    const auto& amb = r.classification->triple.p.ambient();
    for (int x : r.defect) defect.push_back(cycles(amb->element(x)));
  }
  j["defect"] = {{"order", r.defect.size()}, {"elements", defect}};
  j["correspondent"] = {{"dim", r.correspondent_dim},
                        {"normalizer_order", r.classification ? r.classification->triple.normalizer.order() : 0}};
  j["classification"] = r.classification ? classification_to_json(*r.classification) : Json(nullptr);
  j["hypothesis"] = {{"satisfied", r.hypothesis_ok}, {"note", r.hypothesis_note}};

  Json terms = Json::array(), diffs = Json::array();
  const BoundedComplex& x = r.complex.terms.empty() ? r.complex_ext : r.complex;
  if (!x.terms.empty()) {
    for (int n = x.lo; n <= x.hi(); ++n) {
      Json t = {{"degree", n}, {"dim", x.dim(n)}, {"label", x.term(n).label}, {"field", field_to_json(*x.term(n).field())}};
      if (!r.complex_ext.terms.empty()) t["extension_dim"] = r.complex_ext.dim(n);
      terms.push_back(std::move(t));
    }
    for (int n = x.lo + 1; n <= x.hi(); ++n) {
      Matrix d = x.d(n);
      diffs.push_back({{"degree", n}, {"rows", d.rows()}, {"cols", d.cols()}, {"rank", rank(d)}, {"digest", matrix_digest(d)}});
    }
  }
  j["complex"] = {{"terms", terms}, {"differentials", diffs}};

  Json certs = Json::array();
  bool chain_ok = false;
  if (r.descent) {
    FieldTower tower(r.k, r.kprime);
    chain_ok = r.descent->verify(tower);
    for (std::size_t t = 0; t < r.descent->terms.size(); ++t) {
      const DescentCertificate& c = r.descent->terms[t];
      certs.push_back({{"degree", r.descent->form.lo + static_cast<int>(t)},
                       {"dim", c.form.dim()},
                       {"verified", c.verify(tower)},
                       {"stability_witnesses", c.stability.size()},
                       {"isomorphism_digest", matrix_digest(c.iso)},
                       {"chain_isomorphism_digest", matrix_digest(r.descent->iso[t])}});
    }
  }
  j["descent"] = {{"certificates", certs}, {"chain_isomorphism_verified", chain_ok}};
  j["gamma"] = {{"checked", r.gamma.checked},
                {"local_permutation", r.gamma.local_permutation},
                {"global_permutation", r.gamma.global_permutation},
                {"term_stable", r.gamma.term_stable}};
  const LemmaChecks& l = r.lemmas;
  j["lemmas"] = {{"fOG", {{"checked", l.fog_checked}, {"unique", l.fog_unique}, {"isomorphic", l.fog_iso}}},
                 {"summand", {{"checked", l.summand_checked}, {"unique", l.summand_unique}, {"isomorphic", l.summand_iso}}},
                 {"key", {{"checked", l.key_checked}, {"isomorphic", l.key_iso}}}};
  j["rickard"] = {{"base", r.rickard ? rickard_to_json(*r.rickard) : Json(nullptr)},
                  {"extension", r.rickard_ext ? rickard_to_json(*r.rickard_ext) : Json(nullptr)}};
  j["splendid"] = {{"base", r.splendid ? splendid_to_json(*r.splendid) : Json(nullptr)},
                   {"extension", r.splendid_ext ? splendid_to_json(*r.splendid_ext) : Json(nullptr)}};
  j["verdicts"] = {{"rickard", r.verdict_rickard},
                   {"splendid", r.verdict_splendid},
                   {"descent", r.verdict_descent},
                   {"pass", r.pass}};
  Json timings = Json::object();
  if (in.timings)
    for (const auto& [k, v] : r.timings) timings[k] = v;
  j["timings"] = timings;
  return j;
}

}  // namespace bd
