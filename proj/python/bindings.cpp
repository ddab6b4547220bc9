#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blockdescent/serialize.hpp"

namespace py = pybind11;
using namespace bd;

namespace {

GroupPtr load_group(const std::string& spec, std::size_t cap = kDefaultOrderCap) {
  if (spec.find('(') == std::string::npos) return builtin_group(spec);
  return parse_group(spec, cap);
}

FieldPtr field(const std::pair<unsigned, unsigned>& pn) { return make_field(pn.first, pn.second); }

std::string blocks(const std::string& group, std::pair<unsigned, unsigned> k, std::size_t max_order) {
  GroupPtr g = load_group(group, max_order);
  FieldPtr f = field(k);
  py::gil_scoped_release release;
  return blocks_to_json(g, f, central_idempotents(GroupAlgebra(g, f))).dump();
}

std::string classify(const std::string& group, std::pair<unsigned, unsigned> k, std::size_t block, std::uint64_t seed) {
  GroupPtr g = load_group(group);
  FieldPtr f = field(k);
  py::gil_scoped_release release;
  Rng rng(seed);
  GroupAlgebra ga(g, f);
  auto bs = central_idempotents(ga);
  if (block >= bs.size()) throw PreconditionFailed("block index out of range");
  return classification_to_json(classify_source_algebra(ga, bs[block], rng)).dump();
}

std::string verify(const std::string& theorem, const std::string& group, std::pair<unsigned, unsigned> k,
                   std::pair<unsigned, unsigned> kprime, std::uint64_t seed, std::size_t block, bool extension) {
  GroupPtr g = load_group(group);
  FieldPtr fk = field(k), fkp = field(kprime);
  TheoremOptions opt;
  opt.block = block;
  opt.verify_extension = extension;
  opt.group_name = g->label;
  py::gil_scoped_release release;
  Rng rng(seed);
  TheoremReport r;
  if (theorem == "3.1")
    r = run_theorem_3_1(g, fk, fkp, rng, opt);
  else if (theorem == "3")
    r = run_theorem_3(g, fk, fkp, rng, opt);
  else
    throw PreconditionFailed("theorem must be \"3.1\" or \"3\"");
  return theorem_report_to_json(r, {seed, false, false, false}).dump();
}

std::string simples(const std::string& group, std::pair<unsigned, unsigned> k, std::size_t block, std::uint64_t seed) {
  GroupPtr g = load_group(group);
  FieldPtr f = field(k);
  py::gil_scoped_release release;
  Rng rng(seed);
  GroupAlgebra ga(g, f);
  auto bs = central_idempotents(ga);
  if (block >= bs.size()) throw PreconditionFailed("block index out of range");
  Json out = Json::array();
  for (const auto& s : chop(block_regular_module(ga, bs[block].idempotent), rng)) out.push_back(module_to_json(s.module));
  return out.dump();
}

std::string descend(const std::string& module_json, std::pair<unsigned, unsigned> k, std::uint64_t seed) {
  RepModule m = module_from_json(Json::parse(module_json));
  FieldTower tower(field(k), m.field());
  py::gil_scoped_release release;
  Rng rng(seed);
  if (!is_gamma_stable(m, tower, rng).stable) throw PreconditionFailed("module is not Gamma-stable");
  return certificate_to_json(descend_module(m, tower, rng), tower).dump();
}

}  // namespace

PYBIND11_MODULE(_blockdescent, m) {
  m.doc() = "Block theory over small finite fields";
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PreconditionFailed>(m, "PreconditionFailed", PyExc_ValueError);
  py::register_exception<UnsupportedField>(m, "UnsupportedField", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<Inconsistency>(m, "Inconsistency", PyExc_RuntimeError);

  m.def("builtin_group_text", &builtin_group_text, py::arg("name"));
  m.def("blocks", &blocks, py::arg("group"), py::arg("k"), py::arg("max_order"));
  m.def("simples", &simples, py::arg("group"), py::arg("k"), py::arg("block"), py::arg("seed"));
  m.def("classify", &classify, py::arg("group"), py::arg("k"), py::arg("block"), py::arg("seed"));
  m.def("verify", &verify, py::arg("theorem"), py::arg("group"), py::arg("k"), py::arg("kprime"), py::arg("seed"),
        py::arg("block"), py::arg("extension"));
  m.def("descend", &descend, py::arg("module"), py::arg("k"), py::arg("seed"));
}
