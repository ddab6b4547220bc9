#include "doctest.h"

#include "blockdescent/serialize.hpp"

using namespace bd;

namespace {

Matrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<Elt>(rng.below(f->order()));
  return m;
}

}  // namespace

TEST_CASE("matrix encoding round trips") {
  Rng rng(50);
  for (auto [p, n] : {std::pair{2u, 1u}, std::pair{2u, 2u}, std::pair{2u, 5u}, std::pair{3u, 2u}, std::pair{5u, 1u}}) {
    auto f = make_field(p, n);
    CAPTURE(f->name());
    for (std::size_t c : {0u, 1u, 5u, 8u, 13u}) {
      Matrix m = random_matrix(f, 3, c, rng);
      Json j = matrix_to_json(m);
      CHECK(matrix_from_json(Json::parse(j.dump()), f) == m);
    }
  }
  auto f2 = make_field(2, 1);
  Matrix m(f2, 1, 6, {1, 0, 1, 1, 0, 1});
  CHECK(matrix_to_json(m)["data"][0] == "b4");
  CHECK(matrix_digest(m) == matrix_digest(Matrix(f2, 1, 6, {1, 0, 1, 1, 0, 1})));
  CHECK(matrix_digest(m) != matrix_digest(Matrix(f2, 1, 6, {1, 0, 1, 1, 0, 0})));

  Json bad = matrix_to_json(m);
  bad["data"][0] = "bz";
  CHECK_THROWS_AS(matrix_from_json(bad, f2), ParseError);
  bad["data"][0] = "b";
  CHECK_THROWS_AS(matrix_from_json(bad, f2), ParseError);
}

TEST_CASE("module and group artifacts") {
  Rng rng(51);
  auto f4 = make_field(2, 2);
  auto a5 = builtin_group("a5");
  GroupAlgebra ga(a5, f4);
  auto simples = chop(regular_module(ga), rng);
  for (const auto& s : simples) {
    Json j = module_to_json(s.module);
    RepModule back = module_from_json(Json::parse(j.dump()));
    CHECK(back.dim() == s.module.dim());
    CHECK(back.group()->order() == 60);
    CHECK(iso_test(back, s.module, rng).has_value());
    CHECK(module_to_json(back).dump() == j.dump());
  }
  auto prod = direct_product(builtin_group("a4"), a5);
  CHECK(group_from_json(group_to_json(*prod))->order() == 720);

  Json j = module_to_json(simples[0].module);
  j["schema"] = "something/v0";
  CHECK_THROWS_AS(module_from_json(j), ParseError);
  j = module_to_json(simples[1].module);
  j["generators"].erase(0);
  CHECK_THROWS_AS(module_from_json(j), ParseError);
}

TEST_CASE("theorem report is deterministic") {
  auto f2 = make_field(2, 1), f4 = make_field(2, 2);
  std::string first;
  for (int run = 0; run < 2; ++run) {
    Rng rng(7);
    TheoremOptions opt;
    opt.group_name = "v4xc3";
    auto r = run_theorem_3_1(builtin_group("v4xc3"), f2, f4, rng, opt);
    Json j = theorem_report_to_json(r, {7, false, true, true});
    for (const char* key : {"input", "blocks", "defect", "correspondent", "classification", "complex", "descent",
                            "verdicts", "timings"})
      CHECK(j.contains(key));
    CHECK(j["timings"].empty());
    CHECK(j["verdicts"]["descent"] == true);
    if (run == 0)
      first = j.dump(2);
    else
      CHECK(j.dump(2) == first);
  }
}
