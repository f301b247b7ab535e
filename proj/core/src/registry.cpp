#include <nlohmann/json.hpp>

#include "scenario_internal.hpp"

namespace parageo::detail {

namespace {

using json = nlohmann::json;

json chart(std::vector<std::string> coords, json domain) {
  return {{"coordinates", std::move(coords)}, {"domain", std::move(domain)}};
}

// Matrices go through a string table: a braced 2x2 of strings would otherwise
// be read as a JSON object.
using Table = std::vector<std::vector<std::string>>;

json metric(const std::string& chart, const Table& components, int pos, int neg) {
  return {{"chart", chart}, {"components", components}, {"signature", {pos, neg}}};
}

json paracontact(const std::string& chart, const std::string& metric, json phi, json xi, json eta) {
  return {{"type", "paracontact"}, {"chart", chart}, {"metric", metric},
          {"phi", std::move(phi)},  {"xi", std::move(xi)}, {"eta", std::move(eta)}};
}

json para_hermitian(const std::string& chart, const std::string& metric, const Table& J) {
  return {{"type", "para-hermitian"}, {"chart", chart}, {"metric", metric}, {"J", J}};
}

// Singular loci x = 0 (source) and v = 0 (target) are kept out of the charts.
const json kM1Chart = chart({"x", "y", "z"}, {{0.25, 3.0}, {-3.0, 3.0}, {-3.0, 3.0}});
const json kM2Chart = chart({"u", "v", "w"}, {{-3.0, 3.0}, {0.25, 3.0}, {-3.0, 3.0}});
const json kM1Box = {{0.5, 2.5}, {-2.0, 2.0}, {-2.0, 2.0}};
const json kM2Box = {{-2.0, 2.0}, {0.5, 2.5}, {-2.0, 2.0}};

const json kG1 = metric("M1", {{"-x", "0", "0"}, {"0", "x^4 + x", "x^2"}, {"0", "x^2", "1"}}, 2, 1);
const json kG2 = metric("M2", {{"v^4 + v", "0", "v^2"}, {"0", "-v", "0"}, {"v^2", "0", "1"}}, 2, 1);

json m1() {
  json s = paracontact("M1", "g1", {{"0", "-1", "0"}, {"-1", "0", "0"}, {"x^2", "0", "0"}}, {"0", "0", "1"},
                       {"0", "x^2", "1"});
  s["class"] = "para-Sasakian";
  return s;
}

json m2(bool corrected) {
  json s = paracontact("M2", "g2", {{"0", "-1", "0"}, {"-1", "0", "0"}, {"0", "v^2", "0"}}, {"0", "0", "1"},
                       {corrected ? "v^2" : "-v^2", "0", "1"});
  s["class"] = "para-Sasakian";
  s["notes"] = corrected ? json::array({"erratum applied: eta2 = v^2 du + dw (the printed sign -v^2 du + dw "
                                        "contradicts g2(xi2, .) = eta2 and phi2^2 = Id - eta2 (x) xi2)"})
                         : json::array({"eta2 taken as printed (-v^2 du + dw); compatibility checks on M2 are "
                                        "expected to fail"});
  return s;
}

const json kFlatP = chart({"x", "y", "z"}, {{-3.0, 3.0}, {-3.0, 3.0}, {-3.0, 3.0}});
const json kFlatN = chart({"a", "b"}, {{-3.0, 3.0}, {-3.0, 3.0}});
const json kGP = metric("P", {{"1", "0", "0"}, {"0", "-1", "0"}, {"0", "0", "1"}}, 2, 1);
const json kHN = metric("N", {{"1", "0"}, {"0", "-1"}}, 1, 1);

json flat_p() {
  json s = paracontact("P", "gP", {{"0", "1", "0"}, {"1", "0", "0"}, {"0", "0", "0"}}, {"0", "0", "1"},
                       {"0", "0", "1"});
  s["class"] = "paracosymplectic";
  return s;
}

json flat_n() { return para_hermitian("N", "hN", {{"0", "1"}, {"1", "0"}}); }

// Paracosymplectic structures are not paracontact metric and not para-Sasakian.
const std::vector<std::string> kCosymplecticFails = {"P.paracontact-metric", "P.para-sasakian", "P.k-paracontact"};

json example_pair(bool corrected) {
  json d;
  d["description"] = corrected ? "para-Sasakian 3-manifolds M1, M2 and the map (x,y,z) -> (y,x,z)"
                               : "the same example with eta2 as printed (erratum demonstration)";
  d["charts"] = {{"M1", kM1Chart}, {"M2", kM2Chart}};
  d["metrics"] = {{"g1", kG1}, {"g2", kG2}};
  d["structures"] = {{"M1", m1()}, {"M2", m2(corrected)}};
  d["domains"] = {{"M1", kM1Box}, {"M2", kM2Box}};
  d["map"] = {{"source", "M1"}, {"target", "M2"}, {"kind", "contact-contact"}, {"components", {"y", "x", "z"}}};
  if (!corrected) {
    d["expect_fail"] = {"M2.almost-paracontact", "M2.compatible-metric", "M2.paracontact-metric",
                        "M2.normal",             "M2.structure-functions", "M2.para-sasakian",
                        "M2.classification",     "map.paraholomorphic",  "map.lambda",
                        "map.pluriharmonic-obstruction"};
  }
  return d;
}

json flat_para_kahler() {
  json d;
  d["description"] = "flat para-Kaehler plane: J swaps d_a and d_b, h = diag(1,-1)";
  d["charts"] = {{"N", kFlatN}};
  d["metrics"] = {{"hN", kHN}};
  d["structures"] = {{"N", flat_n()}};
  return d;
}

json flat_paracosymplectic() {
  json d;
  d["description"] = "flat paracosymplectic 3-space: phi swaps d_x and d_y, xi = d_z, g = diag(1,-1,1)";
  d["charts"] = {{"P", kFlatP}};
  d["metrics"] = {{"gP", kGP}};
  d["structures"] = {{"P", flat_p()}};
  d["expect_fail"] = kCosymplecticFails;
  return d;
}

json projection() {
  json d = flat_paracosymplectic();
  d["description"] = "projection (x,y,z) -> (x,y) from flat paracosymplectic space onto the flat para-Kaehler plane";
  d["charts"]["N"] = kFlatN;
  d["metrics"]["hN"] = kHN;
  d["structures"]["N"] = flat_n();
  d["map"] = {{"source", "P"}, {"target", "N"}, {"kind", "contact-hermitian"}, {"components", {"x", "y"}}};
  return d;
}

json inclusion() {
  json d = projection();
  d["description"] = "inclusion (a,b) -> (a,b,0) of the flat para-Kaehler plane into flat paracosymplectic space";
  d["map"] = {{"source", "N"}, {"target", "P"}, {"kind", "hermitian-contact"}, {"components", {"a", "b", "0"}}};
  return d;
}

json identity_m1() {
  json d;
  d["description"] = "identity map of M1";
  d["charts"] = {{"M1", kM1Chart}};
  d["metrics"] = {{"g1", kG1}};
  d["structures"] = {{"M1", m1()}};
  d["domains"] = {{"M1", kM1Box}};
  d["map"] = {{"source", "M1"}, {"target", "M1"}, {"kind", "contact-contact"}, {"components", {"x", "y", "z"}}};
  return d;
}

json null_curve() {
  // h = [[0, B], [B^T, 0]] keeps J = diag(1,1,-1,-1) skew for any invertible B;
  // the polynomial entries of B make the structure non-Kaehler.
  const char* b11 = "1 + 0.1*a1*b2";
  const char* b12 = "0.05*a2^2";
  const char* b21 = "0.1*b1";
  const char* b22 = "1 - 0.05*a1*b1";
  json d;
  d["description"] =
      "(J,phi1)-paraholomorphic map from a perturbed 4-dimensional para-Hermitian space into M1 along the "
      "null curve s -> (1+s, -s, ((1+s)^3 - 1)/3)";
  d["charts"] = {{"Q", chart({"a1", "a2", "b1", "b2"}, {{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}})},
                 {"M1", kM1Chart}};
  d["metrics"] = {{"hQ", metric("Q",
                                {{"0", "0", b11, b12}, {"0", "0", b21, b22}, {b11, b21, "0", "0"}, {b12, b22, "0", "0"}},
                                2, 2)},
                  {"g1", kG1}};
  d["structures"] = {
      {"Q", para_hermitian("Q", "hQ", {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "-1", "0"}, {"0", "0", "0", "-1"}})},
      {"M1", m1()}};
  d["domains"] = {{"Q", {{-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}}}};
  d["map"] = {{"source", "Q"},
              {"target", "M1"},
              {"kind", "hermitian-contact"},
              {"components", {"1 + a1 + a2^2", "-(a1 + a2^2)", "((1 + a1 + a2^2)^3 - 1)/3"}}};
  // Q is not para-Kaehler, and the map has a nonzero (but horizontal) tension field.
  d["expect_fail"] = {"Q.para-kahler", "map.harmonic"};
  return d;
}

json shifted_map() {
  json d = example_pair(true);
  d["description"] = "non-paraholomorphic shifted map (x,y,z) -> (y, x+1, z) between M1 and M2";
  d["domains"]["M1"] = {{0.5, 1.5}, {-2.0, 2.0}, {-2.0, 2.0}};
  d["map"]["components"] = {"y", "x + 1", "z"};
  d["expect_fail"] = {"map.paraholomorphic", "map.pluriharmonic-obstruction", "map.xi-orthogonality",
                      "map.parapluriharmonic", "map.harmonic", "map.tension-transfer", "map.pointwise-transfer",
                      "map.lambda"};
  return d;
}

json curved_projection() {
  const char* c3 = "1 + 0.1*x^2 + 0.05*y^2";
  const char* c2 = "1 + 0.1*a^2 + 0.05*b^2";
  json d;
  d["description"] = "projection from a conformally flat paracosymplectic product onto a conformally flat para-Kaehler plane";
  d["charts"] = {{"P", kFlatP}, {"N", kFlatN}};
  d["metrics"] = {{"gP", metric("P", {{c3, "0", "0"}, {"0", std::string("-(") + c3 + ")", "0"}, {"0", "0", "1"}}, 2, 1)},
                  {"hN", metric("N", {{c2, "0"}, {"0", std::string("-(") + c2 + ")"}}, 1, 1)}};
  d["structures"] = {{"P", flat_p()}, {"N", flat_n()}};
  d["map"] = {{"source", "P"}, {"target", "N"}, {"kind", "contact-hermitian"}, {"components", {"x", "y"}}};
  d["expect_fail"] = kCosymplecticFails;
  return d;
}

json constant_map() {
  json d;
  d["description"] = "constant map from M1 to the flat para-Kaehler plane";
  d["charts"] = {{"M1", kM1Chart}, {"N", kFlatN}};
  d["metrics"] = {{"g1", kG1}, {"hN", kHN}};
  d["structures"] = {{"M1", m1()}, {"N", flat_n()}};
  d["domains"] = {{"M1", kM1Box}};
  d["map"] = {{"source", "M1"}, {"target", "N"}, {"kind", "contact-hermitian"}, {"components", {"0.5", "-0.25"}}};
  return d;
}

json flat_square() {
  json d = flat_paracosymplectic();
  d["description"] = "the map (x,y,z) -> (x^2, y, z) of flat paracosymplectic space";
  d["domains"] = {{"P", {{-1.5, 1.5}, {-2.0, 2.0}, {-2.0, 2.0}}}};
  d["map"] = {{"source", "P"}, {"target", "P"}, {"components", {"x^2", "y", "z"}}};
  d["expect_fail"].push_back("map.harmonic");
  d["expect_fail"].push_back("map.parapluriharmonic");
  return d;
}

// a_x = -b_y and a_y = -b_x make f intertwine phi1 with J; f_* xi1 = 0 since
// nothing depends on z.
json sasakian_to_plane() {
  json d;
  d["description"] = "(phi,J)-paraholomorphic map (x,y,z) -> (x^2 + y^2, -2xy) from M1 to a flat para-Kaehler plane";
  d["charts"] = {{"M1", kM1Chart}, {"N", chart({"a", "b"}, {{-20.0, 20.0}, {-20.0, 20.0}})}};
  d["metrics"] = {{"g1", kG1}, {"hN", kHN}};
  d["structures"] = {{"M1", m1()}, {"N", flat_n()}};
  d["domains"] = {{"M1", kM1Box}};
  d["map"] = {{"source", "M1"},
              {"target", "N"},
              {"kind", "contact-hermitian"},
              {"components", {"x^2 + y^2", "-2*x*y"}}};
  // Harmonic, yet alpha(X, Y) != alpha(phi X, phi Y) for some coordinate pairs.
  d["expect_fail"] = {"map.parapluriharmonic"};
  return d;
}

BuiltinScenario make(std::string name, std::vector<std::string> aliases, const json& doc) {
  return {std::move(name), std::move(aliases), doc.at("description").get<std::string>(), doc.dump()};
}

}  // namespace

const std::vector<BuiltinScenario>& builtin_scenarios() {
  static const std::vector<BuiltinScenario> all{
      make("paper-4.1", {}, example_pair(true)),
      make("paper-4.1-as-printed", {}, example_pair(false)),
      make("flat-para-kahler", {}, flat_para_kahler()),
      make("flat-paracosymplectic", {}, flat_paracosymplectic()),
      make("projection-fixture", {"flat-paracosymplectic-to-parakahler"}, projection()),
      make("inclusion-fixture", {}, inclusion()),
      make("identity-M1", {}, identity_m1()),
      make("null-curve-M1", {}, null_curve()),
      make("shifted-map-fixture", {}, shifted_map()),
      make("curved-projection", {}, curved_projection()),
      make("constant-map-M1", {}, constant_map()),
      make("flat-square-map", {}, flat_square()),
      make("sasakian-to-plane", {}, sasakian_to_plane()),
  };
  return all;
}

}  // namespace parageo::detail
