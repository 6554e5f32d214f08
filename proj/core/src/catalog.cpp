#include "horoke/catalog.hpp"

#include <algorithm>
#include <map>

namespace horoke::catalog {

namespace {

// SL2: ambient basis (α/2); κ(α,α) = 2
constexpr const char* kP2 = R"json({
  "schema": 1,
  "id": "P2",
  "dim": 2,
  "provenance": "5.1 warm-up, k=1 colored embedding",
  "ambient": {"rank": 1},
  "killing": [["1/2"]],
  "roots_qu": [["2"]],
  "roots_s_plus": [],
  "spherical_basis": [["1"]],
  "lattice": [["1"]],
  "projection": [["1"]],
  "soliton_directions": [["1/2"]],
  "central_directions": [["1/2"]],
  "anticanonical": [["0"], ["3"]],
  "known": {"ke": "exists", "mabuchi": "exists"},
  "known_derived": {"soliton": "exists"}
})json";

constexpr const char* kP112 = R"json({
  "schema": 1,
  "id": "P112",
  "dim": 2,
  "provenance": "5.1 warm-up, k=2 colored embedding",
  "notes": "the solved affine density vanishes exactly at the far vertex (zero at -b/a = M), so the necessary positivity condition fails on the boundary",
  "ambient": {"rank": 1},
  "killing": [["1/2"]],
  "roots_qu": [["2"]],
  "roots_s_plus": [],
  "spherical_basis": [["1"]],
  "lattice": [["2"]],
  "projection": [["1"]],
  "soliton_directions": [["1/2"]],
  "central_directions": [["1/2"]],
  "anticanonical": [["0"], ["4"]],
  "known_derived": {"mabuchi": "boundary", "ke": "not_exists"}
})json";

constexpr const char* kP113 = R"json({
  "schema": 1,
  "id": "P113",
  "dim": 2,
  "provenance": "5.1 warm-up, k=3 colored embedding",
  "ambient": {"rank": 1},
  "killing": [["1/2"]],
  "roots_qu": [["2"]],
  "roots_s_plus": [],
  "spherical_basis": [["1"]],
  "lattice": [["3"]],
  "projection": [["1"]],
  "soliton_directions": [["1/2"]],
  "central_directions": [["1/2"]],
  "anticanonical": [["0"], ["5"]],
  "known": {"mabuchi": "not_exists"},
  "known_derived": {"ke": "not_exists"}
})json";

// SL2xSL2: ambient basis (α1/2, α2/2); κ(αi,αj) = 2δij
constexpr const char* kF3_331 = R"json({
  "schema": 1,
  "id": "F3_3.31",
  "dim": 3,
  "provenance": "5.2, P(O+O(1,1)) over P1xP1, moment polytope {t(a1+a2)/2, t in [1,3]}",
  "ambient": {"rank": 2},
  "killing": [["1/2", "0"], ["0", "1/2"]],
  "roots_qu": [["2", "0"], ["0", "2"]],
  "roots_s_plus": [],
  "spherical_basis": [["1", "1"]],
  "lattice": [["1", "1"]],
  "projection": [["1/2", "1/2"], ["1/2", "1/2"]],
  "soliton_directions": [["1/2", "1/2"]],
  "central_directions": [["1/2", "1/2"]],
  "anticanonical": [["1", "1"], ["3", "3"]],
  "known": {"ke": "not_exists", "mabuchi": "exists"},
  "known_derived": {"soliton": "exists", "rlb": "13/17"},
  "same_manifold": ["RA2"]
})json";

constexpr const char* kF3_233 = R"json({
  "schema": 1,
  "id": "F3_2.33",
  "dim": 3,
  "provenance": "5.2, blow-up of P3 along a line, moment polytope {(4-t)a1/2 + t a2/2, t in [0,3]}",
  "ambient": {"rank": 2},
  "killing": [["1/2", "0"], ["0", "1/2"]],
  "roots_qu": [["2", "0"], ["0", "2"]],
  "roots_s_plus": [],
  "spherical_basis": [["1", "-1"]],
  "lattice": [["1", "-1"]],
  "projection": [["1/2", "-1/2"], ["-1/2", "1/2"]],
  "soliton_directions": [["0", "1"]],
  "central_directions": [["0", "1"]],
  "anticanonical": [["4", "0"], ["1", "3"]],
  "known": {"mabuchi": "exists"},
  "known_derived": {"ke": "not_exists", "soliton": "exists"}
})json";

constexpr const char* kF3_325 = R"json({
  "schema": 1,
  "id": "F3_3.25",
  "dim": 3,
  "provenance": "5.2, blow-up of P3 along two disjoint lines, t in [1,3]",
  "ambient": {"rank": 2},
  "killing": [["1/2", "0"], ["0", "1/2"]],
  "roots_qu": [["2", "0"], ["0", "2"]],
  "roots_s_plus": [],
  "spherical_basis": [["1", "-1"]],
  "lattice": [["1", "-1"]],
  "projection": [["1/2", "-1/2"], ["-1/2", "1/2"]],
  "soliton_directions": [["0", "1"]],
  "central_directions": [["0", "1"]],
  "anticanonical": [["3", "1"], ["1", "3"]],
  "known": {"ke": "exists"},
  "known_derived": {"mabuchi": "exists"}
})json";

constexpr const char* kP3_A1A1 = R"json({
  "schema": 1,
  "id": "P3_A1A1",
  "dim": 3,
  "provenance": "5.2, P3 with the rank-one SL2xSL2 structure, t in [0,4]",
  "ambient": {"rank": 2},
  "killing": [["1/2", "0"], ["0", "1/2"]],
  "roots_qu": [["2", "0"], ["0", "2"]],
  "roots_s_plus": [],
  "spherical_basis": [["1", "-1"]],
  "lattice": [["1", "-1"]],
  "projection": [["1/2", "-1/2"], ["-1/2", "1/2"]],
  "soliton_directions": [["0", "1"]],
  "central_directions": [["0", "1"]],
  "anticanonical": [["4", "0"], ["0", "4"]],
  "known_derived": {"ke": "exists"},
  "same_manifold": ["P3_A2", "RC2"]
})json";

constexpr const char* kF3_234 = R"json({
  "schema": 1,
  "id": "F3_2.34",
  "dim": 3,
  "provenance": "5.2, P2xP1 as the colored product embedding, moment polytope {t a1/2 + a2, t in [0,3]}",
  "notes": "the a2-offset convention of the product-case polytopes differs from the other families; transcribed verbatim",
  "ambient": {"rank": 2},
  "killing": [["1/2", "0"], ["0", "1/2"]],
  "roots_qu": [["2", "0"], ["0", "2"]],
  "roots_s_plus": [],
  "spherical_basis": [["1", "0"]],
  "lattice": [["1", "0"]],
  "projection": [["1", "0"], ["0", "0"]],
  "soliton_directions": [["1", "0"]],
  "central_directions": [["1", "0"]],
  "anticanonical": [["0", "2"], ["3", "2"]],
  "known_derived": {"ke": "exists"},
  "same_manifold": ["RB1"]
})json";

constexpr const char* kF3_328 = R"json({
  "schema": 1,
  "id": "F3_3.28",
  "dim": 3,
  "provenance": "5.2, F1xP1 as the toroidal product embedding, moment polytope {t a1/2 + a2, t in [1,3]}",
  "notes": "the a2-offset convention of the product-case polytopes differs from the other families; transcribed verbatim",
  "ambient": {"rank": 2},
  "killing": [["1/2", "0"], ["0", "1/2"]],
  "roots_qu": [["2", "0"], ["0", "2"]],
  "roots_s_plus": [],
  "spherical_basis": [["1", "0"]],
  "lattice": [["1", "0"]],
  "projection": [["1", "0"], ["0", "0"]],
  "soliton_directions": [["1", "0"]],
  "central_directions": [["1", "0"]],
  "anticanonical": [["1", "2"], ["3", "2"]],
  "known_derived": {"ke": "not_exists", "mabuchi": "exists", "soliton": "exists"}
})json";

// SL3: ambient basis (w1, w2) with w1 = (2a1+a2)/3, w2 = (a1+2a2)/3
constexpr const char* kP3_A2 = R"json({
  "schema": 1,
  "id": "P3_A2",
  "dim": 3,
  "provenance": "5.3, P3 with the rank-one SL3 structure, moment polytope {t w1, t in [0,4]}",
  "ambient": {"rank": 2},
  "killing": [["2/3", "1/3"], ["1/3", "2/3"]],
  "roots_qu": [["2", "-1"], ["1", "1"]],
  "roots_s_plus": [],
  "spherical_basis": [["1", "0"]],
  "lattice": [["1", "0"]],
  "projection": [["1", "1/2"], ["0", "0"]],
  "soliton_directions": [["1", "0"]],
  "central_directions": [["1", "0"]],
  "anticanonical": [["0", "0"], ["4", "0"]],
  "known_derived": {"ke": "exists"},
  "same_manifold": ["P3_A1A1", "RC2"]
})json";

constexpr const char* kF3_235 = R"json({
  "schema": 1,
  "id": "F3_2.35",
  "dim": 3,
  "provenance": "5.3, P(O+O(1)) over P2, moment polytope {t w1, t in [2,4]}",
  "ambient": {"rank": 2},
  "killing": [["2/3", "1/3"], ["1/3", "2/3"]],
  "roots_qu": [["2", "-1"], ["1", "1"]],
  "roots_s_plus": [],
  "spherical_basis": [["1", "0"]],
  "lattice": [["1", "0"]],
  "projection": [["1", "1/2"], ["0", "0"]],
  "soliton_directions": [["1", "0"]],
  "central_directions": [["1", "0"]],
  "anticanonical": [["2", "0"], ["4", "0"]],
  "known_derived": {"ke": "not_exists", "mabuchi": "exists", "soliton": "exists"},
  "same_manifold": ["RC3"]
})json";

constexpr const char* kF3_236 = R"json({
  "schema": 1,
  "id": "F3_2.36",
  "dim": 3,
  "provenance": "5.3, P(O+O(2)) over P2, moment polytope {t w1, t in [1,5]}",
  "ambient": {"rank": 2},
  "killing": [["2/3", "1/3"], ["1/3", "2/3"]],
  "roots_qu": [["2", "-1"], ["1", "1"]],
  "roots_s_plus": [],
  "spherical_basis": [["2", "0"]],
  "lattice": [["2", "0"]],
  "projection": [["1", "1/2"], ["0", "0"]],
  "soliton_directions": [["1", "0"]],
  "central_directions": [["1", "0"]],
  "anticanonical": [["1", "0"], ["5", "0"]],
  "known": {"mabuchi": "not_exists", "power_mabuchi_2": "exists"},
  "known_derived": {"ke": "not_exists", "soliton": "exists", "rlb": "31/43"},
  "same_manifold": ["RB2"]
})json";

// SL2xC* symmetric threefolds: ambient basis (f, α) with f ⟂ α, κ(α,α) = 2,
// κ(f,f) = 1; points written x f + y α; chamber wall y = 0; 2ρ_H = α
#define HOROKE_R_COMMON                                        \
  "  \"ambient\": {\"rank\": 2},\n"                            \
  "  \"killing\": [[\"1\", \"0\"], [\"0\", \"2\"]],\n"         \
  "  \"roots_qu\": [],\n"                                      \
  "  \"roots_s_plus\": [[\"0\", \"1\"]],\n"                    \
  "  \"restricted_roots\": [{\"root\": [\"0\", \"2\"], \"mult\": 1}],\n" \
  "  \"spherical_basis\": [[\"1\", \"0\"], [\"0\", \"1\"]],\n" \
  "  \"projection\": [[\"1\", \"0\"], [\"0\", \"1\"]],\n"      \
  "  \"soliton_directions\": [[\"1\", \"0\"]],\n"              \
  "  \"central_directions\": [[\"1\", \"0\"]],\n"

const std::string kRA1 = std::string(R"json({
  "schema": 1,
  "id": "RA1",
  "dim": 3,
  "provenance": "5.4 Fig. 1, (P1)^3 = P1 x (wonderful SL2/SO2), identifier F3_3.27",
)json") + HOROKE_R_COMMON + R"json(  "lattice": [["1", "0"], ["0", "1"]],
  "anticanonical": [["-1", "0"], ["-1", "2"], ["1", "2"], ["1", "0"]],
  "known_derived": {"ke": "exists", "mabuchi": "exists"}
})json";

const std::string kRA2 = std::string(R"json({
  "schema": 1,
  "id": "RA2",
  "dim": 3,
  "provenance": "5.4 Fig. 1, identifier F3_3.31 (symmetric structure)",
)json") + HOROKE_R_COMMON + R"json(  "lattice": [["1", "0"], ["0", "1"]],
  "anticanonical": [["-1", "0"], ["-1", "3"], ["1", "1"], ["1", "0"]],
  "known_derived": {"ke": "not_exists", "mabuchi": "exists"},
  "same_manifold": ["F3_3.31"]
})json";

const std::string kRA3 = std::string(R"json({
  "schema": 1,
  "id": "RA3",
  "dim": 3,
  "provenance": "5.4 Fig. 1 and the worked verification, identifier F3_4.8",
)json") + HOROKE_R_COMMON + R"json(  "lattice": [["1", "0"], ["0", "1"]],
  "anticanonical": [["-1", "0"], ["-1", "2"], ["0", "2"], ["1", "1"], ["1", "0"]],
  "known": {"mabuchi": "exists"},
  "known_derived": {"ke": "not_exists"}
})json";

const std::string kRB1 = std::string(R"json({
  "schema": 1,
  "id": "RB1",
  "dim": 3,
  "provenance": "5.4 Fig. 2, P2xP1 = P1 x (wonderful SL2/N(SO2)), identifier F3_2.34",
)json") + HOROKE_R_COMMON + R"json(  "lattice": [["1", "0"], ["0", "2"]],
  "anticanonical": [["-1", "0"], ["-1", "3"], ["1", "3"], ["1", "0"]],
  "known_derived": {"ke": "exists"},
  "same_manifold": ["F3_2.34"]
})json";

const std::string kRB2 = std::string(R"json({
  "schema": 1,
  "id": "RB2",
  "dim": 3,
  "provenance": "5.4 Fig. 2, identifier F3_2.36 (symmetric structure)",
)json") + HOROKE_R_COMMON + R"json(  "lattice": [["1", "0"], ["0", "2"]],
  "anticanonical": [["-1", "0"], ["-1", "5"], ["1", "1"], ["1", "0"]],
  "known_derived": {"ke": "not_exists", "mabuchi": "not_exists"},
  "same_manifold": ["F3_2.36"]
})json";

const std::string kRB3 = std::string(R"json({
  "schema": 1,
  "id": "RB3",
  "dim": 3,
  "provenance": "5.4, 'similar verifications', identifier F3_3.22",
)json") + HOROKE_R_COMMON + R"json(  "lattice": [["1", "0"], ["0", "2"]],
  "anticanonical": [["-1", "0"], ["-1", "3"], ["0", "3"], ["1", "1"], ["1", "0"]],
  "known": {"mabuchi": "exists"},
  "known_derived": {"ke": "not_exists"}
})json";

const std::string kRC1 = std::string(R"json({
  "schema": 1,
  "id": "RC1",
  "dim": 3,
  "provenance": "5.4 Fig. 3, quadric Q3",
  "notes": "figure-grid coordinates (u,v) map to these (f,a)-coordinates by (x,y) = (-u-v, u-v); the lattice is the index-two sublattice x+y even",
)json") + HOROKE_R_COMMON + R"json(  "lattice": [["-1", "1"], ["-1", "-1"]],
  "anticanonical": [["-3", "0"], ["0", "3"], ["3", "0"]],
  "known_derived": {"ke": "exists"}
})json";

const std::string kRC2 = std::string(R"json({
  "schema": 1,
  "id": "RC2",
  "dim": 3,
  "provenance": "5.4 Fig. 3, P3 (symmetric structure)",
)json") + HOROKE_R_COMMON + R"json(  "lattice": [["-1", "1"], ["-1", "-1"]],
  "anticanonical": [["-3", "0"], ["1", "4"], ["1", "0"]],
  "known_derived": {"ke": "exists"},
  "same_manifold": ["P3_A1A1", "P3_A2"]
})json";

const std::string kRC3 = std::string(R"json({
  "schema": 1,
  "id": "RC3",
  "dim": 3,
  "provenance": "5.4 Fig. 3, identifier F3_2.35 (symmetric structure)",
)json") + HOROKE_R_COMMON + R"json(  "lattice": [["-1", "1"], ["-1", "-1"]],
  "anticanonical": [["-1", "0"], ["-1", "2"], ["1", "4"], ["1", "0"]],
  "known_derived": {"ke": "not_exists", "mabuchi": "exists"},
  "same_manifold": ["F3_2.35"]
})json";

const std::string kRC4 = std::string(R"json({
  "schema": 1,
  "id": "RC4",
  "dim": 3,
  "provenance": "5.4, blow-up of Q3 along the 1-dimensional quadric, identifier F3_2.29",
)json") + HOROKE_R_COMMON + R"json(  "lattice": [["-1", "1"], ["-1", "-1"]],
  "anticanonical": [["-3", "0"], ["-1", "2"], ["1", "2"], ["3", "0"]],
  "known": {"ke": "exists"}
})json";

const std::string kRC5 = std::string(R"json({
  "schema": 1,
  "id": "RC5",
  "dim": 3,
  "provenance": "5.4, blow-up of Q3 at one fixed point, identifier F3_2.30",
)json") + HOROKE_R_COMMON + R"json(  "lattice": [["-1", "1"], ["-1", "-1"]],
  "anticanonical": [["-3", "0"], ["0", "3"], ["1", "2"], ["1", "0"]],
  "known": {"mabuchi": "not_exists"},
  "known_derived": {"ke": "not_exists"}
})json";

const std::string kRC6 = std::string(R"json({
  "schema": 1,
  "id": "RC6",
  "dim": 3,
  "provenance": "5.4, blow-up of Q3 at both fixed points, identifier F3_3.19",
)json") + HOROKE_R_COMMON + R"json(  "lattice": [["-1", "1"], ["-1", "-1"]],
  "anticanonical": [["-1", "0"], ["-1", "2"], ["0", "3"], ["1", "2"], ["1", "0"]],
  "known": {"ke": "exists"}
})json";

// SL2xSL3 fourfolds: ambient basis (w1, w2, w3)
constexpr const char* kP4a = R"json({
  "schema": 1,
  "id": "P4_O(1,-1)",
  "dim": 4,
  "provenance": "5.5, P(O+O(1,-1)) over P1xP2, anticanonical moment polytope D(1,3,5)",
  "notes": "the printed quartic for the decomposition s1=1/4, s2=3/2 does not follow from the printed barycenter formula; the exact equation is 2560s^4-26560s^3+98736s^2-152868s+78751 with no admissible root, while e.g. s1=1/8, s2=11/8 admits two",
  "ambient": {"rank": 3},
  "killing": [["1/2", "0", "0"], ["0", "2/3", "1/3"], ["0", "1/3", "2/3"]],
  "roots_qu": [["2", "0", "0"], ["0", "2", "-1"], ["0", "1", "1"]],
  "roots_s_plus": [],
  "spherical_basis": [["-1", "1", "0"]],
  "lattice": [["-1", "1", "0"]],
  "projection": [["3/7", "-4/7", "-2/7"], ["-3/7", "4/7", "2/7"], ["0", "0", "0"]],
  "soliton_directions": [["1", "0", "0"]],
  "central_directions": [["1", "0", "0"]],
  "anticanonical": [["1", "4", "0"], ["3", "2", "0"]],
  "known": {"ke": "not_exists"},
  "known_derived": {"coupled_pair": "exists", "soliton": "exists"},
  "family": {
    "params": ["s1", "s2", "s3"],
    "defaults": {"s1": "1/4", "s2": "3/2"},
    "free": "s3",
    "classes": [
      {"v0": {"const": ["0", "0", "0"], "s1": ["1", "-1", "0"], "s3": ["0", "1", "0"]},
       "v1": {"const": ["0", "0", "0"], "s2": ["1", "-1", "0"], "s3": ["0", "1", "0"]}},
      {"v0": {"const": ["1", "4", "0"], "s1": ["-1", "1", "0"], "s3": ["0", "-1", "0"]},
       "v1": {"const": ["3", "2", "0"], "s2": ["-1", "1", "0"], "s3": ["0", "-1", "0"]}}
    ],
    "window": [
      {"const": "0", "s1": "1"},
      {"const": "1", "s1": "-1"},
      {"const": "0", "s1": "-1", "s2": "1"},
      {"const": "2", "s1": "1", "s2": "-1"},
      {"const": "0", "s2": "-1", "s3": "1"},
      {"const": "2", "s2": "1", "s3": "-1"}
    ]
  }
})json";

constexpr const char* kP4b = R"json({
  "schema": 1,
  "id": "P4_O(-1,2)",
  "dim": 4,
  "provenance": "5.5, P(O+O(-1,2)) over P1xP2, anticanonical moment polytope D(1,3,7)",
  "ambient": {"rank": 3},
  "killing": [["1/2", "0", "0"], ["0", "2/3", "1/3"], ["0", "1/3", "2/3"]],
  "roots_qu": [["2", "0", "0"], ["0", "2", "-1"], ["0", "1", "1"]],
  "roots_s_plus": [],
  "spherical_basis": [["-1", "2", "0"]],
  "lattice": [["-1", "2", "0"]],
  "projection": [["3/19", "-8/19", "-4/19"], ["-6/19", "16/19", "8/19"], ["0", "0", "0"]],
  "soliton_directions": [["1", "0", "0"]],
  "central_directions": [["1", "0", "0"]],
  "anticanonical": [["1", "5", "0"], ["3", "1", "0"]],
  "known": {"ke": "not_exists", "coupled_pair": "exists"},
  "known_derived": {"soliton": "exists"},
  "family": {
    "params": ["s1", "s2", "s3"],
    "defaults": {"s1": "1/2", "s2": "3/2"},
    "free": "s3",
    "classes": [
      {"v0": {"const": ["0", "0", "0"], "s1": ["1", "-2", "0"], "s3": ["0", "1", "0"]},
       "v1": {"const": ["0", "0", "0"], "s2": ["1", "-2", "0"], "s3": ["0", "1", "0"]}},
      {"v0": {"const": ["1", "5", "0"], "s1": ["-1", "2", "0"], "s3": ["0", "-1", "0"]},
       "v1": {"const": ["3", "1", "0"], "s2": ["-1", "2", "0"], "s3": ["0", "-1", "0"]}}
    ],
    "window": [
      {"const": "0", "s1": "1"},
      {"const": "1", "s1": "-1"},
      {"const": "0", "s1": "-1", "s2": "1"},
      {"const": "2", "s1": "1", "s2": "-1"},
      {"const": "0", "s2": "-1", "s3": "1"},
      {"const": "4", "s2": "1", "s3": "-1"}
    ]
  }
})json";

struct CatalogStore {
  std::map<std::string, std::string> raw;
  std::map<std::string, DatumFile> parsed;
  std::map<std::string, std::string> aliases;
  std::vector<std::string> ids;

  CatalogStore() {
    const std::pair<const char*, std::string> entries[] = {
        {"P2", kP2},
        {"P112", kP112},
        {"P113", kP113},
        {"P3_A1A1", kP3_A1A1},
        {"P3_A2", kP3_A2},
        {"F3_2.33", kF3_233},
        {"F3_2.34", kF3_234},
        {"F3_2.35", kF3_235},
        {"F3_2.36", kF3_236},
        {"F3_3.25", kF3_325},
        {"F3_3.28", kF3_328},
        {"F3_3.31", kF3_331},
        {"RA1", kRA1},
        {"RA2", kRA2},
        {"RA3", kRA3},
        {"RB1", kRB1},
        {"RB2", kRB2},
        {"RB3", kRB3},
        {"RC1", kRC1},
        {"RC2", kRC2},
        {"RC3", kRC3},
        {"RC4", kRC4},
        {"RC5", kRC5},
        {"RC6", kRC6},
        {"P4_O(1,-1)", kP4a},
        {"P4_O(-1,2)", kP4b},
    };
    for (const auto& [id, text] : entries) {
      raw[id] = text;
      parsed[id] = parse_datum(text);
      ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    // threefold-table identifiers of the symmetric entries
    aliases = {{"F3_3.27", "RA1"}, {"F3_4.8", "RA3"}, {"F3_3.22", "RB3"}, {"Q3", "RC1"},
               {"F3_2.29", "RC4"}, {"F3_2.30", "RC5"}, {"F3_3.19", "RC6"}};
  }
};

const CatalogStore& store() {
  static CatalogStore s;
  return s;
}

}  // namespace

std::vector<std::string> list() { return store().ids; }

bool has(const std::string& id) {
  return store().parsed.count(id) > 0 || store().aliases.count(id) > 0;
}

const DatumFile& get(const std::string& id) {
  const auto& s = store();
  auto it = s.parsed.find(id);
  if (it != s.parsed.end()) return it->second;
  auto al = s.aliases.find(id);
  if (al != s.aliases.end()) return s.parsed.at(al->second);
  throw UnknownId(id);
}

const std::string& raw(const std::string& id) {
  const auto& s = store();
  auto it = s.raw.find(id);
  if (it != s.raw.end()) return it->second;
  auto al = s.aliases.find(id);
  if (al != s.aliases.end()) return s.raw.at(al->second);
  throw UnknownId(id);
}

}  // namespace horoke::catalog
