// JSON encodings of the library's values. Every from_json inverts the
// matching to_json; malformed input raises ParseError.
#pragma once

#include <string>

#include "boolpow/automorphism.hpp"
#include "boolpow/factorization.hpp"
#include "boolpow/fraisse.hpp"
#include "json.hpp"

namespace boolpow::io {

using Json = nlohmann::ordered_json;

// {"carrier": n, "ops": [{"name", "arity", "table"}]}
Json to_json(const FiniteAlgebra& a);
FiniteAlgebra algebra_from_json(const Json& j);
// A builtin name or an algebra object.
FiniteAlgebra load_algebra(const Json& j);

Json to_json(const Point& p);  // {"pre", "per"}
Point point_from_json(const Json& j);

Json to_json(const PointContext& ctx);  // {"branches": [{"root", "spine"}]}
PointContext context_from_json(const Json& j);

Json to_json(const Clopen& c);  // prefix words
Clopen clopen_from_json(const Json& j);

// {"threshold", "exceptional": words, "tails": [{"branch", "word"}]}
Json to_json(const TailClopen& c);
TailClopen tail_clopen_from_json(const PointContext& ctx, const Json& j);

// {"word"} or {"branch", "start", "step", "suffix"}
Json to_json(const Family& f);
Family family_from_json(const Json& j);

// {"pieces": [{"src": family, "dst": family}]}
Json to_json(const EPHomeo& h);
EPHomeo homeo_from_json(const PointContext& ctx, const Json& j);

// {"algebra", "points", "filters"}
Json to_json(const PowerContext& ctx);
PowerContext power_context_from_json(const Json& j);

Json to_json(const PowerElement& f);  // {"cells": [{"prefix", "label"}]}
PowerElement element_from_json(const PowerContext& ctx, const Json& j);

// {"homeo", "labeling": {"threshold", "cells": [{"region", "aut"}], "tails": [[perm]]}}
Json to_json(const PowerAutomorphism& phi);
PowerAutomorphism automorphism_from_json(const PowerContext& ctx, const Json& j);

Json to_json(const Coord& c);  // {"aut", "src"} or {"idem"}
Coord coord_from_json(const Json& j);
Json to_json(const PowerEmbedding& e);  // {"u", "v", "coords"}
PowerEmbedding embedding_from_json(const FiniteAlgebra& a, const Json& j);

// {"u", "pieces": [{"region": words, "coord"}]}, over a given power context
Json to_json(const BPEmbedding& e);
BPEmbedding bp_embedding_from_json(const PowerContext& ctx, const Json& j);

Json to_json(const GoodPartition& p);  // {"points", "blocks"}
GoodPartition partition_from_json(const Json& j);

Json read_file(const std::string& path);

}  // namespace boolpow::io
