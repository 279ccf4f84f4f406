#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "criteria.hpp"
#include "error.hpp"
#include "fold.hpp"
#include "newton.hpp"
#include "search.hpp"

namespace milnor::report {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "milnor-atlas/1";

Json complex_json(Complex c);
Json vector_json(std::span<const Complex> v);
Json polynomial_json(const MixedPolynomial& f);
Json weight_json(const WeightType& wt);
Json dependence_json(const DependenceReport& d);

// Variable count, terms, detected radial/polar weight lattices, common
// strictly positive weights and the Euler residual for holomorphic
// weighted-homogeneous input.
Json analyze(const MixedPolynomial& f, std::uint64_t seed = 1);

struct NewtonQuery {
  std::optional<std::vector<std::int64_t>> weight;
  WitnessOptions witness;
};
Json newton(const MixedPolynomial& f, const NewtonQuery& query = {});

Json singular(const MfpmPair& pair, double radius, const SearchConfig& config);

struct ClassifyOptions {
  FoldOptions fold;
  bool check_goodness = true;
  std::uint64_t seed = 1;
};
// Full verdict chain. Hypothesis failures come back as an "error" member
// alongside whatever could be computed; `ok` tells them apart.
Json classify(const MfpmPair& pair, const SpherePoint& p, const ClassifyOptions& options = {});

Json error(const Error& e);
Json error(const std::string& code, const std::string& reason, const std::string& message);

// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);

}  // namespace milnor::report
