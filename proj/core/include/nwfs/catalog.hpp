#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nwfs/arrow.hpp"

namespace nwfs {

using CatalogPayload = std::variant<FinCategory, GeneratingSet, Presheaf, ArrowObj>;

struct CatalogEntry {
  std::string key;
  CatalogPayload payload;
  std::string description;
};

/// Known keys, canonical spelling. "<=" is accepted wherever a key contains
/// "≤".
std::vector<std::string> catalog_keys();

/// Throws NotFound listing the known keys.
CatalogEntry catalog_get(const std::string& key);

/// Canonical spelling of a key, or the input unchanged if unknown.
std::string canonical_key(const std::string& key);

/// The full subcategory of the simplex category on [0] .. [n]: every
/// monotone map, composed as functions. Morphisms of delta≤1 are named
/// id0, id1, d0, d1, s0, d0s0, d1s0; otherwise "idk" or "m>k:images".
FinCategory truncated_simplex(std::size_t n);

/// Monotone map [dom] -> [cod] underlying a morphism of truncated_simplex.
std::vector<std::size_t> simplex_images(const FinCategory& delta, MorphismIndex m);

/// Delta[n] = hom(-, [n]); elements at [a] are the monotone maps [a] -> [n]
/// in lexicographic order.
Presheaf representable(const FinCategory& delta, std::size_t n);

/// Lambda^k[n] -> Delta[n]: the simplices whose image together with k
/// misses some vertex.
ArrowObj horn_inclusion(const FinCategory& delta, std::size_t n, std::size_t k);

/// Reflexive graph on delta≤1 with `vertices` vertices and the given
/// non-degenerate edges (source, target). Edges at [1] are the degenerate
/// loops in vertex order followed by the listed edges.
Presheaf reflexive_graph(std::size_t vertices,
                         const std::vector<std::pair<std::size_t, std::size_t>>& edges);

}  // namespace nwfs
