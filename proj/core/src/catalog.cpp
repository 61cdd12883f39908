#include "nwfs/catalog.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>

#include "nwfs/colimit.hpp"
#include "nwfs/error.hpp"

namespace nwfs {

namespace {

using Images = std::vector<std::size_t>;

struct SimplexMorphism {
  std::size_t dom;
  std::size_t cod;
  Images images;
  std::string name;
};

// Non-decreasing sequences of length len with values <= top, lexicographic.
std::vector<Images> monotone_maps(std::size_t len, std::size_t top) {
  std::vector<Images> out;
  Images cur(len, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t lo) {
    if (pos == len) {
      out.push_back(cur);
      return;
    }
    for (std::size_t v = lo; v <= top; ++v) {
      cur[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
  return out;
}

std::string image_string(const Images& im) {
  std::string s;
  for (auto v : im) s += std::to_string(v);
  return s;
}

std::vector<SimplexMorphism> simplex_morphisms(std::size_t n) {
  if (n == 1) {
    return {{0, 0, {0}, "id0"},    {1, 1, {0, 1}, "id1"}, {0, 1, {1}, "d0"},
            {0, 1, {0}, "d1"},     {1, 0, {0, 0}, "s0"},  {1, 1, {1, 1}, "d0s0"},
            {1, 1, {0, 0}, "d1s0"}};
  }
  std::vector<SimplexMorphism> out;
  for (std::size_t a = 0; a <= n; ++a) {
    Images id(a + 1);
    for (std::size_t i = 0; i <= a; ++i) id[i] = i;
    out.push_back({a, a, id, "id" + std::to_string(a)});
  }
  for (std::size_t a = 0; a <= n; ++a) {
    for (std::size_t b = 0; b <= n; ++b) {
      for (auto& im : monotone_maps(a + 1, b)) {
        bool identity = a == b;
        for (std::size_t i = 0; identity && i <= a; ++i) identity = im[i] == i;
        if (identity) continue;
        out.push_back({a, b, im, std::to_string(a) + ">" + std::to_string(b) + ":" + image_string(im)});
      }
    }
  }
  return out;
}

struct SimplexData {
  FinCategory category;
  std::vector<Images> images;
};

SimplexData build_simplex(std::size_t n) {
  const auto morphisms = simplex_morphisms(n);
  std::vector<std::string> objects;
  for (std::size_t a = 0; a <= n; ++a) objects.push_back(std::to_string(a));
  std::vector<MorphismInfo> infos;
  std::map<std::tuple<std::size_t, std::size_t, Images>, MorphismIndex> lookup;
  std::vector<MorphismIndex> identities(n + 1);
  for (MorphismIndex m = 0; m < morphisms.size(); ++m) {
    const auto& sm = morphisms[m];
    infos.push_back(MorphismInfo{sm.name, sm.dom, sm.cod});
    lookup[{sm.dom, sm.cod, sm.images}] = m;
    if (sm.dom == sm.cod && sm.name == "id" + std::to_string(sm.dom)) identities[sm.dom] = m;
  }
  const std::size_t count = morphisms.size();
  std::vector<std::optional<MorphismIndex>> compose(count * count);
  for (MorphismIndex g = 0; g < count; ++g) {
    for (MorphismIndex f = 0; f < count; ++f) {
      if (morphisms[f].cod != morphisms[g].dom) continue;
      Images im(morphisms[f].images.size());
      for (std::size_t i = 0; i < im.size(); ++i) im[i] = morphisms[g].images[morphisms[f].images[i]];
      compose[g * count + f] = lookup.at({morphisms[f].dom, morphisms[g].cod, im});
    }
  }
  std::vector<Images> images;
  for (const auto& sm : morphisms) images.push_back(sm.images);
  return SimplexData{FinCategory(objects, infos, identities, compose), images};
}

const SimplexData& simplex_data(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, SimplexData> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_simplex(n)).first;
  return it->second;
}

std::size_t simplex_dimension(const FinCategory& delta) {
  if (delta.object_count() == 0) throw IncompatibleInputs("not a truncated simplex category");
  const std::size_t n = delta.object_count() - 1;
  if (!(simplex_data(n).category == delta)) {
    throw IncompatibleInputs("not a truncated simplex category");
  }
  return n;
}

struct KeyInfo {
  std::string key;
  std::string description;
};

const std::vector<KeyInfo>& key_table() {
  static const std::vector<KeyInfo> kKeys{
      {"terminal", "one object, one morphism; presheaves are finite sets"},
      {"delta≤1", "reflexive graphs: objects 0, 1; d0, d1, s0 and their composites"},
      {"delta≤2", "simplex category truncated at dimension 2"},
      {"point", "generating set {empty -> 1} over terminal"},
      {"codiagonal", "generating set {1 + 1 -> 1} over terminal"},
      {"horns≤1", "horn inclusions Lambda^k[1] -> Delta[1] over delta≤1"},
      {"horns≤2", "horn inclusions Lambda^k[n] -> Delta[n], n = 1, 2, over delta≤2"},
      {"bang", "the arrow empty -> 1 over terminal"},
      {"nabla", "the arrow 1 + 1 -> 1 over terminal"},
      {"Delta[0]", "the representable at [0] over delta≤1"},
      {"Delta[1]", "the representable at [1] over delta≤1"},
      {"Delta[2]", "the representable at [2] over delta≤2"},
  };
  return kKeys;
}

ArrowObj bang() {
  const FinCategory t = FinCategory::terminal();
  return ArrowObj{initial_map(Presheaf::terminal(t)), "bang"};
}

ArrowObj nabla() {
  const FinCategory t = FinCategory::terminal();
  const Presheaf one = Presheaf::terminal(t);
  const Cocone two = coproduct(t, {one, one});
  return ArrowObj{terminal_map(two.apex), "nabla"};
}

GeneratingSet horns(std::size_t n) {
  const FinCategory delta = truncated_simplex(n);
  GeneratingSet gens{delta, {}};
  for (std::size_t d = 1; d <= n; ++d) {
    for (std::size_t k = 0; k <= d; ++k) gens.members.push_back(horn_inclusion(delta, d, k));
  }
  return gens;
}

}  // namespace

FinCategory truncated_simplex(std::size_t n) { return simplex_data(n).category; }

std::vector<std::size_t> simplex_images(const FinCategory& delta, MorphismIndex m) {
  return simplex_data(simplex_dimension(delta)).images.at(m);
}

Presheaf representable(const FinCategory& delta, std::size_t n) {
  const std::size_t top = simplex_dimension(delta);
  if (n > top) throw IncompatibleInputs("representable: dimension beyond the truncation");
  const auto& data = simplex_data(top);
  std::vector<std::vector<Images>> hom(top + 1);
  std::vector<std::map<Images, Element>> index(top + 1);
  std::vector<std::size_t> sizes(top + 1);
  for (std::size_t a = 0; a <= top; ++a) {
    hom[a] = monotone_maps(a + 1, n);
    for (Element e = 0; e < hom[a].size(); ++e) index[a][hom[a][e]] = e;
    sizes[a] = hom[a].size();
  }
  std::vector<std::vector<Element>> actions(delta.morphism_count());
  for (MorphismIndex m = 0; m < delta.morphism_count(); ++m) {
    const auto& info = delta.morphism(m);
    const Images& mi = data.images[m];
    for (const Images& phi : hom[info.cod]) {
      Images comp(mi.size());
      for (std::size_t i = 0; i < mi.size(); ++i) comp[i] = phi[mi[i]];
      actions[m].push_back(index[info.dom].at(comp));
    }
  }
  return Presheaf(delta, sizes, std::move(actions));
}

ArrowObj horn_inclusion(const FinCategory& delta, std::size_t n, std::size_t k) {
  if (k > n) throw IncompatibleInputs("horn_inclusion: k > n");
  const std::size_t top = simplex_dimension(delta);
  const Presheaf full = representable(delta, n);
  std::vector<std::vector<Element>> keep(top + 1);  // horn id -> simplex id
  std::vector<std::vector<std::optional<Element>>> rename(top + 1);
  for (std::size_t a = 0; a <= top; ++a) {
    const auto maps = monotone_maps(a + 1, n);
    rename[a].resize(maps.size());
    for (Element e = 0; e < maps.size(); ++e) {
      std::vector<char> hit(n + 1, 0);
      hit[k] = 1;
      for (auto v : maps[e]) hit[v] = 1;
      bool misses = false;
      for (auto h : hit) misses |= h == 0;
      if (misses) {
        rename[a][e] = keep[a].size();
        keep[a].push_back(e);
      }
    }
  }
  std::vector<std::size_t> sizes(top + 1);
  for (std::size_t a = 0; a <= top; ++a) sizes[a] = keep[a].size();
  std::vector<std::vector<Element>> actions(delta.morphism_count());
  for (MorphismIndex m = 0; m < delta.morphism_count(); ++m) {
    const auto& info = delta.morphism(m);
    for (Element e : keep[info.cod]) actions[m].push_back(*rename[info.dom][full.act(m, e)]);
  }
  Presheaf horn(delta, sizes, std::move(actions));
  PresheafMap inclusion(horn, full, std::move(keep));
  return ArrowObj{inclusion, "Lambda^" + std::to_string(k) + "[" + std::to_string(n) + "]->Delta[" +
                                 std::to_string(n) + "]"};
}

Presheaf reflexive_graph(std::size_t vertices,
                         const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  const FinCategory delta = truncated_simplex(1);
  const auto& data = simplex_data(1);
  // An element of X[1] is (source, target); the first `vertices` are loops.
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  for (std::size_t v = 0; v < vertices; ++v) ends.emplace_back(v, v);
  for (const auto& e : edges) {
    if (e.first >= vertices || e.second >= vertices) {
      throw IncompatibleInputs("reflexive_graph: edge endpoint out of range");
    }
    ends.push_back(e);
  }
  std::vector<std::vector<Element>> actions(delta.morphism_count());
  for (MorphismIndex m = 0; m < delta.morphism_count(); ++m) {
    const auto& info = delta.morphism(m);
    const Images& im = data.images[m];
    if (info.cod == 0) {
      for (std::size_t v = 0; v < vertices; ++v) actions[m].push_back(v);  // to v or its loop
      continue;
    }
    for (Element e = 0; e < ends.size(); ++e) {
      const std::size_t at[2] = {ends[e].first, ends[e].second};
      if (info.dom == 0) {
        actions[m].push_back(at[im[0]]);
      } else if (im[0] == 0 && im[1] == 1) {
        actions[m].push_back(e);
      } else {
        actions[m].push_back(at[im[0]]);  // degenerate loop at that endpoint
      }
    }
  }
  return Presheaf(delta, {vertices, ends.size()}, std::move(actions));
}

std::vector<std::string> catalog_keys() {
  std::vector<std::string> out;
  for (const auto& k : key_table()) out.push_back(k.key);
  return out;
}

std::string canonical_key(const std::string& key) {
  std::string out = key;
  const std::string ascii = "<=";
  const std::string unicode = "≤";
  for (std::size_t pos = out.find(ascii); pos != std::string::npos; pos = out.find(ascii, pos)) {
    out.replace(pos, ascii.size(), unicode);
    pos += unicode.size();
  }
  return out;
}

CatalogEntry catalog_get(const std::string& raw) {
  const std::string key = canonical_key(raw);
  std::string description;
  for (const auto& k : key_table()) {
    if (k.key == key) description = k.description;
  }
  if (key == "terminal") return {key, FinCategory::terminal(), description};
  if (key == "delta≤1") return {key, truncated_simplex(1), description};
  if (key == "delta≤2") return {key, truncated_simplex(2), description};
  if (key == "point") return {key, GeneratingSet{FinCategory::terminal(), {bang()}}, description};
  if (key == "codiagonal") return {key, GeneratingSet{FinCategory::terminal(), {nabla()}}, description};
  if (key == "horns≤1") return {key, horns(1), description};
  if (key == "horns≤2") return {key, horns(2), description};
  if (key == "bang") return {key, bang(), description};
  if (key == "nabla") return {key, nabla(), description};
  if (key == "Delta[0]") return {key, representable(truncated_simplex(1), 0), description};
  if (key == "Delta[1]") return {key, representable(truncated_simplex(1), 1), description};
  if (key == "Delta[2]") return {key, representable(truncated_simplex(2), 2), description};
  std::string known;
  for (const auto& k : catalog_keys()) known += (known.empty() ? "" : ", ") + k;
  throw NotFound("unknown catalog key '" + raw + "'; known keys: " + known);
}

}  // namespace nwfs
