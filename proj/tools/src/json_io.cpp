#include "nwfs_cli/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "nwfs/catalog.hpp"
#include "nwfs/error.hpp"

namespace nwfs::io {

namespace {

std::string escape(const std::string& key) {
  std::string out;
  for (char ch : key) {
    if (ch == '~') out += "~0";
    else if (ch == '/') out += "~1";
    else out += ch;
  }
  return out;
}

std::string child(const std::string& at, const std::string& key) { return at + "/" + escape(key); }
std::string child(const std::string& at, std::size_t i) { return at + "/" + std::to_string(i); }

const json& field(const json& doc, const std::string& key, const std::string& at) {
  if (!doc.is_object()) throw InputError(at, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) throw InputError(child(at, key), "missing field");
  return *it;
}

std::string text(const json& v, const std::string& at) {
  if (!v.is_string()) throw InputError(at, "expected a string");
  return v.get<std::string>();
}

/// Element ids may be strings or non-negative integers.
std::string element_id(const json& v, const std::string& at) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return std::to_string(v.get<std::int64_t>());
  throw InputError(at, "expected an element id (string or non-negative integer)");
}

CatalogEntry lookup(const std::string& key, const std::string& at) {
  try {
    return catalog_get(key);
  } catch (const NotFound& e) {
    throw InputError(at, e.what());
  }
}

std::string payload_kind(const CatalogPayload& p) {
  static const char* kNames[] = {"a category", "a generating set", "a presheaf", "an arrow"};
  return kNames[p.index()];
}

template <class T>
T catalog_as(const std::string& key, const std::string& at, const std::string& want) {
  CatalogEntry e = lookup(key, at);
  if (!std::holds_alternative<T>(e.payload)) {
    throw InputError(at, "catalog key '" + key + "' names " + payload_kind(e.payload) + ", not " + want);
  }
  return std::get<T>(std::move(e.payload));
}

void require_base(const FinCategory& got, const FinCategory& base, const std::string& at) {
  if (!(got == base)) throw InputError(at, "lives over a different category than the run");
}

void report(const ValidationReport& r, const std::string& at) {
  if (!r.ok()) throw InputError(at, r.violations.front());
}

ObjectIndex object_named(const FinCategory& c, const std::string& id, const std::string& at) {
  auto a = c.find_object(id);
  if (!a) throw InputError(at, "unknown object '" + id + "'");
  return *a;
}

MorphismIndex morphism_named(const FinCategory& c, const std::string& id, const std::string& at) {
  auto m = c.find_morphism(id);
  if (!m) throw InputError(at, "unknown morphism '" + id + "'");
  return *m;
}

Element element_in(const LabeledPresheaf& p, ObjectIndex a, const std::string& id, const std::string& at) {
  auto it = p.labels[a].find(id);
  if (it == p.labels[a].end()) {
    throw InputError(at, "no element '" + id + "' at object '" + p.presheaf.base().object_id(a) + "'");
  }
  return it->second;
}

}  // namespace

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), "cannot read file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw InputError(path.string(), "malformed JSON at byte " + std::to_string(e.byte));
  }
}

json load_ref_or_file(const std::string& value, const std::string& flag) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(value, ec)) {
    try {
      return load_json_file(value);
    } catch (const InputError& e) {
      throw InputError(flag + " " + e.pointer(), std::string(e.what()).substr(e.pointer().size() + 2));
    }
  }
  return json(value);
}

ElementLabels dense_labels(const Presheaf& p) {
  ElementLabels out(p.base().object_count());
  for (ObjectIndex a = 0; a < out.size(); ++a) {
    for (Element e = 0; e < p.size(a); ++e) out[a].emplace(std::to_string(e), e);
  }
  return out;
}

FinCategory parse_category(const json& doc, const std::string& at) {
  if (doc.is_string()) return catalog_as<FinCategory>(doc.get<std::string>(), at, "a category");
  const json& objs = field(doc, "objects", at);
  if (!objs.is_array()) throw InputError(child(at, "objects"), "expected an array");
  std::vector<std::string> objects;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    std::string id = text(objs[i], child(child(at, "objects"), i));
    for (const auto& o : objects) {
      if (o == id) throw InputError(child(child(at, "objects"), i), "duplicate object '" + id + "'");
    }
    objects.push_back(std::move(id));
  }
  const FinCategory shell(objects, {}, {}, {});

  const json& mors = field(doc, "morphisms", at);
  if (!mors.is_array()) throw InputError(child(at, "morphisms"), "expected an array");
  std::vector<MorphismInfo> morphisms;
  for (std::size_t i = 0; i < mors.size(); ++i) {
    const std::string p = child(child(at, "morphisms"), i);
    MorphismInfo m;
    m.id = text(field(mors[i], "id", p), child(p, "id"));
    m.dom = object_named(shell, text(field(mors[i], "dom", p), child(p, "dom")), child(p, "dom"));
    m.cod = object_named(shell, text(field(mors[i], "cod", p), child(p, "cod")), child(p, "cod"));
    for (const auto& other : morphisms) {
      if (other.id == m.id) throw InputError(child(p, "id"), "duplicate morphism '" + m.id + "'");
    }
    morphisms.push_back(std::move(m));
  }
  const FinCategory named(objects, morphisms, {}, {});

  const json& ids = field(doc, "identities", at);
  if (!ids.is_object()) throw InputError(child(at, "identities"), "expected an object");
  std::vector<MorphismIndex> identities(objects.size());
  for (ObjectIndex a = 0; a < objects.size(); ++a) {
    const std::string p = child(child(at, "identities"), objects[a]);
    auto it = ids.find(objects[a]);
    if (it == ids.end()) throw InputError(p, "missing identity");
    identities[a] = morphism_named(named, text(*it, p), p);
  }
  for (auto it = ids.begin(); it != ids.end(); ++it) {
    object_named(shell, it.key(), child(child(at, "identities"), it.key()));
  }

  const json& comp = field(doc, "compose", at);
  if (!comp.is_array()) throw InputError(child(at, "compose"), "expected an array");
  const std::size_t n = morphisms.size();
  std::vector<std::optional<MorphismIndex>> table(n * n);
  for (std::size_t i = 0; i < comp.size(); ++i) {
    const std::string p = child(child(at, "compose"), i);
    if (!comp[i].is_array() || comp[i].size() != 3) throw InputError(p, "expected [g, f, g o f]");
    const MorphismIndex g = morphism_named(named, text(comp[i][0], child(p, 0)), child(p, 0));
    const MorphismIndex f = morphism_named(named, text(comp[i][1], child(p, 1)), child(p, 1));
    const MorphismIndex gf = morphism_named(named, text(comp[i][2], child(p, 2)), child(p, 2));
    if (morphisms[f].cod != morphisms[g].dom) throw InputError(p, "composite of non-composable morphisms");
    if (table[g * n + f] && *table[g * n + f] != gf) throw InputError(p, "conflicting composite");
    table[g * n + f] = gf;
  }
  FinCategory c(std::move(objects), std::move(morphisms), std::move(identities), std::move(table));
  report(validate(c), child(at, "compose"));
  return c;
}

LabeledPresheaf parse_presheaf(const json& doc, const FinCategory& base, const std::string& at) {
  if (doc.is_string()) {
    Presheaf p = catalog_as<Presheaf>(doc.get<std::string>(), at, "a presheaf");
    require_base(p.base(), base, at);
    ElementLabels labels = dense_labels(p);
    return {std::move(p), std::move(labels)};
  }
  if (!doc.is_object()) throw InputError(at, "expected a presheaf object or catalog key");
  if (doc.contains("category")) {
    require_base(parse_category(doc["category"], child(at, "category")), base, child(at, "category"));
  }
  const json& sets = field(doc, "sets", at);
  if (!sets.is_object()) throw InputError(child(at, "sets"), "expected an object");
  for (auto it = sets.begin(); it != sets.end(); ++it) {
    object_named(base, it.key(), child(child(at, "sets"), it.key()));
  }
  ElementLabels labels(base.object_count());
  std::vector<std::size_t> sizes(base.object_count(), 0);
  for (ObjectIndex a = 0; a < base.object_count(); ++a) {
    const std::string p = child(child(at, "sets"), base.object_id(a));
    auto it = sets.find(base.object_id(a));
    if (it == sets.end()) continue;  // empty at a
    if (!it->is_array()) throw InputError(p, "expected an array of element ids");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string id = element_id((*it)[i], child(p, i));
      if (!labels[a].emplace(id, i).second) throw InputError(child(p, i), "duplicate element '" + id + "'");
    }
    sizes[a] = it->size();
  }

  const json empty = json::object();
  const json& acts = doc.contains("actions") ? doc["actions"] : empty;
  if (!acts.is_object()) throw InputError(child(at, "actions"), "expected an object");
  for (auto it = acts.begin(); it != acts.end(); ++it) {
    morphism_named(base, it.key(), child(child(at, "actions"), it.key()));
  }
  LabeledPresheaf shell{Presheaf(base, sizes, {}), labels};
  std::vector<std::vector<Element>> actions(base.morphism_count());
  for (MorphismIndex m = 0; m < base.morphism_count(); ++m) {
    const MorphismInfo& info = base.morphism(m);
    const std::string p = child(child(at, "actions"), info.id);
    auto it = acts.find(info.id);
    if (it == acts.end()) {
      if (!base.is_identity(m) && sizes[info.cod] > 0) throw InputError(p, "missing action");
      actions[m].resize(sizes[info.cod]);
      for (Element e = 0; e < sizes[info.cod]; ++e) actions[m][e] = e;
      continue;
    }
    if (!it->is_object()) throw InputError(p, "expected an object {element: element}");
    actions[m].assign(sizes[info.cod], 0);
    std::vector<bool> seen(sizes[info.cod], false);
    for (auto e = it->begin(); e != it->end(); ++e) {
      const Element x = element_in(shell, info.cod, e.key(), child(p, e.key()));
      actions[m][x] = element_in(shell, info.dom, element_id(e.value(), child(p, e.key())), child(p, e.key()));
      seen[x] = true;
    }
    for (Element x = 0; x < seen.size(); ++x) {
      if (!seen[x]) throw InputError(p, "action undefined on an element of '" + base.object_id(info.cod) + "'");
    }
  }
  Presheaf out(base, std::move(sizes), std::move(actions));
  report(validate(out), child(at, "actions"));
  return {std::move(out), std::move(labels)};
}

PresheafMap parse_components(const json& doc, const LabeledPresheaf& source, const LabeledPresheaf& target,
                             const std::string& at) {
  const FinCategory& base = source.presheaf.base();
  if (!doc.is_object()) throw InputError(at, "expected an object {object: {element: element}}");
  for (auto it = doc.begin(); it != doc.end(); ++it) object_named(base, it.key(), child(at, it.key()));
  std::vector<std::vector<Element>> comps(base.object_count());
  for (ObjectIndex a = 0; a < base.object_count(); ++a) {
    const std::string p = child(at, base.object_id(a));
    const std::size_t n = source.presheaf.size(a);
    auto it = doc.find(base.object_id(a));
    if (it == doc.end()) {
      if (n > 0) throw InputError(p, "missing component");
      continue;
    }
    comps[a].assign(n, 0);
    if (it->is_array()) {
      if (it->size() != n) throw InputError(p, "component has the wrong length");
      for (std::size_t i = 0; i < n; ++i) {
        comps[a][i] = element_in(target, a, element_id((*it)[i], child(p, i)), child(p, i));
      }
      continue;
    }
    if (!it->is_object()) throw InputError(p, "expected an object or array");
    std::vector<bool> seen(n, false);
    for (auto e = it->begin(); e != it->end(); ++e) {
      const Element x = element_in(source, a, e.key(), child(p, e.key()));
      comps[a][x] = element_in(target, a, element_id(e.value(), child(p, e.key())), child(p, e.key()));
      seen[x] = true;
    }
    for (Element x = 0; x < n; ++x) {
      if (!seen[x]) throw InputError(p, "component undefined on an element");
    }
  }
  PresheafMap m(source.presheaf, target.presheaf, std::move(comps));
  report(validate(m), at);
  return m;
}

ArrowObj parse_arrow(const json& doc, const FinCategory& base, const std::string& at) {
  if (doc.is_string()) {
    ArrowObj a = catalog_as<ArrowObj>(doc.get<std::string>(), at, "an arrow");
    require_base(a.f.base(), base, at);
    return a;
  }
  if (!doc.is_object()) throw InputError(at, "expected a map object or catalog key");
  const LabeledPresheaf s = parse_presheaf(field(doc, "source", at), base, child(at, "source"));
  const LabeledPresheaf t = parse_presheaf(field(doc, "target", at), base, child(at, "target"));
  std::string label;
  if (doc.contains("label")) label = text(doc["label"], child(at, "label"));
  return ArrowObj{parse_components(field(doc, "components", at), s, t, child(at, "components")), label};
}

GeneratingSet parse_gens(const json& doc, const FinCategory& base, const std::string& at) {
  if (doc.is_string()) {
    GeneratingSet g = catalog_as<GeneratingSet>(doc.get<std::string>(), at, "a generating set");
    require_base(g.base, base, at);
    return g;
  }
  if (!doc.is_object()) throw InputError(at, "expected a gens object or catalog key");
  if (doc.contains("category")) {
    require_base(parse_category(doc["category"], child(at, "category")), base, child(at, "category"));
  }
  const json& arrows = field(doc, "arrows", at);
  if (!arrows.is_array()) throw InputError(child(at, "arrows"), "expected an array");
  GeneratingSet g{base, {}};
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    g.members.push_back(parse_arrow(arrows[i], base, child(child(at, "arrows"), i)));
  }
  return g;
}

json to_json(const FinCategory& c) {
  json out;
  out["objects"] = c.objects();
  json mors = json::array();
  for (const auto& m : c.morphisms()) {
    mors.push_back({{"id", m.id}, {"dom", c.object_id(m.dom)}, {"cod", c.object_id(m.cod)}});
  }
  out["morphisms"] = std::move(mors);
  json ids = json::object();
  for (ObjectIndex a = 0; a < c.object_count(); ++a) ids[c.object_id(a)] = c.morphism(c.identity(a)).id;
  out["identities"] = std::move(ids);
  json comp = json::array();
  for (MorphismIndex g = 0; g < c.morphism_count(); ++g) {
    for (MorphismIndex f = 0; f < c.morphism_count(); ++f) {
      if (auto gf = c.compose_entry(g, f)) {
        comp.push_back({c.morphism(g).id, c.morphism(f).id, c.morphism(*gf).id});
      }
    }
  }
  out["compose"] = std::move(comp);
  return out;
}

json to_json(const Presheaf& p) {
  const FinCategory& c = p.base();
  json sets = json::object();
  for (ObjectIndex a = 0; a < c.object_count(); ++a) {
    json elts = json::array();
    for (Element e = 0; e < p.size(a); ++e) elts.push_back(e);
    sets[c.object_id(a)] = std::move(elts);
  }
  json acts = json::object();
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    json table = json::object();
    const auto& act = p.action(m);
    for (Element e = 0; e < act.size(); ++e) table[std::to_string(e)] = act[e];
    acts[c.morphism(m).id] = std::move(table);
  }
  return {{"sets", std::move(sets)}, {"actions", std::move(acts)}};
}

json components_json(const PresheafMap& m) {
  const FinCategory& c = m.base();
  json out = json::object();
  for (ObjectIndex a = 0; a < c.object_count(); ++a) {
    json comp = json::object();
    for (Element e = 0; e < m.component(a).size(); ++e) comp[std::to_string(e)] = m(a, e);
    out[c.object_id(a)] = std::move(comp);
  }
  return out;
}

json to_json(const ArrowObj& a) {
  json out{{"source", to_json(a.dom())}, {"target", to_json(a.cod())}, {"components", components_json(a.f)}};
  if (!a.label.empty()) out["label"] = a.label;
  return out;
}

json to_json(const GeneratingSet& g) {
  json arrows = json::array();
  for (const auto& m : g.members) arrows.push_back(to_json(m));
  return {{"arrows", std::move(arrows)}};
}

std::string digest(const json& doc) {
  const std::string bytes = doc.dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

}  // namespace nwfs::io
