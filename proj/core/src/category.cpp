#include "nwfs/category.hpp"

#include <sstream>

#include "nwfs/error.hpp"

namespace nwfs {

FinCategory::FinCategory(std::vector<std::string> objects, std::vector<MorphismInfo> morphisms,
                         std::vector<MorphismIndex> identities,
                         std::vector<std::optional<MorphismIndex>> compose_table)
    : data_(std::make_shared<const Data>(Data{std::move(objects), std::move(morphisms),
                                              std::move(identities), std::move(compose_table)})) {}

FinCategory::FinCategory() : FinCategory(terminal()) {}

FinCategory FinCategory::terminal() {
  static const FinCategory kTerminal({"*"}, {MorphismInfo{"id", 0, 0}}, {0}, {MorphismIndex{0}});
  return kTerminal;
}

std::optional<MorphismIndex> FinCategory::compose_entry(MorphismIndex g, MorphismIndex f) const {
  const std::size_t n = morphism_count();
  if (g >= n || f >= n) return std::nullopt;
  const std::size_t slot = g * n + f;
  if (slot >= data_->compose.size()) return std::nullopt;
  return data_->compose[slot];
}

MorphismIndex FinCategory::compose(MorphismIndex g, MorphismIndex f) const {
  if (g >= morphism_count() || f >= morphism_count()) {
    throw IncompatibleInputs("compose: morphism index out of range");
  }
  if (morphism(f).cod != morphism(g).dom) {
    std::ostringstream os;
    os << "compose: cod(" << morphism(f).id << ") != dom(" << morphism(g).id << ")";
    throw IncompatibleInputs(os.str());
  }
  auto entry = compose_entry(g, f);
  if (!entry) {
    throw IncompatibleInputs("compose: no table entry for " + morphism(g).id + " o " +
                             morphism(f).id);
  }
  return *entry;
}

std::optional<ObjectIndex> FinCategory::find_object(const std::string& id) const {
  for (ObjectIndex a = 0; a < object_count(); ++a) {
    if (data_->objects[a] == id) return a;
  }
  return std::nullopt;
}

std::optional<MorphismIndex> FinCategory::find_morphism(const std::string& id) const {
  for (MorphismIndex m = 0; m < morphism_count(); ++m) {
    if (data_->morphisms[m].id == id) return m;
  }
  return std::nullopt;
}

bool FinCategory::is_identity(MorphismIndex m) const {
  if (m >= morphism_count()) return false;
  const ObjectIndex a = morphism(m).dom;
  return a < data_->identities.size() && data_->identities[a] == m;
}

bool operator==(const FinCategory& a, const FinCategory& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->objects == b.data_->objects && a.data_->morphisms == b.data_->morphisms &&
         a.data_->identities == b.data_->identities && a.data_->compose == b.data_->compose;
}

}  // namespace nwfs
