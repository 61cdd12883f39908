#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace nwfs {

using ObjectIndex = std::size_t;
using MorphismIndex = std::size_t;
using Element = std::size_t;

struct MorphismInfo {
  std::string id;
  ObjectIndex dom = 0;
  ObjectIndex cod = 0;

  friend bool operator==(const MorphismInfo&, const MorphismInfo&) = default;
};

/// A finite category given by explicit tables.
///
/// Objects and morphisms are addressed by dense indices; the string ids are
/// kept for reporting and serialization. The composition table is indexed
/// `compose(g, f)` = g after f and is only meaningful when cod f = dom g.
///
/// Construction does not check the category axioms. Use validate() from
/// presheaf.hpp to get a report of every failed equation; the accessors here
/// never read out of bounds even on malformed data.
class FinCategory {
 public:
  /// The terminal category.
  FinCategory();
  FinCategory(std::vector<std::string> objects, std::vector<MorphismInfo> morphisms,
              std::vector<MorphismIndex> identities,
              std::vector<std::optional<MorphismIndex>> compose_table);

  /// One object, one (identity) morphism. Presheaves on it are finite sets.
  static FinCategory terminal();

  std::size_t object_count() const { return data_->objects.size(); }
  std::size_t morphism_count() const { return data_->morphisms.size(); }

  const std::string& object_id(ObjectIndex a) const { return data_->objects.at(a); }
  const MorphismInfo& morphism(MorphismIndex m) const { return data_->morphisms.at(m); }
  const std::vector<std::string>& objects() const { return data_->objects; }
  const std::vector<MorphismInfo>& morphisms() const { return data_->morphisms; }

  MorphismIndex identity(ObjectIndex a) const { return data_->identities.at(a); }
  const std::vector<MorphismIndex>& identities() const { return data_->identities; }

  /// Table entry for g after f, if present and in range.
  std::optional<MorphismIndex> compose_entry(MorphismIndex g, MorphismIndex f) const;
  /// g after f; throws IncompatibleInputs when cod f != dom g or the entry is
  /// missing.
  MorphismIndex compose(MorphismIndex g, MorphismIndex f) const;

  std::optional<ObjectIndex> find_object(const std::string& id) const;
  std::optional<MorphismIndex> find_morphism(const std::string& id) const;

  bool is_identity(MorphismIndex m) const;

  /// Identity of the underlying table storage; equal categories built
  /// separately are still equal under operator==.
  const void* identity_token() const { return data_.get(); }

  friend bool operator==(const FinCategory& a, const FinCategory& b);

 private:
  struct Data {
    std::vector<std::string> objects;
    std::vector<MorphismInfo> morphisms;
    std::vector<MorphismIndex> identities;
    std::vector<std::optional<MorphismIndex>> compose;
  };
  std::shared_ptr<const Data> data_;
};

}  // namespace nwfs
