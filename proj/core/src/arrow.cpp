#include "nwfs/arrow.hpp"

#include <optional>

#include "nwfs/error.hpp"

namespace nwfs {

bool commutes(const Square& s) {
  return compose_maps(s.target.f, s.top).components() ==
         compose_maps(s.bottom, s.source.f).components();
}

ValidationReport validate(const Square& s) {
  ValidationReport report;
  auto absorb = [&](const char* tag, const ValidationReport& inner) {
    for (const auto& v : inner.violations) report.violations.push_back(std::string(tag) + v);
  };
  absorb("source: ", validate(s.source.f));
  absorb("target: ", validate(s.target.f));
  absorb("top: ", validate(s.top));
  absorb("bottom: ", validate(s.bottom));
  if (!report.ok()) return report;
  if (!(s.top.source() == s.source.dom()) || !(s.top.target() == s.target.dom())) {
    report.violations.push_back("top does not run between the domains");
  }
  if (!(s.bottom.source() == s.source.cod()) || !(s.bottom.target() == s.target.cod())) {
    report.violations.push_back("bottom does not run between the codomains");
  }
  if (!report.ok()) return report;
  const PresheafMap lhs = compose_maps(s.target.f, s.top);
  const PresheafMap rhs = compose_maps(s.bottom, s.source.f);
  const FinCategory& c = s.top.base();
  for (ObjectIndex a = 0; a < c.object_count(); ++a) {
    for (Element e = 0; e < s.source.dom().size(a); ++e) {
      if (lhs(a, e) != rhs(a, e)) {
        report.violations.push_back("square does not commute at " + c.object_id(a) + ", element " +
                                    std::to_string(e) + ": g(h) = " + std::to_string(lhs(a, e)) +
                                    ", k(f) = " + std::to_string(rhs(a, e)));
      }
    }
  }
  return report;
}

ValidationReport validate(const GeneratingSet& gens) {
  ValidationReport report;
  for (std::size_t i = 0; i < gens.members.size(); ++i) {
    const auto& m = gens.members[i];
    for (const auto& v : validate(m.f).violations) {
      report.violations.push_back("generator " + std::to_string(i) + ": " + v);
    }
    if (!(m.f.base() == gens.base)) {
      report.violations.push_back("generator " + std::to_string(i) + ": different base category");
    }
  }
  return report;
}

Square identity_square(const ArrowObj& f) {
  return Square{f, f, identity_map(f.dom()), identity_map(f.cod())};
}

std::vector<Square> enumerate_squares(const ArrowObj& j, const ArrowObj& g) {
  if (!(j.f.base() == g.f.base())) {
    throw IncompatibleInputs("enumerate_squares: arrows over different bases");
  }
  const FinCategory& c = j.f.base();
  std::vector<Square> out;
  for (const PresheafMap& h : enumerate_maps(j.dom(), g.dom())) {
    // k is pinned on the image of j: k(j a) = g(h a).
    std::vector<std::vector<std::optional<Element>>> pinned(c.object_count());
    bool consistent = true;
    for (ObjectIndex o = 0; o < c.object_count() && consistent; ++o) {
      pinned[o].resize(j.cod().size(o));
      for (Element a = 0; a < j.dom().size(o); ++a) {
        auto& slot = pinned[o][j.f(o, a)];
        const Element want = g.f(o, h(o, a));
        if (slot && *slot != want) {
          consistent = false;
          break;
        }
        slot = want;
      }
    }
    if (!consistent) continue;
    const ValueFilter filter = [&pinned](ObjectIndex o, Element b, Element v) {
      return !pinned[o][b] || *pinned[o][b] == v;
    };
    for_each_map(
        j.cod(), g.cod(),
        [&](const std::vector<std::vector<Element>>& comps) {
          out.push_back(Square{j, g, h, PresheafMap(j.cod(), g.cod(), comps)});
          return true;
        },
        filter);
  }
  return out;
}

Square compose_squares(const Square& s2, const Square& s1) {
  if (!(s1.target.f == s2.source.f)) {
    throw IncompatibleInputs("compose_squares: target of the first square is not the source of the second");
  }
  return Square{s1.source, s2.target, compose_maps(s2.top, s1.top),
                compose_maps(s2.bottom, s1.bottom)};
}

}  // namespace nwfs
