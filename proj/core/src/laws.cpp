#include "nwfs/laws.hpp"

#include <functional>
#include <random>

#include "nwfs/error.hpp"

namespace nwfs {

std::size_t LawReport::failures() const {
  std::size_t n = 0;
  for (const auto& r : rules) {
    for (const auto& a : r.axioms) n += a.failed;
  }
  return n;
}

const std::vector<std::string>& law_axioms() {
  static const std::vector<std::string> kAxioms{
      "factorisation",   "functoriality",   "unit-left",      "unit-right",
      "associativity",   "counit-left",     "counit-right",   "coassociativity",
      "distributivity",  "bialgebra-1",     "bialgebra-2",    "bialgebra-3",
      "bialgebra-4"};
  return kAxioms;
}

std::vector<PresheafMap> law_sample(std::size_t max_size, std::uint64_t seed, std::size_t extras,
                                    std::size_t extra_size) {
  const FinCategory base = FinCategory::terminal();
  std::vector<Presheaf> sets;
  for (std::size_t n = 0; n <= std::max(max_size, extra_size); ++n) {
    sets.push_back(Presheaf::finite_set(base, n));
  }
  std::vector<PresheafMap> out;
  for (std::size_t x = 0; x <= max_size; ++x) {
    for (std::size_t y = 0; y <= max_size; ++y) {
      for (const auto& m : enumerate_maps(sets[x], sets[y])) out.push_back(m);
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < extras; ++i) {
    const std::size_t x = std::uniform_int_distribution<std::size_t>(0, extra_size)(rng);
    const std::size_t y = std::uniform_int_distribution<std::size_t>(x > 0 ? 1 : 0, extra_size)(rng);
    std::vector<Element> values(x);
    for (auto& v : values) v = std::uniform_int_distribution<std::size_t>(0, y - 1)(rng);
    out.emplace_back(sets[x], sets[y], std::vector<std::vector<Element>>{values});
  }
  return out;
}

namespace {

class RuleChecker {
 public:
  RuleChecker(const FactorizationRule& rule, std::size_t cap) : rule_(rule), cap_(cap) {
    report_.rule = rule.name;
    for (const auto& name : law_axioms()) report_.axioms.push_back(AxiomVerdict{name});
    if (rule.sigma && rule.pi) {
      oplus_ = odot_product(rule, rule);
      otimes_ = tensor_product(rule, rule);
    }
  }

  void check(const PresheafMap& f) {
    const Factorization ff = rule_.factor(f);
    const PresheafMap id_x = identity_map(f.source());
    const PresheafMap id_y = identity_map(f.target());
    const PresheafMap id_k = identity_map(ff.K());
    expect("factorisation", f, compose_maps(ff.rho, ff.lambda), f);
    expect("bialgebra-3", f, compose_maps(ff.rho, ff.lambda), f);
    expect("functoriality", f, rule_.K(f, f, id_x, id_y), id_k);

    std::optional<Factorization> fr, fl;
    std::optional<PresheafMap> pi, sigma;
    if (rule_.pi) {
      fr = rule_.factor(ff.rho);
      pi = rule_.pi(f);
      expect("unit-left", f, compose_maps(*pi, fr->lambda), id_k);
      expect("unit-right", f, compose_maps(*pi, rule_.K(f, ff.rho, ff.lambda, id_y)), id_k);
      expect("associativity", f, compose_maps(*pi, rule_.K(fr->rho, ff.rho, *pi, id_y)),
             compose_maps(*pi, rule_.pi(ff.rho)));
      expect("bialgebra-2", f, compose_maps(ff.rho, *pi), fr->rho);
    }
    if (rule_.sigma) {
      fl = rule_.factor(ff.lambda);
      sigma = rule_.sigma(f);
      expect("counit-left", f, compose_maps(fl->rho, *sigma), id_k);
      expect("counit-right", f, compose_maps(rule_.K(ff.lambda, f, id_x, ff.rho), *sigma), id_k);
      expect("coassociativity", f,
             compose_maps(rule_.K(ff.lambda, fl->lambda, id_x, *sigma), *sigma),
             compose_maps(rule_.sigma(ff.lambda), *sigma));
      expect("bialgebra-1", f, compose_maps(*sigma, ff.lambda), fl->lambda);
    }
    if (pi && sigma) {
      expect("distributivity", f, compose_maps(*pi, fr->lambda), compose_maps(fl->rho, *sigma));
      const MiddleMap delta = rule_.sigma;
      const MiddleMap mu = rule_.pi;
      const PresheafMap dd = tensor_morphism(delta, delta, *oplus_, rule_, *oplus_)(f);
      const PresheafMap z = interchange(rule_, rule_, rule_, rule_, f);
      const PresheafMap mm = odot_morphism(mu, mu, *otimes_, *otimes_, rule_)(f);
      expect("bialgebra-4", f, compose_maps(*sigma, *pi), compose_maps(mm, compose_maps(z, dd)));
    }
  }

  RuleLawReport take() { return std::move(report_); }

 private:
  void expect(const std::string& axiom, const PresheafMap& f, const PresheafMap& lhs,
              const PresheafMap& rhs) {
    AxiomVerdict* verdict = nullptr;
    for (auto& v : report_.axioms) {
      if (v.axiom == axiom) verdict = &v;
    }
    ++verdict->checked;
    std::string witness;
    const FinCategory& c = lhs.base();
    if (!(lhs.source() == rhs.source()) || !(lhs.target() == rhs.target())) {
      witness = "composites have different domains or codomains";
    } else {
      for (ObjectIndex a = 0; a < c.object_count() && witness.empty(); ++a) {
        for (Element e = 0; e < lhs.source().size(a); ++e) {
          if (lhs(a, e) != rhs(a, e)) {
            witness = c.object_id(a) + ":" + std::to_string(e) + " lhs=" + std::to_string(lhs(a, e)) +
                      " rhs=" + std::to_string(rhs(a, e));
            break;
          }
        }
      }
    }
    if (witness.empty()) return;
    ++verdict->failed;
    std::size_t recorded = 0;
    for (const auto& ce : report_.counterexamples) recorded += ce.axiom == axiom;
    if (recorded < cap_) {
      report_.counterexamples.push_back(Counterexample{rule_.name, axiom, f, lhs, rhs, witness});
    }
  }

  const FactorizationRule& rule_;
  std::size_t cap_;
  RuleLawReport report_;
  std::optional<FactorizationRule> oplus_, otimes_;
};

}  // namespace

LawReport check_laws(const std::vector<FactorizationRule>& rules,
                     const std::vector<PresheafMap>& sample, std::size_t cap) {
  LawReport report;
  report.sample_size = sample.size();
  for (const auto& rule : rules) {
    RuleChecker checker(rule, cap);
    for (const auto& f : sample) checker.check(f);
    report.rules.push_back(checker.take());
  }
  return report;
}

FactorizationRule mutate_rule(const FactorizationRule& rule, StructureComponent which,
                              std::uint64_t seed) {
  FactorizationRule out = rule;
  const bool sigma = which == StructureComponent::Sigma;
  const auto original = sigma ? rule.sigma : rule.pi;
  if (!original) throw PreconditionFailed("mutate_rule: rule " + rule.name + " lacks that component");
  out.name = rule.name + (sigma ? "~sigma#" : "~pi#") + std::to_string(seed);
  auto corrupted = [original, seed](const PresheafMap& f) {
    const PresheafMap m = original(f);
    const std::size_t total = m.source().total_size();
    if (total == 0) return m;
    std::size_t index = static_cast<std::size_t>(seed % total);
    ObjectIndex a = 0;
    while (index >= m.source().size(a)) index -= m.source().size(a++);
    const std::size_t range = m.target().size(a);
    if (range <= 1) return m;
    auto comps = m.components();
    const Element old = comps[a][index];
    Element next = static_cast<Element>((old + 1 + seed) % range);
    if (next == old) next = (old + 1) % range;
    comps[a][index] = next;
    return PresheafMap(m.source(), m.target(), std::move(comps));
  };
  (sigma ? out.sigma : out.pi) = corrupted;
  return out;
}

FactorizationRule graph_rule_with_wrong_pi() {
  FactorizationRule r = graph_rule();
  r.name = "graph~pi-keeps-inner";
  // ((x, y'), y) |-> (x, y')
  r.pi = [](const PresheafMap& f) {
    const Product pf = binary_product(f.source(), f.target());
    return binary_product(pf.apex, f.target()).first;
  };
  return r;
}

}  // namespace nwfs
