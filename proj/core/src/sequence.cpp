#include "nwfs/sequence.hpp"

#include "nwfs/error.hpp"

namespace nwfs {

std::string to_string(SequenceMode mode) {
  return mode == SequenceMode::Garner ? "garner" : "quillen";
}

std::string to_string(StageKind kind) {
  switch (kind) {
    case StageKind::Initial: return "initial";
    case StageKind::Successor: return "successor";
    case StageKind::Limit: return "limit";
  }
  return "unknown";
}

PresheafMap SequenceState::connect(std::size_t a, std::size_t b) const {
  if (a > b || b >= stages.size()) throw IncompatibleInputs("connect: stage indices out of order or range");
  PresheafMap out = identity_map(stages[a].K);
  for (std::size_t i = a + 1; i <= b; ++i) out = compose_maps(*stages[i].connect_in, out);
  return out;
}

const PresheafMap& SequenceState::sigma(std::size_t a) const {
  if (a + 1 >= stages.size() || stages[a + 1].kind != StageKind::Successor ||
      !stages[a + 1].sigma_in || stages[a + 1].pred != a) {
    throw NotFound("sigma: no successor step was taken from stage " + std::to_string(a));
  }
  return *stages[a + 1].sigma_in;
}

std::vector<std::vector<std::size_t>> SequenceState::cardinalities() const {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(stages.size());
  for (const auto& s : stages) out.push_back(s.K.sizes());
  return out;
}

namespace {

class Runner {
 public:
  Runner(SequenceMode mode, const GeneratingSet& gens, const ArrowObj& g,
         const OrdinalBudget& budget, const RunOptions& options) {
    if (budget.successors_per_block == 0) {
      throw IncompatibleInputs("budget: successors_per_block must be at least 1");
    }
    if (!(gens.base == g.f.base())) throw IncompatibleInputs("run: generators over a different base");
    st_.mode = mode;
    st_.gens = gens;
    st_.input = g;
    st_.budget = budget;
    st_.options = options;
    Stage initial;
    initial.K = g.dom();
    initial.lambda = identity_map(g.dom());
    initial.rho = g.f;
    st_.stages.push_back(std::move(initial));
  }

  SequenceState run() {
    std::size_t block_start = 0;
    while (true) {
      for (std::size_t s = 0; s < st_.budget.successors_per_block; ++s) {
        successor();
        if (st_.converged_at && !st_.options.run_full_budget) return std::move(st_);
      }
      if (st_.omega_steps >= st_.budget.omega_blocks) break;
      limit(block_start);
      block_start = st_.stages.size() - 1;
    }
    return std::move(st_);
  }

 private:
  const OneStepFactorization& onestep_of(std::size_t i) {
    Stage& s = st_.stages[i];
    if (!s.onestep) {
      s.onestep = std::make_shared<const OneStepFactorization>(
          build_onestep(st_.gens, ArrowObj{s.rho, {}}));
    }
    return *s.onestep;
  }

  void successor() {
    const std::size_t b = st_.stages.size() - 1;
    const OneStepFactorization& step = onestep_of(b);
    const Stage& from = st_.stages[b];
    Stage next;
    next.kind = StageKind::Successor;
    if (st_.mode == SequenceMode::Quillen) {
      next.K = step.K;
      next.connect_in = step.lambda;
      next.rho = step.rho;
    } else if (b == 0) {
      next.K = step.K;
      next.connect_in = step.lambda;
      next.rho = step.rho;
      next.pred = 0;
      next.sigma_in = identity_map(step.K);
    } else {
      const std::size_t a = *from.pred;
      const OneStepFactorization& prev = onestep_of(a);
      const PresheafMap p1 = compose_maps(step.lambda, *from.sigma_in);
      const PresheafMap p2 =
          onestep_on_square(prev, step, st_.connect(a, b), identity_map(st_.input.cod()));
      const Cocone coeq = coequalizer(p1, p2);
      const PresheafMap& sigma = coeq.legs[0];
      next.K = coeq.apex;
      next.connect_in = compose_maps(sigma, step.lambda);
      next.rho = coeq.factor({step.rho});
      next.pred = b;
      next.sigma_in = sigma;
      next.coequalized = std::make_pair(p1, p2);
    }
    next.lambda = compose_maps(*next.connect_in, from.lambda);
    const bool iso = is_iso(*next.connect_in);
    st_.stages.push_back(std::move(next));
    ++st_.successor_steps;
    if (iso && !st_.converged_at) st_.converged_at = b;
  }

  void limit(std::size_t from_index) {
    const std::size_t n = st_.stages.size() - 1;
    std::vector<PresheafMap> chain;
    std::vector<PresheafMap> rhos{st_.stages[from_index].rho};
    for (std::size_t i = from_index + 1; i <= n; ++i) {
      chain.push_back(*st_.stages[i].connect_in);
      rhos.push_back(st_.stages[i].rho);
    }
    Cocone cocone = chain_colimit(st_.stages[from_index].K, chain);
    const PresheafMap& last_leg = cocone.legs.back();
    Stage next;
    next.kind = StageKind::Limit;
    next.K = cocone.apex;
    next.connect_in = last_leg;
    next.lambda = compose_maps(last_leg, st_.stages[n].lambda);
    next.rho = cocone.factor(rhos);
    if (st_.mode == SequenceMode::Garner) {
      next.pred = st_.stages[n].pred;
      next.sigma_in = compose_maps(last_leg, *st_.stages[n].sigma_in);
    }
    next.limit = std::move(cocone);
    next.limit_from = from_index;
    st_.stages.push_back(std::move(next));
    ++st_.omega_steps;
  }

  SequenceState st_;
};

void require(bool ok, ValidationReport& report, const std::string& msg) {
  if (!ok) report.violations.push_back(msg);
}

bool same(const PresheafMap& a, const PresheafMap& b) {
  return a.source() == b.source() && a.target() == b.target() && a.components() == b.components();
}

}  // namespace

SequenceState run_garner(const GeneratingSet& gens, const ArrowObj& g, const OrdinalBudget& budget,
                         const RunOptions& options) {
  return Runner(SequenceMode::Garner, gens, g, budget, options).run();
}

SequenceState run_quillen(const GeneratingSet& gens, const ArrowObj& g, const OrdinalBudget& budget,
                          const RunOptions& options) {
  return Runner(SequenceMode::Quillen, gens, g, budget, options).run();
}

std::vector<PresheafMap> build_comparison(const SequenceState& garner, const SequenceState& quillen) {
  if (garner.mode != SequenceMode::Garner || quillen.mode != SequenceMode::Quillen) {
    throw IncompatibleInputs("build_comparison: expected a Garner run and a Quillen run");
  }
  if (!(garner.input.f == quillen.input.f)) {
    throw IncompatibleInputs("build_comparison: runs factor different maps");
  }
  if (!(garner.gens.base == quillen.gens.base) ||
      garner.gens.members.size() != quillen.gens.members.size()) {
    throw IncompatibleInputs("build_comparison: runs use different generating sets");
  }
  for (std::size_t i = 0; i < garner.gens.members.size(); ++i) {
    if (!(garner.gens.members[i].f == quillen.gens.members[i].f)) {
      throw IncompatibleInputs("build_comparison: generator " + std::to_string(i) + " differs");
    }
  }
  const std::size_t n = std::min(garner.stages.size(), quillen.stages.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (garner.stages[i].kind != quillen.stages[i].kind ||
        garner.stages[i].limit_from != quillen.stages[i].limit_from) {
      throw IncompatibleInputs("build_comparison: stage layouts differ at stage " + std::to_string(i));
    }
  }
  const PresheafMap id_d = identity_map(garner.input.cod());
  std::vector<PresheafMap> q{identity_map(garner.input.dom())};
  for (std::size_t i = 1; i < n; ++i) {
    const Stage& gs = garner.stages[i];
    const Stage& qs = quillen.stages[i];
    if (gs.kind == StageKind::Successor) {
      const Stage& gprev = garner.stages[i - 1];
      const Stage& qprev = quillen.stages[i - 1];
      if (!gprev.onestep || !qprev.onestep || gs.pred != i - 1) {
        throw IncompatibleInputs("build_comparison: missing one-step data at stage " + std::to_string(i - 1));
      }
      const PresheafMap on_square = onestep_on_square(*qprev.onestep, *gprev.onestep, q.back(), id_d);
      q.push_back(compose_maps(*gs.sigma_in, on_square));
    } else {
      std::vector<PresheafMap> maps;
      for (std::size_t k = qs.limit_from; k < i; ++k) {
        maps.push_back(compose_maps(gs.limit->legs[k - qs.limit_from], q[k]));
      }
      q.push_back(qs.limit->factor(maps));
    }
  }
  return q;
}

ValidationReport verify_sequence(const SequenceState& st) {
  ValidationReport report;
  const PresheafMap& g = st.input.f;
  for (std::size_t i = 0; i < st.stages.size(); ++i) {
    const Stage& s = st.stages[i];
    const std::string at = "stage " + std::to_string(i) + ": ";
    for (const auto& v : validate(s.K).violations) report.violations.push_back(at + "K: " + v);
    for (const auto& v : validate(s.lambda).violations) report.violations.push_back(at + "lambda: " + v);
    for (const auto& v : validate(s.rho).violations) report.violations.push_back(at + "rho: " + v);
    require(compose_maps(s.rho, s.lambda).components() == g.components(), report,
            at + "rho o lambda != g");
    if (i == 0) continue;
    const PresheafMap& c = *s.connect_in;
    require(same(compose_maps(c, st.stages[i - 1].lambda), s.lambda), report,
            at + "connect o lambda_prev != lambda");
    require(same(compose_maps(s.rho, c), st.stages[i - 1].rho), report,
            at + "rho o connect != rho_prev");
    if (s.kind == StageKind::Successor) {
      const Stage& prev = st.stages[i - 1];
      if (!prev.onestep) {
        report.violations.push_back(at + "previous stage carries no one-step data");
        continue;
      }
      for (const auto& v : verify_onestep(*prev.onestep).violations) {
        report.violations.push_back("stage " + std::to_string(i - 1) + ": one-step: " + v);
      }
      if (st.mode == SequenceMode::Quillen) {
        require(same(c, prev.onestep->lambda), report, at + "connect != lambda'");
        require(same(s.rho, prev.onestep->rho), report, at + "rho != rho'");
      } else {
        require(s.sigma_in.has_value() && s.pred == i - 1, report, at + "missing sigma");
        if (!s.sigma_in) continue;
        require(same(c, compose_maps(*s.sigma_in, prev.onestep->lambda)), report,
                at + "connect != sigma o lambda'");
        require(same(compose_maps(s.rho, *s.sigma_in), prev.onestep->rho), report,
                at + "rho o sigma != rho'");
        if (s.coequalized) {
          const auto& [p1, p2] = *s.coequalized;
          require(same(compose_maps(*s.sigma_in, p1), compose_maps(*s.sigma_in, p2)), report,
                  at + "sigma does not coequalize its pair");
        }
      }
    } else if (s.kind == StageKind::Limit) {
      if (!s.limit) {
        report.violations.push_back(at + "limit stage without its cocone");
        continue;
      }
      for (const auto& v : verify_cocone(*s.limit).violations) {
        report.violations.push_back(at + "cocone: " + v);
      }
      const std::size_t from = s.limit_from;
      require(s.limit->legs.size() == i - from, report, at + "cocone does not cover the block");
      for (std::size_t k = from; k < i && k - from < s.limit->legs.size(); ++k) {
        require(same(s.limit->legs[k - from], st.connect(k, i)), report,
                at + "leg " + std::to_string(k) + " != connect(" + std::to_string(k) + ", " +
                    std::to_string(i) + ")");
      }
    }
  }
  if (st.converged_at) {
    const std::size_t gamma = *st.converged_at;
    require(gamma + 1 < st.stages.size() && st.stages[gamma + 1].kind == StageKind::Successor &&
                is_iso(*st.stages[gamma + 1].connect_in),
            report, "convergence claim: connect(" + std::to_string(gamma) + ", " +
                        std::to_string(gamma + 1) + ") is not an isomorphism");
  }
  return report;
}

}  // namespace nwfs
