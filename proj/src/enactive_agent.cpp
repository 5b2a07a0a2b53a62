#include "enactlab/enactive_agent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace enactlab {

InteractionMemory::InteractionMemory(int depth_limit, int stabilization_threshold)
    : depth_limit_(depth_limit), stabilization_threshold_(stabilization_threshold) {
    if (depth_limit_ < 2)
        throw std::invalid_argument("depth limit must be at least 2");
}

long long InteractionMemory::weight(InteractionId id) const {
    auto it = known_.find(id);
    if (it == known_.end())
        throw std::out_of_range("weight: interaction not in memory");
    return it->second;
}

std::vector<InteractionId> InteractionMemory::activate() const {
    std::vector<InteractionId> activated;
    for (const auto& [id, w] : known_) {
        (void)w;
        if (context_.count(store_.pre(id)))
            activated.push_back(id);
    }
    return activated;
}

std::vector<InteractionId> InteractionMemory::propose(
    const std::vector<InteractionId>& activated) const {
    std::set<InteractionId> posts;
    for (InteractionId a : activated)
        posts.insert(store_.post(a));
    return {posts.begin(), posts.end()};
}

double InteractionMemory::occurrence_probability(InteractionId id) const {
    if (store_.is_primitive(id))
        return 1.0;
    auto it = known_.find(id);
    if (it == known_.end())
        throw std::out_of_range("occurrence_probability: interaction not in memory");
    const long long sibling_sum = pre_weight_sum_.at(store_.pre(id));
    return static_cast<double>(it->second) / static_cast<double>(sibling_sum);
}

void InteractionMemory::bump(InteractionId id, long long by) {
    known_[id] += by;
    pre_weight_sum_[store_.pre(id)] += by;
}

void InteractionMemory::insert_structure(InteractionId id) {
    if (store_.is_primitive(id) || known_.count(id))
        return;
    insert_structure(store_.pre(id));
    insert_structure(store_.post(id));
    bump(id, 1);
}

std::vector<InteractionId> InteractionMemory::learn(InteractionId enacted) {
    insert_structure(enacted);

    std::vector<InteractionId> touched;
    for (InteractionId c : context_) {
        if (store_.length(c) + store_.length(enacted) > depth_limit_)
            continue;
        const InteractionId pair = store_.composite(c, enacted);
        bump(pair, 1); // weight 1 if new, incremented otherwise
        touched.push_back(pair);
    }
    return touched;
}

void InteractionMemory::rebuild_context(InteractionId enacted,
                                        const std::vector<InteractionId>& learned) {
    context_.clear();
    for (InteractionId l : learned) {
        if (known_.at(l) >= stabilization_threshold_)
            context_.insert(l);
    }
    context_.insert(enacted);
    if (!store_.is_primitive(enacted))
        context_.insert(store_.post(enacted));
}

void InteractionMemory::add_known(InteractionId id, long long weight) {
    if (store_.is_primitive(id))
        throw std::invalid_argument("add_known: primitives are always known");
    if (store_.length(id) > depth_limit_)
        throw std::invalid_argument("add_known: interaction exceeds depth limit");
    if (weight < 1)
        throw std::invalid_argument("add_known: weight must be positive");
    insert_structure(store_.pre(id));
    insert_structure(store_.post(id));
    const auto it = known_.find(id);
    bump(id, it == known_.end() ? weight : weight - it->second);
}

void InteractionMemory::set_context(const std::set<InteractionId>& context) {
    for (InteractionId c : context) {
        if (!knows(c))
            throw std::invalid_argument("set_context: unknown interaction");
    }
    context_ = context;
}

std::string InteractionMemory::dump() const {
    std::vector<InteractionId> ids;
    ids.reserve(known_.size());
    for (const auto& [id, w] : known_) {
        (void)w;
        ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end(),
              [&](InteractionId a, InteractionId b) { return store_.compare(a, b) < 0; });

    std::ostringstream out;
    for (InteractionId id : ids)
        out << store_.to_sexpr(id) << " w=" << known_.at(id) << "\n";
    return out.str();
}

EnactiveAgent::EnactiveAgent(const EnactiveConfig& config)
    : config_(config),
      memory_(config.d, config.stabilization_threshold),
      rng_(derive_seed(config.seed, /*stream=*/1)) {}

InteractionId greedy_choice(const InteractionMemory& memory,
                            const std::vector<InteractionId>& proposed,
                            const MotivationModel& motivation, int d) {
    const auto& store = memory.store();

    // Anticipation evidence: how strongly the current context predicts each
    // proposed continuation. Repetition deepens the score, so entrenched
    // negative loops eventually lose to rarely-seen alternatives while
    // positive habits keep winning.
    std::map<InteractionId, long long> evidence;
    for (InteractionId a : memory.activate())
        evidence[store.post(a)] += memory.weight(a);

    InteractionId best = kNoInteraction;
    double best_score = 0.0;
    for (InteractionId p : proposed) {
        if (store.length(p) > d)
            continue;
        const auto it = evidence.find(p);
        const long long support = it == evidence.end() ? 1 : it->second;
        const double score = motivation.valence(store, p) * static_cast<double>(support);
        if (best == kNoInteraction || score > best_score ||
            (score == best_score && store.compare(p, best) < 0)) {
            best = p;
            best_score = score;
        }
    }
    return best;
}

EnactiveAgent::Selection EnactiveAgent::select(const std::vector<InteractionId>& proposed) {
    Selection sel;
    const auto& store = memory_.store();

    if (rng_.unit() < config_.alpha) {
        sel.intended = store.primitive_by_index(static_cast<int>(rng_.below(4)));
        sel.explored = true;
        return sel;
    }

    const InteractionId best = greedy_choice(memory_, proposed, config_.motivation, config_.d);
    if (best == kNoInteraction) {
        // Bootstrap: nothing proposed (or nothing fits d).
        sel.intended = store.primitive_by_index(static_cast<int>(rng_.below(4)));
        return sel;
    }
    if (config_.motivation.valence(store, best) > 0.0) {
        sel.intended = best;
        return sel;
    }

    // Every eligible proposal anticipates a non-positive continuation.
    // Avoid the experiments those continuations would open with and intend
    // the most attractive unadvised success primitive instead; when every
    // experiment is advised against, settle for the least bad proposal.
    bool advised[3] = {false, false, false};
    for (InteractionId p : proposed) {
        if (store.length(p) <= config_.d)
            advised[static_cast<int>(store.first_experiment(p))] = true;
    }
    InteractionId fallback = kNoInteraction;
    double fallback_valence = 0.0;
    for (const Experiment e : {Experiment::Step, Experiment::TurnLeft, Experiment::TurnRight}) {
        if (advised[static_cast<int>(e)])
            continue;
        const InteractionId prim = store.primitive(e, Result::Success);
        const double v = config_.motivation.valence(store, prim);
        if (fallback == kNoInteraction || v > fallback_valence) {
            fallback = prim;
            fallback_valence = v;
        }
    }
    sel.intended = fallback != kNoInteraction ? fallback : best;
    return sel;
}

namespace {

// Primitive leaves left to right.
void collect_leaves(const InteractionStore& store, InteractionId id,
                    std::vector<InteractionId>& leaves) {
    if (store.is_primitive(id)) {
        leaves.push_back(id);
        return;
    }
    collect_leaves(store, store.pre(id), leaves);
    collect_leaves(store, store.post(id), leaves);
}

} // namespace

EnactiveAgent::Enaction EnactiveAgent::enact(InteractionId intended, MazeState& env,
                                             const EnvConfig& env_config, Rng& env_rng) {
    auto& store = memory_.store();
    std::vector<InteractionId> leaves;
    collect_leaves(store, intended, leaves);

    Enaction result;
    std::vector<InteractionId> performed;
    bool interrupted = false;

    for (InteractionId leaf : leaves) {
        const Experiment exp = store.experiment(leaf);
        const int tick_before = env.tick();
        const ActionOutcome out = env.attempt_action(experiment_action(exp));
        const Result actual =
            (exp == Experiment::Step && !out.succeeded) ? Result::Failure : Result::Success;
        const InteractionId performed_id = store.primitive(exp, actual);
        performed.push_back(performed_id);

        PrimitiveRecord rec;
        rec.tick = tick_before;
        rec.action = out.action;
        rec.performed = performed_id;
        rec.valence = config_.motivation.valence(store, performed_id);
        rec.ate_food = out.ate_food;
        rec.pose_after = out.new_pose;
        result.primitives.push_back(rec);

        env.tick_environment(env_config, env_rng);

        if (performed_id != leaf) {
            interrupted = true; // actual result differed from the intended one
            break;
        }
        if (env.tick() >= env_config.trial_length && performed.size() < leaves.size()) {
            interrupted = true; // trial budget exhausted mid-sequence
            break;
        }
    }

    if (!interrupted) {
        result.enacted = intended;
    } else {
        InteractionId folded = performed.front();
        for (std::size_t i = 1; i < performed.size(); ++i)
            folded = store.composite(folded, performed[i]);
        result.enacted = folded;
    }
    return result;
}

CycleRecord EnactiveAgent::decision_cycle(MazeState& env, const EnvConfig& env_config,
                                          Rng& env_rng) {
    if (env.tick() >= env_config.trial_length)
        throw std::logic_error("decision_cycle: trial length exhausted");

    const auto activated = memory_.activate();
    const auto proposed = memory_.propose(activated);
    const Selection sel = select(proposed);
    Enaction enaction = enact(sel.intended, env, env_config, env_rng);
    const auto learned = memory_.learn(enaction.enacted);
    memory_.rebuild_context(enaction.enacted, learned);

    CycleRecord record;
    record.intended = sel.intended;
    record.enacted = enaction.enacted;
    record.enaction_succeeded = enaction.enacted == sel.intended;
    record.explored = sel.explored;
    record.primitives = std::move(enaction.primitives);
    for (const auto& p : record.primitives)
        record.food_eaten += p.ate_food ? 1 : 0;
    return record;
}

} // namespace enactlab
