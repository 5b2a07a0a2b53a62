#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "enactlab/grid_world.hpp"
#include "enactlab/interaction.hpp"
#include "enactlab/rng.hpp"

namespace enactlab {

/// The agent's weighted set of learned composite interactions (K) plus the
/// current context (C). Weights count enactions of the (context, enacted)
/// pair and never decrease. Every stored composite has length <= the depth
/// limit d, and its pre and post parts are themselves known interactions.
class InteractionMemory {
public:
    explicit InteractionMemory(int depth_limit, int stabilization_threshold = 2);

    InteractionStore& store() { return store_; }
    const InteractionStore& store() const { return store_; }

    int depth_limit() const { return depth_limit_; }
    int stabilization_threshold() const { return stabilization_threshold_; }

    const std::map<InteractionId, long long>& known() const { return known_; }
    const std::set<InteractionId>& context() const { return context_; }

    bool knows(InteractionId id) const {
        return store_.is_primitive(id) || known_.count(id) != 0;
    }
    long long weight(InteractionId id) const;

    /// Phase 2: composites whose pre-interaction is in the context.
    std::vector<InteractionId> activate() const;

    /// Phase 3: the post-interactions of the activated set.
    std::vector<InteractionId> propose(const std::vector<InteractionId>& activated) const;

    /// Relative frequency among composites sharing the same pre-interaction;
    /// primitives have probability 1. Throws if the interaction is unknown.
    double occurrence_probability(InteractionId id) const;

    double proclivity(InteractionId id, const MotivationModel& m) const {
        return m.valence(store_, id) * occurrence_probability(id);
    }

    /// Phase 6: for every context element c, construct or reinforce the
    /// composite (c, enacted) when its length fits the depth limit.
    /// Returns the touched set L_t. The enacted interaction itself (and any
    /// novel sub-structure a partial enaction produced) is inserted with
    /// weight 1 so the closure invariant holds.
    std::vector<InteractionId> learn(InteractionId enacted);

    /// Phase 7: context becomes the stabilized part of L_t plus the enacted
    /// interaction and, for composites, its post part.
    void rebuild_context(InteractionId enacted, const std::vector<InteractionId>& learned);

    /// For constructing memories directly (tests, warm starts).
    void add_known(InteractionId id, long long weight);
    void set_context(const std::set<InteractionId>& context);

    /// One composite per line in structural order: "<sexpr> w=<weight>".
    std::string dump() const;

private:
    void insert_structure(InteractionId id);
    void bump(InteractionId id, long long by);

    InteractionStore store_;
    int depth_limit_;
    int stabilization_threshold_;
    std::map<InteractionId, long long> known_;
    std::map<InteractionId, long long> pre_weight_sum_;
    std::set<InteractionId> context_;
};

struct EnactiveConfig {
    int d = 10;
    double alpha = 0.0;
    int stabilization_threshold = 2;
    MotivationModel motivation;
    std::uint64_t seed = 1;
};

/// The exploitation half of Phase 4: the eligible proposal (length <= d)
/// maximizing valence times anticipation evidence, where the evidence is
/// the summed weight of the activated composites predicting it (the
/// context-conditional occurrence estimate). Proposals without activation
/// support count as evidence 1. Ties break by the structural order;
/// kNoInteraction when nothing is eligible.
InteractionId greedy_choice(const InteractionMemory& memory,
                            const std::vector<InteractionId>& proposed,
                            const MotivationModel& motivation, int d);

/// One performed primitive within an enaction; one environment tick.
struct PrimitiveRecord {
    int tick = 0;                 // tick during which the action ran
    Action action = Action::Step;
    InteractionId performed = kNoInteraction;
    double valence = 0.0;
    bool ate_food = false;
    AgentPose pose_after;
};

struct CycleRecord {
    InteractionId intended = kNoInteraction;
    InteractionId enacted = kNoInteraction;
    bool enaction_succeeded = false; // enacted == intended
    bool explored = false;           // selection took the random branch
    std::vector<PrimitiveRecord> primitives;
    int food_eaten = 0;
};

/// The enactive agent: seven-phase decision cycle over an interaction
/// memory, driven by intrinsic valence. The environment is only ever
/// touched through enaction; the agent never observes cells.
class EnactiveAgent {
public:
    explicit EnactiveAgent(const EnactiveConfig& config);

    const InteractionMemory& memory() const { return memory_; }
    InteractionMemory& memory() { return memory_; }
    const EnactiveConfig& config() const { return config_; }

    struct Selection {
        InteractionId intended = kNoInteraction;
        bool explored = false;
    };

    /// Phase 4. With probability alpha a uniformly random primitive;
    /// otherwise greedy_choice over the proposals (length capped at d,
    /// ties broken by the structural order). Falls back to a random
    /// primitive when nothing usable is proposed. When the winning
    /// proposal's valence is non-positive the agent avoids the anticipated
    /// continuations instead: it intends the best success primitive whose
    /// experiment none of the proposals open with, settling for the least
    /// bad proposal only when every experiment is advised against.
    Selection select(const std::vector<InteractionId>& proposed);

    /// Phase 5. Attempts the primitive leaves left to right, stopping at
    /// the first mismatch between intended and actual result (or when the
    /// tick budget runs out). Each performed primitive consumes one
    /// environment tick.
    struct Enaction {
        InteractionId enacted = kNoInteraction;
        std::vector<PrimitiveRecord> primitives;
    };
    Enaction enact(InteractionId intended, MazeState& env, const EnvConfig& env_config,
                   Rng& env_rng);

    /// Phases 1-7 composed; advances the environment by the number of
    /// primitives actually performed.
    CycleRecord decision_cycle(MazeState& env, const EnvConfig& env_config, Rng& env_rng);

private:
    EnactiveConfig config_;
    InteractionMemory memory_;
    Rng rng_;
};

} // namespace enactlab
