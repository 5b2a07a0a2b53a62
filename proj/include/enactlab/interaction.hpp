#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "enactlab/grid_world.hpp"

namespace enactlab {

enum class Experiment : std::uint8_t { Step, TurnLeft, TurnRight };
enum class Result : std::uint8_t { Failure, Success };

using InteractionId = std::int32_t;
inline constexpr InteractionId kNoInteraction = -1;

Action experiment_action(Experiment e);

/// Interning arena for interactions. An interaction is either one of the
/// four primitives (a step that succeeded, a step that failed, a left or a
/// right turn) or a composite pair of two interactions. Structurally equal
/// interactions always share one id, so set and map operations on ids are
/// set operations on interactions.
///
/// Ids 0..3 are the primitives in canonical order:
///   (step fail) < (step ok) < (turnl ok) < (turnr ok)
class InteractionStore {
public:
    static constexpr int kNumPrimitives = 4;

    InteractionStore();

    /// Turn experiments never fail, so only four primitives exist.
    InteractionId primitive(Experiment e, Result r) const;
    InteractionId primitive_by_index(int idx) const { return idx; }

    InteractionId composite(InteractionId pre, InteractionId post);

    bool is_primitive(InteractionId id) const { return id < kNumPrimitives; }
    Experiment experiment(InteractionId id) const;
    Result result(InteractionId id) const;
    InteractionId pre(InteractionId id) const;
    InteractionId post(InteractionId id) const;

    /// Experiment of the leftmost leaf: the action enacting this
    /// interaction would perform first.
    Experiment first_experiment(InteractionId id) const;

    /// Number of primitive leaves.
    int length(InteractionId id) const { return node(id).length; }

    /// Leaf counts indexed by primitive id; valence is a dot product with
    /// these, so it is exact and O(1) in the structure size.
    const std::array<std::int32_t, kNumPrimitives>& primitive_counts(InteractionId id) const {
        return node(id).counts;
    }

    /// Fixed structural total order used for tie-breaking: primitives
    /// before composites, primitives by canonical order, composites by
    /// (pre, post) recursively. Returns <0, 0, >0.
    int compare(InteractionId a, InteractionId b) const;

    /// e.g. "((step ok) (turnl ok))"
    std::string to_sexpr(InteractionId id) const;
    InteractionId parse_sexpr(std::string_view text);

    std::size_t size() const { return nodes_.size(); }

private:
    struct Node {
        InteractionId pre = kNoInteraction;
        InteractionId post = kNoInteraction;
        std::int32_t length = 1;
        std::array<std::int32_t, kNumPrimitives> counts{};
    };

    const Node& node(InteractionId id) const { return nodes_[static_cast<std::size_t>(id)]; }

    InteractionId parse_rec(std::string_view text, std::size_t& pos);

    std::vector<Node> nodes_;
    std::unordered_map<std::uint64_t, InteractionId> pair_index_;
};

/// Intrinsic valence of each primitive; a composite's valence is the sum
/// over its primitive leaves.
struct MotivationModel {
    // Indexed by primitive id: (step fail), (step ok), (turnl ok), (turnr ok).
    std::array<double, InteractionStore::kNumPrimitives> primitive_valence{-1.0, 10.0, -0.3, -0.3};

    double valence(const InteractionStore& store, InteractionId id) const {
        const auto& counts = store.primitive_counts(id);
        double v = 0.0;
        for (int k = 0; k < InteractionStore::kNumPrimitives; ++k)
            v += counts[static_cast<std::size_t>(k)] * primitive_valence[static_cast<std::size_t>(k)];
        return v;
    }

    MotivationModel scaled(double c) const {
        MotivationModel m = *this;
        for (auto& v : m.primitive_valence)
            v *= c;
        return m;
    }
};

} // namespace enactlab
