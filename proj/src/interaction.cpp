#include "enactlab/interaction.hpp"

#include <stdexcept>

namespace enactlab {

namespace {

constexpr std::uint64_t pair_key(InteractionId pre, InteractionId post) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(pre)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(post));
}

// Canonical primitive ids.
constexpr InteractionId kStepFail = 0;
constexpr InteractionId kStepOk = 1;
constexpr InteractionId kTurnLeftOk = 2;
constexpr InteractionId kTurnRightOk = 3;

} // namespace

Action experiment_action(Experiment e) {
    switch (e) {
    case Experiment::Step: return Action::Step;
    case Experiment::TurnLeft: return Action::TurnLeft;
    case Experiment::TurnRight: return Action::TurnRight;
    }
    return Action::Step;
}

InteractionStore::InteractionStore() {
    nodes_.resize(kNumPrimitives);
    for (InteractionId id = 0; id < kNumPrimitives; ++id) {
        nodes_[static_cast<std::size_t>(id)].length = 1;
        nodes_[static_cast<std::size_t>(id)].counts[static_cast<std::size_t>(id)] = 1;
    }
}

InteractionId InteractionStore::primitive(Experiment e, Result r) const {
    switch (e) {
    case Experiment::Step:
        return r == Result::Failure ? kStepFail : kStepOk;
    case Experiment::TurnLeft:
        if (r == Result::Failure)
            throw std::invalid_argument("turn primitives never carry Failure");
        return kTurnLeftOk;
    case Experiment::TurnRight:
        if (r == Result::Failure)
            throw std::invalid_argument("turn primitives never carry Failure");
        return kTurnRightOk;
    }
    throw std::invalid_argument("unknown experiment");
}

InteractionId InteractionStore::composite(InteractionId pre, InteractionId post) {
    const std::uint64_t key = pair_key(pre, post);
    auto it = pair_index_.find(key);
    if (it != pair_index_.end())
        return it->second;

    Node n;
    n.pre = pre;
    n.post = post;
    n.length = node(pre).length + node(post).length;
    for (int k = 0; k < kNumPrimitives; ++k)
        n.counts[static_cast<std::size_t>(k)] =
            node(pre).counts[static_cast<std::size_t>(k)] +
            node(post).counts[static_cast<std::size_t>(k)];

    const InteractionId id = static_cast<InteractionId>(nodes_.size());
    nodes_.push_back(n);
    pair_index_.emplace(key, id);
    return id;
}

Experiment InteractionStore::experiment(InteractionId id) const {
    switch (id) {
    case kStepFail:
    case kStepOk: return Experiment::Step;
    case kTurnLeftOk: return Experiment::TurnLeft;
    case kTurnRightOk: return Experiment::TurnRight;
    default: throw std::invalid_argument("experiment() on a composite");
    }
}

Result InteractionStore::result(InteractionId id) const {
    if (!is_primitive(id))
        throw std::invalid_argument("result() on a composite");
    return id == kStepFail ? Result::Failure : Result::Success;
}

InteractionId InteractionStore::pre(InteractionId id) const {
    if (is_primitive(id))
        throw std::invalid_argument("pre() on a primitive");
    return node(id).pre;
}

InteractionId InteractionStore::post(InteractionId id) const {
    if (is_primitive(id))
        throw std::invalid_argument("post() on a primitive");
    return node(id).post;
}

Experiment InteractionStore::first_experiment(InteractionId id) const {
    while (!is_primitive(id))
        id = node(id).pre;
    return experiment(id);
}

int InteractionStore::compare(InteractionId a, InteractionId b) const {
    if (a == b)
        return 0;
    const bool pa = is_primitive(a);
    const bool pb = is_primitive(b);
    if (pa != pb)
        return pa ? -1 : 1;
    if (pa)
        return a < b ? -1 : 1; // canonical primitive ids are already ordered
    if (const int c = compare(node(a).pre, node(b).pre); c != 0)
        return c;
    return compare(node(a).post, node(b).post);
}

std::string InteractionStore::to_sexpr(InteractionId id) const {
    switch (id) {
    case kStepFail: return "(step fail)";
    case kStepOk: return "(step ok)";
    case kTurnLeftOk: return "(turnl ok)";
    case kTurnRightOk: return "(turnr ok)";
    default:
        return "(" + to_sexpr(node(id).pre) + " " + to_sexpr(node(id).post) + ")";
    }
}

namespace {

void skip_spaces(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
        ++pos;
}

std::string_view read_atom(std::string_view text, std::size_t& pos) {
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != ')' && text[pos] != '(')
        ++pos;
    return text.substr(start, pos - start);
}

} // namespace

InteractionId InteractionStore::parse_rec(std::string_view text, std::size_t& pos) {
    skip_spaces(text, pos);
    if (pos >= text.size() || text[pos] != '(')
        throw std::invalid_argument("interaction sexpr: expected '('");
    ++pos;
    skip_spaces(text, pos);
    if (pos >= text.size())
        throw std::invalid_argument("interaction sexpr: truncated");

    InteractionId id;
    if (text[pos] == '(') {
        const InteractionId a = parse_rec(text, pos);
        const InteractionId b = parse_rec(text, pos);
        id = composite(a, b);
    } else {
        const std::string_view exp = read_atom(text, pos);
        skip_spaces(text, pos);
        const std::string_view res = read_atom(text, pos);
        Experiment e;
        if (exp == "step")
            e = Experiment::Step;
        else if (exp == "turnl")
            e = Experiment::TurnLeft;
        else if (exp == "turnr")
            e = Experiment::TurnRight;
        else
            throw std::invalid_argument("interaction sexpr: unknown experiment atom");
        Result r;
        if (res == "ok")
            r = Result::Success;
        else if (res == "fail")
            r = Result::Failure;
        else
            throw std::invalid_argument("interaction sexpr: unknown result atom");
        id = primitive(e, r);
    }
    skip_spaces(text, pos);
    if (pos >= text.size() || text[pos] != ')')
        throw std::invalid_argument("interaction sexpr: expected ')'");
    ++pos;
    return id;
}

InteractionId InteractionStore::parse_sexpr(std::string_view text) {
    std::size_t pos = 0;
    const InteractionId id = parse_rec(text, pos);
    skip_spaces(text, pos);
    if (pos != text.size())
        throw std::invalid_argument("interaction sexpr: trailing characters");
    return id;
}

} // namespace enactlab
