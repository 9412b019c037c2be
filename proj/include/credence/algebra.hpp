#pragma once

// Finite world spaces and propositions as subsets of their atoms.
// Propositions are extensional: two values over the same space with the
// same member set are equal, whatever formulas produced them.

#include <boost/dynamic_bitset.hpp>

#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "credence/errors.hpp"

namespace credence {

class WorldSpace {
  public:
    explicit WorldSpace(std::vector<std::string> labels) : atoms_(std::move(labels)) {
        if (atoms_.empty()) throw DomainError("a world space needs at least one atom");
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (atoms_[i].empty()) throw DomainError("atom labels must be non-empty");
            auto [it, inserted] = index_.emplace(atoms_[i], i);
            if (!inserted) throw DomainError("duplicate atom label '" + atoms_[i] + "'");
        }
    }

    std::size_t size() const noexcept { return atoms_.size(); }
    const std::vector<std::string>& atoms() const noexcept { return atoms_; }
    const std::string& label(std::size_t i) const { return atoms_.at(i); }

    std::optional<std::size_t> index_of(std::string_view label) const {
        auto it = index_.find(std::string(label));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    // Identity is structural so that reloaded spaces compose with live ones.
    bool operator==(const WorldSpace& other) const { return atoms_ == other.atoms_; }

  private:
    std::vector<std::string> atoms_;
    std::unordered_map<std::string, std::size_t> index_;
};

using SpacePtr = std::shared_ptr<const WorldSpace>;

inline SpacePtr make_space(std::vector<std::string> labels) {
    return std::make_shared<const WorldSpace>(std::move(labels));
}

inline SpacePtr make_space(std::initializer_list<const char*> labels) {
    std::vector<std::string> v(labels.begin(), labels.end());
    return make_space(std::move(v));
}

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
    if (!a || !b) return false;
    return a == b || *a == *b;
}

inline void require_same_space(const SpacePtr& a, const SpacePtr& b) {
    if (!same_space(a, b)) throw DomainError("propositions belong to different world spaces");
}

using AtomSet = boost::dynamic_bitset<>;

class Proposition {
  public:
    Proposition(SpacePtr space, AtomSet members, std::string name = {})
        : space_(std::move(space)), members_(std::move(members)), name_(std::move(name)) {
        if (!space_) throw DomainError("proposition needs a world space");
        if (members_.size() != space_->size())
            throw DomainError("member set size does not match the atom count");
    }

    static Proposition none(SpacePtr space) {
        AtomSet bits(space->size());
        return Proposition(std::move(space), std::move(bits));
    }

    static Proposition all(SpacePtr space) {
        AtomSet bits(space->size());
        bits.set();
        return Proposition(std::move(space), std::move(bits));
    }

    static Proposition atom(SpacePtr space, std::size_t index) {
        if (index >= space->size()) throw DomainError("atom index out of range");
        AtomSet bits(space->size());
        bits.set(index);
        return Proposition(std::move(space), std::move(bits));
    }

    static Proposition of_indices(SpacePtr space, const std::vector<std::size_t>& indices,
                                  std::string name = {}) {
        AtomSet bits(space->size());
        for (auto i : indices) {
            if (i >= space->size()) throw DomainError("atom index out of range");
            bits.set(i);
        }
        return Proposition(std::move(space), std::move(bits), std::move(name));
    }

    const SpacePtr& space() const noexcept { return space_; }
    const AtomSet& members() const noexcept { return members_; }
    const std::string& name() const noexcept { return name_; }

    Proposition named(std::string name) const {
        return Proposition(space_, members_, std::move(name));
    }

    bool contains(std::size_t atom_index) const { return members_.test(atom_index); }
    std::size_t count() const { return members_.count(); }
    bool is_empty() const { return members_.none(); }
    bool is_full() const { return members_.all(); }

    std::vector<std::size_t> member_indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for (auto i = members_.find_first(); i != AtomSet::npos; i = members_.find_next(i))
            out.push_back(i);
        return out;
    }

    // Extensional equality; display names do not participate.
    bool operator==(const Proposition& other) const {
        return same_space(space_, other.space_) && members_ == other.members_;
    }

  private:
    SpacePtr space_;
    AtomSet members_;
    std::string name_;
};

inline Proposition conjunction(const Proposition& a, const Proposition& b) {
    require_same_space(a.space(), b.space());
    return Proposition(a.space(), a.members() & b.members());
}

inline Proposition disjunction(const Proposition& a, const Proposition& b) {
    require_same_space(a.space(), b.space());
    return Proposition(a.space(), a.members() | b.members());
}

inline Proposition negation(const Proposition& a) {
    return Proposition(a.space(), ~a.members());
}

// A -> B is the material conditional: ~A | B.
inline Proposition implication(const Proposition& a, const Proposition& b) {
    require_same_space(a.space(), b.space());
    return Proposition(a.space(), ~a.members() | b.members());
}

// Logical consequence is the subset relation on member sets.
inline bool entails(const Proposition& a, const Proposition& b) {
    require_same_space(a.space(), b.space());
    return a.members().is_subset_of(b.members());
}

inline Proposition operator&(const Proposition& a, const Proposition& b) { return conjunction(a, b); }
inline Proposition operator|(const Proposition& a, const Proposition& b) { return disjunction(a, b); }
inline Proposition operator~(const Proposition& a) { return negation(a); }

enum class Connective { And, Or, Not, Implies };

inline Proposition combine(Connective op, const std::vector<Proposition>& args) {
    auto expect = [&](std::size_t n) {
        if (args.size() != n)
            throw DomainError("connective expects " + std::to_string(n) + " arguments, got " +
                              std::to_string(args.size()));
    };
    switch (op) {
        case Connective::Not: expect(1); return negation(args[0]);
        case Connective::And: expect(2); return conjunction(args[0], args[1]);
        case Connective::Or: expect(2); return disjunction(args[0], args[1]);
        case Connective::Implies: expect(2); return implication(args[0], args[1]);
    }
    throw DomainError("unknown connective");
}

} // namespace credence
