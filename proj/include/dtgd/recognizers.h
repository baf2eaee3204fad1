#pragma once

#include "dtgd/model.h"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace dtgd {

enum class RuleClass {
    Datalog,
    AfInds,
    InclusionDependencies,
    Linear,
    Joinless,
    Guarded,
    WeaklyGuarded,
    Sticky,
    WeaklyAcyclic,
    JointlyAcyclic,
    Shy,
    Ward,
};

inline constexpr std::array<RuleClass, 12> kAllRuleClasses = {
    RuleClass::Datalog,        RuleClass::AfInds,        RuleClass::InclusionDependencies,
    RuleClass::Linear,         RuleClass::Joinless,      RuleClass::Guarded,
    RuleClass::WeaklyGuarded,  RuleClass::Sticky,        RuleClass::WeaklyAcyclic,
    RuleClass::JointlyAcyclic, RuleClass::Shy,           RuleClass::Ward,
};

/// A class name, optionally wrapped as DyadicOf(base). Nesting is limited to
/// one level by construction.
struct ClassName {
    RuleClass base = RuleClass::Datalog;
    bool dyadic = false;

    static ClassName plain(RuleClass c) { return {c, false}; }
    static ClassName dyadicOf(RuleClass c) { return {c, true}; }

    bool operator==(const ClassName& o) const { return base == o.base && dyadic == o.dyadic; }
};

std::string to_string(RuleClass c);
std::string to_string(const ClassName& c);

/// Accepts the twelve plain names plus "DyadicOf(<name>)".
/// Throws UnsupportedClassError.
ClassName parseClassName(std::string_view name);

/// Membership verdict; the witness describes the first violation and is
/// nonempty exactly when member is false.
struct Verdict {
    bool member = false;
    std::string witness;
};

/// Decides membership of a renamed-apart ontology in the given class.
/// DyadicOf(C) holds when the ontology or its main-rule rewriting is in C.
Verdict recognize(const Ontology& ontology, const ClassName& className);

struct ClassReport {
    std::vector<std::pair<ClassName, Verdict>> entries;

    const Verdict* find(const ClassName& name) const;
};

/// Runs every plain recognizer plus its dyadic counterpart.
ClassReport classifyAll(const Ontology& ontology);

} // namespace dtgd
