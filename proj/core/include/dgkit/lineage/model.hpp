#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgkit/config.hpp"
#include "dgkit/rdf/store.hpp"

namespace dgkit::lineage {

// Executable derivation kinds; everything else in the transformation
// inventory stays Opaque: lineage displays it, the interpreter refuses it.
enum class RuleKind { CopyElement, Dtc, Dtn, StudyDay, Opaque };
std::string to_string(RuleKind kind);
std::optional<RuleKind> rule_kind_from(std::string_view s);

// A clinical variable at one data stage of the unified model.
struct VariableNode {
    rdf::Iri uri;
    std::string standard; // e.g. GSK, NOVDD, NCDS, SDTM, ADaM
    std::string domain;   // e.g. AE, DM
    std::string name;     // e.g. AEENDY, SEX
    int data_stage = 1;
    std::string fully_qualified_label;
    std::optional<rdf::Iri> broader;        // conceptual variable
    std::optional<rdf::Iri> reference_list; // controlled values
};

struct Derivation {
    rdf::Iri uri;
    std::string name;      // e.g. "NCDS COPY_ELEMENT"
    std::string rule_text; // verbatim transformation rule
    RuleKind rule_kind = RuleKind::Opaque;
    std::vector<rdf::Iri> inputs;
    std::vector<rdf::Iri> outputs;
};

// Registration and readback of UCM entities as quads. Forward edges are
// asserted; inverse predicates materialise through the store's inverse map.
class UcmModel {
public:
    UcmModel(rdf::GraphStore& store, const ToolkitConfig& config);
    UcmModel(rdf::GraphStore& store, const ToolkitConfig& config, rdf::Iri graph);

    rdf::Iri register_variable(const VariableNode& v);
    rdf::Iri register_derivation(const Derivation& d);

    bool is_registered_variable(const rdf::Iri& uri) const;
    std::optional<VariableNode> read_variable(const rdf::Iri& uri) const;
    std::optional<Derivation> read_derivation(const rdf::Iri& uri) const;

    // Record column a variable binds to: its declared name token.
    std::optional<std::string> variable_name(const rdf::Iri& uri) const;

    rdf::GraphStore& store() const { return store_; }
    const ToolkitConfig& config() const { return config_; }
    const rdf::Iri& graph() const { return graph_; }

private:
    void check_arity(const Derivation& d) const;

    rdf::GraphStore& store_;
    const ToolkitConfig& config_;
    rdf::Iri graph_;
};

} // namespace dgkit::lineage
