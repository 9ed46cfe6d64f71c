#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dgkit/rdf/term.hpp"

namespace dgkit::rdf {

struct LoadReport {
    Iri graph;
    std::size_t added = 0;
    std::size_t deduped = 0;
    std::size_t inversed = 0;
};

// In-memory quad store with per-position indexes and spog identity.
//
// Loader semantics: one source file maps to one named graph (file-name
// based), the graph is cleared before the new content lands, spog
// duplicates collapse, and owl:inverseOf pairs present in the store are
// materialised as a post-load pass over the loaded graph. Blank nodes are
// skolemised on load so identity is stable across reloads.
//
// Concurrency: any number of concurrent readers or one exclusive writer.
class GraphStore {
public:
    using TermId = std::uint32_t;

    struct QuadIds {
        TermId subject, predicate, object, graph;
        bool operator==(const QuadIds&) const = default;
    };

    explicit GraphStore(std::string graph_base = "https://example.org",
                        std::string default_graph = "https://example.org/graphs/default");

    // file name -> graph token: basename, extension stripped,
    // non-alphanumerics replaced by '-'.
    static std::string graph_name_token(std::string_view source_name);
    Iri graph_iri_for_source(std::string_view source_name) const;
    const Iri& default_graph() const { return default_graph_; }
    const std::string& graph_base() const { return graph_base_; }

    bool insert(const Quad& q);
    // Insert plus inverse materialisation for this one quad (registration path).
    std::size_t insert_with_inverse(const Quad& q);
    bool erase(const Quad& q);
    void clear_graph(const Iri& g);

    LoadReport load(const std::vector<Quad>& quads, std::string_view source_name);

    bool contains(const Quad& q) const;
    std::size_t size() const;

    std::vector<Quad> match(const std::optional<Term>& s = std::nullopt,
                            const std::optional<Iri>& p = std::nullopt,
                            const std::optional<Term>& o = std::nullopt,
                            const std::optional<Iri>& g = std::nullopt) const;
    std::vector<Quad> all_quads() const;

    // Zero-copy variant: visits (subject, predicate, object, graph) for each
    // matching quad. References are valid only during the visit.
    using QuadVisitor =
        std::function<void(const Term&, const Iri&, const Term&, const Iri&)>;
    void for_each_match(const std::optional<Term>& s, const std::optional<Iri>& p,
                        const std::optional<Term>& o, const std::optional<Iri>& g,
                        const QuadVisitor& visit) const;

    // Distinct subject terms of quads matching (p, o, g).
    std::vector<Term> subjects(const std::optional<Iri>& p = std::nullopt,
                               const std::optional<Term>& o = std::nullopt) const;
    // Objects of quads matching (s, p).
    std::vector<Term> objects(const Term& s, const Iri& p) const;
    std::optional<Term> first_object(const Term& s, const Iri& p) const;

    // Id-level surface for the query engine. Ids are stable for the lifetime
    // of the store; dead quads are skipped.
    std::optional<TermId> find_id(const Term& t) const;
    Term term_of(TermId id) const;
    void match_ids(std::optional<TermId> s, std::optional<TermId> p,
                   std::optional<TermId> o, std::optional<TermId> g,
                   std::vector<QuadIds>& out) const;
    // Upper bound on match count, for join planning.
    std::size_t estimate(std::optional<TermId> s, std::optional<TermId> p,
                         std::optional<TermId> o, std::optional<TermId> g) const;

    // Predicate inverse declared via owl:inverseOf, if any.
    std::optional<Iri> inverse_of(const Iri& p) const;
    void rebuild_inverse_map();

private:
    TermId intern(const Term& t);
    bool insert_ids_locked(const QuadIds& q);
    void compact_if_needed_locked();
    Quad to_quad(const QuadIds& q) const;

    struct KeyHash {
        std::size_t operator()(const QuadIds& k) const {
            std::uint64_t h = 1469598103934665603ULL;
            for (std::uint64_t v : {k.subject, k.predicate, k.object, k.graph}) {
                h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
                h *= 1099511628211ULL;
            }
            return static_cast<std::size_t>(h);
        }
    };

    std::string graph_base_;
    Iri default_graph_;

    std::vector<Term> terms_;
    std::unordered_map<std::string, TermId> term_ids_;

    std::vector<QuadIds> quads_;
    std::vector<char> dead_;
    std::size_t dead_count_ = 0;
    std::unordered_map<QuadIds, std::uint32_t, KeyHash> spog_;
    std::unordered_map<TermId, std::vector<std::uint32_t>> by_s_, by_p_, by_o_, by_g_;

    std::unordered_map<std::string, std::string> inverse_map_; // predicate IRI -> inverse IRI

    mutable std::shared_mutex mutex_;
};

} // namespace dgkit::rdf
