#include "dgkit/rdf/store.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <set>

#include "dgkit/errors.hpp"
#include "dgkit/rdf/vocab.hpp"

namespace dgkit::rdf {

GraphStore::GraphStore(std::string graph_base, std::string default_graph)
    : graph_base_(std::move(graph_base)), default_graph_{std::move(default_graph)} {
    while (!graph_base_.empty() && graph_base_.back() == '/') graph_base_.pop_back();
}

std::string GraphStore::graph_name_token(std::string_view source_name) {
    auto slash = source_name.find_last_of("/\\");
    std::string_view base =
        slash == std::string_view::npos ? source_name : source_name.substr(slash + 1);
    auto dot = base.find_last_of('.');
    if (dot != std::string_view::npos && dot > 0) base = base.substr(0, dot);
    std::string token;
    token.reserve(base.size());
    for (char c : base)
        token.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '-');
    return token;
}

Iri GraphStore::graph_iri_for_source(std::string_view source_name) const {
    if (source_name.empty()) throw Error("load: source name must be nonempty");
    return Iri{graph_base_ + "/graphs/" + graph_name_token(source_name)};
}

GraphStore::TermId GraphStore::intern(const Term& t) {
    std::string key = term_key(t);
    auto it = term_ids_.find(key);
    if (it != term_ids_.end()) return it->second;
    TermId id = static_cast<TermId>(terms_.size());
    terms_.push_back(t);
    term_ids_.emplace(std::move(key), id);
    return id;
}

bool GraphStore::insert_ids_locked(const QuadIds& q) {
    if (spog_.contains(q)) return false;
    auto idx = static_cast<std::uint32_t>(quads_.size());
    quads_.push_back(q);
    dead_.push_back(0);
    spog_.emplace(q, idx);
    by_s_[q.subject].push_back(idx);
    by_p_[q.predicate].push_back(idx);
    by_o_[q.object].push_back(idx);
    by_g_[q.graph].push_back(idx);
    return true;
}

bool GraphStore::insert(const Quad& q) {
    if (is_literal(q.subject)) throw Error("quad subject cannot be a literal");
    std::unique_lock lock(mutex_);
    QuadIds ids{intern(q.subject), intern(Term{q.predicate}), intern(q.object),
                intern(Term{q.graph})};
    compact_if_needed_locked();
    return insert_ids_locked(ids);
}

std::size_t GraphStore::insert_with_inverse(const Quad& q) {
    std::size_t added = insert(q) ? 1 : 0;
    auto inv = inverse_of(q.predicate);
    if (inv && !is_literal(q.object)) {
        Quad back{q.object, *inv, q.subject, q.graph};
        if (insert(back)) ++added;
    }
    return added;
}

bool GraphStore::erase(const Quad& q) {
    std::unique_lock lock(mutex_);
    auto s = term_ids_.find(term_key(q.subject));
    auto p = term_ids_.find(term_key(Term{q.predicate}));
    auto o = term_ids_.find(term_key(q.object));
    auto g = term_ids_.find(term_key(Term{q.graph}));
    if (s == term_ids_.end() || p == term_ids_.end() || o == term_ids_.end() ||
        g == term_ids_.end())
        return false;
    QuadIds ids{s->second, p->second, o->second, g->second};
    auto it = spog_.find(ids);
    if (it == spog_.end()) return false;
    dead_[it->second] = 1;
    ++dead_count_;
    spog_.erase(it);
    return true;
}

void GraphStore::clear_graph(const Iri& g) {
    std::unique_lock lock(mutex_);
    auto git = term_ids_.find(term_key(Term{g}));
    if (git == term_ids_.end()) return;
    auto idx_it = by_g_.find(git->second);
    if (idx_it == by_g_.end()) return;
    for (auto idx : idx_it->second) {
        if (dead_[idx]) continue;
        dead_[idx] = 1;
        ++dead_count_;
        spog_.erase(quads_[idx]);
    }
}

void GraphStore::compact_if_needed_locked() {
    if (dead_count_ < 1024 || dead_count_ * 2 < quads_.size()) return;
    std::vector<QuadIds> live;
    live.reserve(quads_.size() - dead_count_);
    for (std::size_t i = 0; i < quads_.size(); ++i)
        if (!dead_[i]) live.push_back(quads_[i]);
    quads_ = std::move(live);
    dead_.assign(quads_.size(), 0);
    dead_count_ = 0;
    spog_.clear();
    by_s_.clear();
    by_p_.clear();
    by_o_.clear();
    by_g_.clear();
    for (std::uint32_t i = 0; i < quads_.size(); ++i) {
        const auto& q = quads_[i];
        spog_.emplace(q, i);
        by_s_[q.subject].push_back(i);
        by_p_[q.predicate].push_back(i);
        by_o_[q.object].push_back(i);
        by_g_[q.graph].push_back(i);
    }
}

LoadReport GraphStore::load(const std::vector<Quad>& quads, std::string_view source_name) {
    Iri graph = graph_iri_for_source(source_name);
    std::string genid_base =
        graph_base_ + "/.well-known/genid/" + graph_name_token(source_name) + "/";

    clear_graph(graph);

    LoadReport report{graph, 0, 0, 0};
    auto skolemise = [&](const Term& t) -> Term {
        if (auto* b = std::get_if<BlankNode>(&t)) return Iri{genid_base + b->label};
        return t;
    };
    for (const auto& q : quads) {
        Quad rewritten{skolemise(q.subject), q.predicate, skolemise(q.object), graph};
        if (insert(rewritten)) ++report.added;
        else ++report.deduped;
    }

    // inverseOf pairs may arrive in the same batch; refresh before the pass.
    rebuild_inverse_map();

    std::vector<Quad> loaded = match(std::nullopt, std::nullopt, std::nullopt, graph);
    for (const auto& q : loaded) {
        auto inv = inverse_of(q.predicate);
        if (!inv || is_literal(q.object)) continue;
        Quad back{q.object, *inv, q.subject, graph};
        if (insert(back)) ++report.inversed;
    }
    return report;
}

bool GraphStore::contains(const Quad& q) const {
    std::shared_lock lock(mutex_);
    auto s = term_ids_.find(term_key(q.subject));
    auto p = term_ids_.find(term_key(Term{q.predicate}));
    auto o = term_ids_.find(term_key(q.object));
    auto g = term_ids_.find(term_key(Term{q.graph}));
    if (s == term_ids_.end() || p == term_ids_.end() || o == term_ids_.end() ||
        g == term_ids_.end())
        return false;
    return spog_.contains(QuadIds{s->second, p->second, o->second, g->second});
}

std::size_t GraphStore::size() const {
    std::shared_lock lock(mutex_);
    return quads_.size() - dead_count_;
}

Quad GraphStore::to_quad(const QuadIds& q) const {
    return Quad{terms_[q.subject], std::get<Iri>(terms_[q.predicate]), terms_[q.object],
                std::get<Iri>(terms_[q.graph])};
}

std::vector<Quad> GraphStore::match(const std::optional<Term>& s, const std::optional<Iri>& p,
                                    const std::optional<Term>& o,
                                    const std::optional<Iri>& g) const {
    std::size_t count = 0;
    for_each_match(s, p, o, g, [&](const Term&, const Iri&, const Term&, const Iri&) { ++count; });
    std::vector<Quad> out;
    out.reserve(count);
    for_each_match(s, p, o, g, [&](const Term& sj, const Iri& pr, const Term& ob, const Iri& gr) {
        out.push_back(Quad{sj, pr, ob, gr});
    });
    return out;
}

void GraphStore::for_each_match(const std::optional<Term>& s, const std::optional<Iri>& p,
                                const std::optional<Term>& o, const std::optional<Iri>& g,
                                const QuadVisitor& visit) const {
    std::shared_lock lock(mutex_);
    auto lookup = [&](const Term& t) -> std::optional<TermId> {
        auto it = term_ids_.find(term_key(t));
        if (it == term_ids_.end()) return std::nullopt;
        return it->second;
    };

    std::optional<TermId> si, pi, oi, gi;
    if (s) { si = lookup(*s); if (!si) return; }
    if (p) { pi = lookup(Term{*p}); if (!pi) return; }
    if (o) { oi = lookup(*o); if (!oi) return; }
    if (g) { gi = lookup(Term{*g}); if (!gi) return; }

    const std::vector<std::uint32_t>* candidates = nullptr;
    static const std::vector<std::uint32_t> empty;
    auto consider = [&](const std::unordered_map<TermId, std::vector<std::uint32_t>>& index,
                        std::optional<TermId> id) {
        if (!id) return true;
        auto it = index.find(*id);
        const auto* vec = it == index.end() ? &empty : &it->second;
        if (!candidates || vec->size() < candidates->size()) candidates = vec;
        return !vec->empty();
    };
    if (!consider(by_s_, si) || !consider(by_p_, pi) || !consider(by_o_, oi) ||
        !consider(by_g_, gi))
        return;

    auto matches = [&](const QuadIds& q) {
        return (!si || q.subject == *si) && (!pi || q.predicate == *pi) &&
               (!oi || q.object == *oi) && (!gi || q.graph == *gi);
    };
    auto emit = [&](const QuadIds& q) {
        visit(terms_[q.subject], std::get<Iri>(terms_[q.predicate]), terms_[q.object],
              std::get<Iri>(terms_[q.graph]));
    };

    if (candidates) {
        for (auto idx : *candidates) {
            if (dead_[idx]) continue;
            if (matches(quads_[idx])) emit(quads_[idx]);
        }
    } else {
        for (std::size_t i = 0; i < quads_.size(); ++i)
            if (!dead_[i]) emit(quads_[i]);
    }
}

std::vector<Quad> GraphStore::all_quads() const {
    return match();
}

std::vector<Term> GraphStore::subjects(const std::optional<Iri>& p,
                                       const std::optional<Term>& o) const {
    auto quads = match(std::nullopt, p, o, std::nullopt);
    std::set<std::string> seen;
    std::vector<Term> out;
    for (const auto& q : quads)
        if (seen.insert(term_key(q.subject)).second) out.push_back(q.subject);
    std::sort(out.begin(), out.end(),
              [](const Term& a, const Term& b) { return term_key(a) < term_key(b); });
    return out;
}

std::vector<Term> GraphStore::objects(const Term& s, const Iri& p) const {
    auto quads = match(s, p, std::nullopt, std::nullopt);
    std::set<std::string> seen;
    std::vector<Term> out;
    for (const auto& q : quads)
        if (seen.insert(term_key(q.object)).second) out.push_back(q.object);
    std::sort(out.begin(), out.end(),
              [](const Term& a, const Term& b) { return term_key(a) < term_key(b); });
    return out;
}

std::optional<Term> GraphStore::first_object(const Term& s, const Iri& p) const {
    auto objs = objects(s, p);
    if (objs.empty()) return std::nullopt;
    return objs.front();
}

std::optional<GraphStore::TermId> GraphStore::find_id(const Term& t) const {
    std::shared_lock lock(mutex_);
    auto it = term_ids_.find(term_key(t));
    if (it == term_ids_.end()) return std::nullopt;
    return it->second;
}

Term GraphStore::term_of(TermId id) const {
    std::shared_lock lock(mutex_);
    return terms_.at(id);
}

void GraphStore::match_ids(std::optional<TermId> s, std::optional<TermId> p,
                           std::optional<TermId> o, std::optional<TermId> g,
                           std::vector<QuadIds>& out) const {
    // Callers hand in valid ids; a shared lock protects index access. The
    // candidate list is the smallest index among bound positions.
    std::shared_lock lock(mutex_);
    out.clear();

    const std::vector<std::uint32_t>* candidates = nullptr;
    static const std::vector<std::uint32_t> empty;
    auto consider = [&](const std::unordered_map<TermId, std::vector<std::uint32_t>>& index,
                        std::optional<TermId> id) {
        if (!id) return true;
        auto it = index.find(*id);
        const auto* vec = it == index.end() ? &empty : &it->second;
        if (!candidates || vec->size() < candidates->size()) candidates = vec;
        return !vec->empty();
    };
    if (!consider(by_s_, s) || !consider(by_p_, p) || !consider(by_o_, o) ||
        !consider(by_g_, g))
        return;

    auto matches = [&](const QuadIds& q) {
        return (!s || q.subject == *s) && (!p || q.predicate == *p) &&
               (!o || q.object == *o) && (!g || q.graph == *g);
    };

    if (candidates) {
        out.reserve(candidates->size());
        for (auto idx : *candidates) {
            if (dead_[idx]) continue;
            if (matches(quads_[idx])) out.push_back(quads_[idx]);
        }
    } else {
        out.reserve(quads_.size() - dead_count_);
        for (std::size_t i = 0; i < quads_.size(); ++i)
            if (!dead_[i]) out.push_back(quads_[i]);
    }
}

std::size_t GraphStore::estimate(std::optional<TermId> s, std::optional<TermId> p,
                                 std::optional<TermId> o, std::optional<TermId> g) const {
    std::shared_lock lock(mutex_);
    std::size_t best = quads_.size() - dead_count_;
    auto consider = [&](const std::unordered_map<TermId, std::vector<std::uint32_t>>& index,
                        std::optional<TermId> id) {
        if (!id) return;
        auto it = index.find(*id);
        best = std::min(best, it == index.end() ? std::size_t{0} : it->second.size());
    };
    consider(by_s_, s);
    consider(by_p_, p);
    consider(by_o_, o);
    consider(by_g_, g);
    return best;
}

std::optional<Iri> GraphStore::inverse_of(const Iri& p) const {
    std::shared_lock lock(mutex_);
    auto it = inverse_map_.find(p.value);
    if (it == inverse_map_.end()) return std::nullopt;
    return Iri{it->second};
}

void GraphStore::rebuild_inverse_map() {
    auto decls = match(std::nullopt, vocab::owl_inverse_of(), std::nullopt, std::nullopt);
    std::unique_lock lock(mutex_);
    inverse_map_.clear();
    std::sort(decls.begin(), decls.end(), quad_less);
    for (const auto& q : decls) {
        auto* subj = std::get_if<Iri>(&q.subject);
        auto* obj = std::get_if<Iri>(&q.object);
        if (!subj || !obj) continue;
        if (!inverse_map_.contains(subj->value)) inverse_map_[subj->value] = obj->value;
        if (!inverse_map_.contains(obj->value)) inverse_map_[obj->value] = subj->value;
    }
}

} // namespace dgkit::rdf
