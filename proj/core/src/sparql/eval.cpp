#include <algorithm>
#include <cstdlib>
#include <map>
#include <regex>
#include <set>

#include "dgkit/errors.hpp"
#include "dgkit/sparql/query.hpp"

namespace dgkit::sparql {

namespace {

using rdf::GraphStore;
using TermId = GraphStore::TermId;

struct ExecPattern {
    // var slot per position, or -1 when the position is a constant
    int s_var = -1, p_var = -1, o_var = -1;
    std::optional<TermId> s_id, p_id, o_id;
    bool dead = false; // a constant term missing from the store
};

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

bool is_numeric_literal(const rdf::Term& t, double& out) {
    auto* lit = std::get_if<rdf::Literal>(&t);
    if (!lit) return false;
    return parse_double(lit->lexical(), out);
}

// unbound first; numeric when both numeric; codepoint otherwise
int compare_cells(const std::optional<rdf::Term>& a, const std::optional<rdf::Term>& b) {
    if (!a && !b) return 0;
    if (!a) return -1;
    if (!b) return 1;
    double da = 0, db = 0;
    if (is_numeric_literal(*a, da) && is_numeric_literal(*b, db)) {
        if (da < db) return -1;
        if (da > db) return 1;
    }
    std::string ta = rdf::term_text(*a), tb = rdf::term_text(*b);
    if (ta < tb) return -1;
    if (ta > tb) return 1;
    // distinguish IRIs from equal-text literals for a total order
    std::string ka = rdf::term_key(*a), kb = rdf::term_key(*b);
    return ka < kb ? -1 : ka > kb ? 1 : 0;
}

class Evaluator {
public:
    Evaluator(const Query& query, const GraphStore& store) : query_(query), store_(store) {}

    SolutionTable run() {
        index_variables();
        resolve_patterns();
        compile_filters();

        SolutionTable table;
        table.vars = query_.select_vars;

        bool any_dead = std::any_of(patterns_.begin(), patterns_.end(),
                                    [](const ExecPattern& p) { return p.dead; });
        if (!any_dead) {
            plan();
            bindings_.assign(var_names_.size(), std::nullopt);
            join(0);
        }

        project_and_finish(table);
        return table;
    }

private:
    int slot(const std::string& name) {
        auto it = var_slots_.find(name);
        if (it != var_slots_.end()) return it->second;
        int id = static_cast<int>(var_names_.size());
        var_slots_.emplace(name, id);
        var_names_.push_back(name);
        return id;
    }

    void index_variables() {
        for (const auto& p : query_.patterns)
            for (const auto* t : {&p.subject, &p.predicate, &p.object})
                if (auto* v = std::get_if<Variable>(t)) slot(v->name);
        for (const auto& f : query_.filters) slot(f.variable);
        // projection carries order-by variables so sorting can see them
        proj_vars_.clear();
        for (const auto& v : query_.select_vars) proj_vars_.push_back(v);
        for (const auto& v : query_.order_by)
            if (std::find(proj_vars_.begin(), proj_vars_.end(), v) == proj_vars_.end())
                proj_vars_.push_back(v);
    }

    void resolve_patterns() {
        for (const auto& p : query_.patterns) {
            ExecPattern ep;
            auto fill = [&](const PatternTerm& t, int& var, std::optional<TermId>& id) {
                if (auto* v = std::get_if<Variable>(&t)) {
                    var = slot(v->name);
                    return;
                }
                rdf::Term term = std::holds_alternative<rdf::Iri>(t)
                                     ? rdf::Term{std::get<rdf::Iri>(t)}
                                     : rdf::Term{std::get<rdf::Literal>(t)};
                auto found = store_.find_id(term);
                if (!found) ep.dead = true;
                else id = *found;
            };
            fill(p.subject, ep.s_var, ep.s_id);
            fill(p.predicate, ep.p_var, ep.p_id);
            fill(p.object, ep.o_var, ep.o_id);
            patterns_.push_back(ep);
        }
    }

    void compile_filters() {
        filters_by_slot_.assign(var_names_.size(), {});
        for (const auto& f : query_.filters) {
            try {
                filters_by_slot_[static_cast<std::size_t>(slot(f.variable))].emplace_back(
                    f.pattern, std::regex::ECMAScript);
            } catch (const std::regex_error& e) {
                throw Error("bad FILTER regex '" + f.pattern + "': " + e.what());
            }
        }
    }

    // Greedy: cheapest estimated pattern first, heavily preferring patterns
    // connected to already-bound variables so joins stay index-driven.
    void plan() {
        std::size_t n = patterns_.size();
        std::vector<bool> placed(n, false);
        std::set<int> bound;
        order_.clear();
        for (std::size_t step = 0; step < n; ++step) {
            double best_score = 0;
            std::size_t best = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (placed[i]) continue;
                const auto& p = patterns_[i];
                double base = static_cast<double>(
                    store_.estimate(p.s_id, p.p_id, p.o_id, std::nullopt));
                int bound_vars = 0;
                bool connected = false;
                for (int v : {p.s_var, p.p_var, p.o_var}) {
                    if (v >= 0 && bound.contains(v)) {
                        ++bound_vars;
                        connected = true;
                    }
                }
                double score = base / (1.0 + 15.0 * bound_vars);
                if (!bound.empty() && !connected) score += 1e15;
                if (best == n || score < best_score) {
                    best = i;
                    best_score = score;
                }
            }
            placed[best] = true;
            order_.push_back(best);
            const auto& p = patterns_[best];
            for (int v : {p.s_var, p.p_var, p.o_var})
                if (v >= 0) bound.insert(v);
        }
    }

    bool apply_filters(int slot_id, TermId term_id) {
        auto& regexes = filters_by_slot_[static_cast<std::size_t>(slot_id)];
        if (regexes.empty()) return true;
        std::string txt = rdf::term_text(store_.term_of(term_id));
        for (const auto& re : regexes)
            if (!std::regex_search(txt, re)) return false;
        return true;
    }

    void join(std::size_t depth) {
        if (depth == order_.size()) {
            emit_row();
            return;
        }
        const ExecPattern& p = patterns_[order_[depth]];

        auto bound_or_const = [&](int var, const std::optional<TermId>& cid) -> std::optional<TermId> {
            if (cid) return cid;
            if (var >= 0 && bindings_[static_cast<std::size_t>(var)])
                return bindings_[static_cast<std::size_t>(var)];
            return std::nullopt;
        };
        std::optional<TermId> s = bound_or_const(p.s_var, p.s_id);
        std::optional<TermId> o = bound_or_const(p.o_var, p.o_id);
        std::optional<TermId> pr = bound_or_const(p.p_var, p.p_id);

        std::vector<GraphStore::QuadIds> candidates;
        store_.match_ids(s, pr, o, std::nullopt, candidates);

        for (const auto& q : candidates) {
            int newly_bound[3];
            int bound_count = 0;
            bool ok = true;
            auto bind = [&](int var, TermId value) {
                if (var < 0) return;
                auto& cell = bindings_[static_cast<std::size_t>(var)];
                if (cell) {
                    if (*cell != value) ok = false;
                    return;
                }
                if (!apply_filters(var, value)) {
                    ok = false;
                    return;
                }
                cell = value;
                newly_bound[bound_count++] = var;
            };
            bind(p.s_var, q.subject);
            if (ok) bind(p.p_var, q.predicate);
            if (ok) bind(p.o_var, q.object);
            if (ok) join(depth + 1);
            for (int i = bound_count - 1; i >= 0; --i)
                bindings_[static_cast<std::size_t>(newly_bound[i])].reset();
        }
    }

    void emit_row() {
        // filters over never-bound variables reject the row
        for (std::size_t v = 0; v < var_names_.size(); ++v)
            if (!filters_by_slot_[v].empty() && !bindings_[v]) return;

        std::vector<std::optional<rdf::Term>> row;
        row.reserve(proj_vars_.size());
        for (const auto& name : proj_vars_) {
            auto it = var_slots_.find(name);
            if (it == var_slots_.end() || !bindings_[static_cast<std::size_t>(it->second)]) {
                row.push_back(std::nullopt);
            } else {
                row.push_back(
                    store_.term_of(*bindings_[static_cast<std::size_t>(it->second)]));
            }
        }
        raw_rows_.push_back(std::move(row));
    }

    void project_and_finish(SolutionTable& table) {
        // sort on order-by keys, then remaining select vars
        if (!query_.order_by.empty()) {
            std::vector<std::size_t> key_idx;
            for (const auto& v : query_.order_by)
                key_idx.push_back(static_cast<std::size_t>(
                    std::find(proj_vars_.begin(), proj_vars_.end(), v) - proj_vars_.begin()));
            for (std::size_t i = 0; i < query_.select_vars.size(); ++i) {
                auto already = std::find(query_.order_by.begin(), query_.order_by.end(),
                                         query_.select_vars[i]) != query_.order_by.end();
                if (!already) key_idx.push_back(i);
            }
            std::stable_sort(raw_rows_.begin(), raw_rows_.end(),
                             [&](const auto& a, const auto& b) {
                                 for (auto k : key_idx) {
                                     int c = compare_cells(a[k], b[k]);
                                     if (c) return c < 0;
                                 }
                                 return false;
                             });
        }

        std::set<std::string> seen;
        for (auto& row : raw_rows_) {
            row.resize(query_.select_vars.size());
            if (query_.distinct) {
                std::string key;
                for (const auto& cell : row) {
                    key += cell ? rdf::term_key(*cell) : std::string("~");
                    key.push_back('\x1e');
                }
                if (!seen.insert(key).second) continue;
            }
            table.rows.push_back(std::move(row));
        }
    }

    const Query& query_;
    const GraphStore& store_;

    std::map<std::string, int> var_slots_;
    std::vector<std::string> var_names_;
    std::vector<std::string> proj_vars_;
    std::vector<ExecPattern> patterns_;
    std::vector<std::size_t> order_;
    std::vector<std::vector<std::regex>> filters_by_slot_;
    std::vector<std::optional<TermId>> bindings_;
    std::vector<std::vector<std::optional<rdf::Term>>> raw_rows_;
};

} // namespace

SolutionTable evaluate(const Query& query, const rdf::GraphStore& store) {
    return Evaluator(query, store).run();
}

} // namespace dgkit::sparql
