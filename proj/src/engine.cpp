#include "sl/engine.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace sl {

namespace {

std::string join_labels(const std::vector<std::string>& labels) {
    std::string out;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ',';
        out += labels[i];
    }
    return out;
}

Automaton::Kind callee_kind(MatchCall::Kind k) {
    switch (k) {
    case MatchCall::Kind::Dynamic: return Automaton::Kind::Dynamic;
    case MatchCall::Kind::Context: return Automaton::Kind::Context;
    case MatchCall::Kind::Rewrite1: return Automaton::Kind::Rewrite1;
    }
    return Automaton::Kind::Dynamic;
}

} // namespace

TermPtr apply_recon(const MetaValue& recon, const TermPtr& filler) {
    if (recon.kind != MetaValue::Kind::Recon)
        throw EvalError("cannot fill a value that is not a context");
    return value_to_term((*recon.recon)(term_to_value(filler)));
}

std::string render_trace(const Trace& trace) {
    std::string out = pretty_term(trace.initial);
    out += '\n';
    for (const auto& s : trace.steps) {
        out += " ==>    by ";
        out += s.label;
        out += '\n';
        out += pretty_term(s.term);
        out += '\n';
    }
    return out;
}

// Shared state of one engine run. Nested automaton calls draw from the
// same random stream and the same fresh-name supply, so a (seed, term)
// pair fixes the run completely.
struct Engine::Runner {
    using Cont = std::function<bool(const MetaValue&, const std::vector<std::string>&)>;

    /// Nested match calls beyond this many can only mean definitions
    /// that re-examine the same term forever; fail loudly instead of
    /// overrunning the stack.
    static constexpr int kMaxMatchDepth = 100000;

    Engine& eng;
    std::mt19937_64 rng;
    EvalCtx ectx;
    int call_depth = 0;
    /// Enumeration restarts the fresh-name supply at every root-rewrite
    /// acceptance so a successor's printed form does not depend on how
    /// many alternatives were tried before it.
    bool fresh_per_accept;

    Runner(Engine& e, const RunOptions& opts, bool fresh_per_accept_)
        : eng(e), rng(opts.seed), fresh_per_accept(fresh_per_accept_) {
        eng.fresh_.next = 0;
        ectx.sig = &e.cs_.checked.spec.sig;
        ectx.aux = &e.aux_;
        ectx.fresh = &e.fresh_;
        ectx.max_depth = opts.max_aux_depth;
    }

    bool run_automaton(const Automaton& a, const TermPtr& subject, const Cont& k) {
        if (++call_depth > kMaxMatchDepth)
            throw EvalError("matching recursed too deeply while running " + a.name +
                            " (do the definitions consume anything?)");
        EnvPtr frame = env_bind(nullptr, "$0", term_to_value(subject));
        bool found = run_state(a, a.root, frame, {}, k);
        --call_depth;
        return found;
    }

    bool run_state(const Automaton& a, const StatePtr& s, const EnvPtr& frame,
                   const std::vector<std::string>& pending, const Cont& k) {
        switch (s->kind) {
        case State::Kind::Fail:
            return false;

        case State::Kind::Accept: {
            if (s->is_decomp) {
                // Reify the context: the action is the reconstruction
                // body with "$hole" free, closed over this frame.
                EvalCtx snapshot = ectx;
                MetaExprPtr body = s->action;
                EnvPtr base = frame;
                MetaValue recon =
                    MetaValue::of_recon([snapshot, body, base](const MetaValue& h) {
                        EvalCtx local = snapshot;
                        return eval_meta(local, body, env_bind(base, "$hole", h));
                    });
                const MetaValue* hole = env_lookup(frame, "$hole");
                if (!hole) throw EvalError("decomposition accepted without a hole value");
                std::vector<MetaValue> pair;
                pair.push_back(std::move(recon));
                pair.push_back(*hole);
                return k(MetaValue::of_tuple(std::move(pair)), pending);
            }
            if (fresh_per_accept && a.kind == Automaton::Kind::Rewrite1) eng.fresh_.next = 0;
            MetaValue v = eval_meta(ectx, s->action, frame);
            if (s->label.empty()) return k(v, pending);
            std::vector<std::string> labels = pending;
            labels.push_back(s->label);
            return k(v, labels);
        }

        case State::Kind::Branch: {
            const MetaValue* sv = env_lookup(frame, s->subject);
            if (!sv) throw EvalError("automaton reads an unbound reference");
            if (sv->kind != MetaValue::Kind::Term || sv->term->kind != Term::Kind::Constr)
                return run_state(a, s->fallback, frame, pending, k);
            const TermPtr& t = sv->term;
            for (const auto& c : s->cases) {
                if (c.ctor != t->ctor) continue;
                if (c.bound.empty()) return run_state(a, c.next, frame, pending, k);
                return run_state(a, c.next, env_bind(frame, c.bound, ctor_payload(t)),
                                 pending, k);
            }
            return run_state(a, s->fallback, frame, pending, k);
        }

        case State::Kind::Choice: {
            size_t n = s->alts.size();
            if (n == 0) return false;
            if (n == 1) return run_state(a, s->alts[0], frame, pending, k);
            std::vector<size_t> order(n);
            std::iota(order.begin(), order.end(), size_t{0});
            for (size_t i = n - 1; i > 0; --i) {
                size_t j = static_cast<size_t>(rng() % (i + 1));
                std::swap(order[i], order[j]);
            }
            for (size_t i : order)
                if (run_state(a, s->alts[i], frame, pending, k)) return true;
            return false;
        }

        case State::Kind::Cond: {
            MetaValue c = eval_meta(ectx, s->cond, frame);
            if (c.kind != MetaValue::Kind::Bool)
                throw EvalError("a 'when' condition evaluated to a non-boolean value");
            if (!c.bval) return false;
            return run_state(a, s->body, frame, pending, k);
        }

        case State::Kind::BindLet: {
            const MetaValue* sv = env_lookup(frame, s->src);
            if (!sv) throw EvalError("automaton reads an unbound reference");
            EnvPtr f = frame;
            if (s->tuple_bind) {
                if (sv->kind != MetaValue::Kind::Tuple || sv->tuple.size() != s->names.size())
                    throw EvalError("automaton splits a value that is not the right tuple");
                for (size_t i = 0; i < s->names.size(); ++i)
                    f = env_bind(f, s->names[i], sv->tuple[i]);
            } else {
                f = env_bind(f, s->names[0], *sv);
            }
            return run_state(a, s->body, f, pending, k);
        }

        case State::Kind::RefLet: {
            MetaValue argv = eval_meta(ectx, s->call.arg, frame);
            TermPtr argt = value_to_term(argv);
            const Automaton* sub = eng.cs_.find(callee_kind(s->call.kind), s->call.def);
            if (!sub) return false; // the called relation is empty
            return run_automaton(
                *sub, argt,
                [&](const MetaValue& v, const std::vector<std::string>& sublabels) {
                    EnvPtr f = frame;
                    if (s->call.kind == MatchCall::Kind::Context) {
                        f = env_bind(f, s->names[0], v.tuple[0]);
                        f = env_bind(f, s->names[1], v.tuple[1]);
                    } else {
                        f = env_bind(f, s->names[0], v);
                    }
                    if (s->call.kind == MatchCall::Kind::Rewrite1 && !sublabels.empty()) {
                        std::vector<std::string> p2 = pending;
                        p2.insert(p2.end(), sublabels.begin(), sublabels.end());
                        return run_state(a, s->body, f, p2, k);
                    }
                    return run_state(a, s->body, f, pending, k);
                });
        }
        }
        return false;
    }
};

Engine::Engine(const CompiledSpec& cs) : cs_(cs), aux_(build_aux_index(cs.checked.spec)) {
    for (const auto& r : cs_.checked.spec.rules)
        if (r.kind == Rule::Kind::Inference) has_inference_ = true;
}

std::string Engine::subject_key(const TermPtr& t) const {
    switch (t->kind) {
    case Term::Kind::Str: return "string";
    case Term::Kind::Int: return "int";
    case Term::Kind::Constr: {
        const TypeDef* owner = nullptr;
        if (!cs_.checked.spec.sig.find_ctor(t->ctor, &owner)) return "";
        return owner->name;
    }
    }
    return "";
}

const Automaton* Engine::step_automaton(const TermPtr& t) const {
    std::string key = subject_key(t);
    if (key.empty()) return nullptr;
    if (const Automaton* a = cs_.find(Automaton::Kind::Step, key)) return a;
    // Without inference rules the step relation is root rewriting.
    if (!has_inference_) return cs_.find(Automaton::Kind::Rewrite1, key);
    return nullptr;
}

bool Engine::matches_dynamic(const std::string& def, const TermPtr& t, const RunOptions& opts) {
    const Automaton* a = cs_.find(Automaton::Kind::Dynamic, def);
    if (!a) throw EvalError("unknown dynamic definition '" + def + "'");
    Runner r(*this, opts, false);
    return r.run_automaton(*a, t,
                           [](const MetaValue&, const std::vector<std::string>&) { return true; });
}

std::vector<Decomposition> Engine::decompositions(const std::string& def, const TermPtr& t,
                                                  const RunOptions& opts) {
    const Automaton* a = cs_.find(Automaton::Kind::Context, def);
    if (!a) throw EvalError("unknown context definition '" + def + "'");
    Runner r(*this, opts, false);
    std::vector<Decomposition> out;
    r.run_automaton(*a, t, [&](const MetaValue& v, const std::vector<std::string>&) {
        out.push_back(Decomposition{v.tuple[0], value_to_term(v.tuple[1])});
        return false; // keep enumerating
    });
    return out;
}

std::optional<Step> Engine::rewrite_root(const TermPtr& t, const RunOptions& opts) {
    std::string key = subject_key(t);
    const Automaton* a = key.empty() ? nullptr : cs_.find(Automaton::Kind::Rewrite1, key);
    if (!a) return std::nullopt;
    Runner r(*this, opts, false);
    std::optional<Step> out;
    r.run_automaton(*a, t, [&](const MetaValue& v, const std::vector<std::string>& labels) {
        out = Step{value_to_term(v), join_labels(labels)};
        return true;
    });
    return out;
}

std::optional<Step> Engine::step_in(Runner& r, const TermPtr& t) {
    const Automaton* a = step_automaton(t);
    if (!a) return std::nullopt;
    std::optional<Step> out;
    r.run_automaton(*a, t, [&](const MetaValue& v, const std::vector<std::string>& labels) {
        out = Step{value_to_term(v), join_labels(labels)};
        return true;
    });
    return out;
}

std::optional<Step> Engine::step(const TermPtr& t, const RunOptions& opts) {
    Runner r(*this, opts, false);
    return step_in(r, t);
}

std::vector<Step> Engine::enumerate_steps(const TermPtr& t, const RunOptions& opts) {
    const Automaton* a = step_automaton(t);
    if (!a) return {};
    Runner r(*this, opts, true);
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<std::pair<std::pair<std::string, std::string>, TermPtr>> found;
    r.run_automaton(*a, t, [&](const MetaValue& v, const std::vector<std::string>& labels) {
        TermPtr st = value_to_term(v);
        auto key = std::make_pair(pretty_term(st), join_labels(labels));
        if (seen.insert(key).second) found.emplace_back(key, st);
        return false; // keep enumerating
    });
    std::sort(found.begin(), found.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Step> out;
    out.reserve(found.size());
    for (auto& [key, term] : found) out.push_back(Step{term, key.second});
    return out;
}

Trace Engine::evaluate(const TermPtr& t, const RunOptions& opts) {
    Runner r(*this, opts, false);
    Trace trace;
    trace.initial = t;
    TermPtr cur = t;
    for (int i = 0; i < opts.max_steps; ++i) {
        std::optional<Step> s = step_in(r, cur);
        if (!s) return trace;
        cur = s->term;
        trace.steps.push_back(std::move(*s));
    }
    trace.hit_step_limit = step_in(r, cur).has_value();
    return trace;
}

} // namespace sl
