#include <mug/syntax.hpp>

#include <fmt/format.h>

namespace mug {

namespace {

struct Port {
    std::string node;
    std::string label; // label for the next edge leaving this port
};

class DotWriter {
public:
    std::string run(const CoreExpr& e) {
        scopes_.emplace_back();
        declare("in", "shape=point");
        declare("out", "shape=point");
        Port last = emit(e, {"in", ""});
        edge(last, "out");
        std::string out = "digraph mug {\n  rankdir=LR;\n  node [fontname=\"Helvetica\"];\n";
        out += scopes_.back();
        for (const auto& e2 : edges_) out += e2;
        out += "}\n";
        return out;
    }

private:
    std::string fresh(std::string_view prefix) { return fmt::format("{}{}", prefix, counter_++); }

    void declare(const std::string& id, const std::string& attrs) {
        scopes_.back() += fmt::format("{}  {} [{}];\n", indent(), id, attrs);
    }
    std::string indent() const { return std::string(2 * (scopes_.size() - 1), ' '); }

    void edge(const Port& from, const std::string& to) {
        if (from.label.empty())
            edges_.push_back(fmt::format("  {} -> {};\n", from.node, to));
        else
            edges_.push_back(fmt::format("  {} -> {} [label=\"{}\"];\n", from.node, to, from.label));
    }

    Port box(const std::string& label, const Port& from) {
        std::string id = fresh("box");
        declare(id, fmt::format("shape=box, label=\"{}\"", label));
        edge(from, id);
        return {id, ""};
    }

    Port emit(const CoreExpr& e, const Port& from) {
        using K = CoreExpr::Kind;
        switch (e.kind()) {
            case K::Id: return from;
            case K::Psi: return box(e.name(), from);
            case K::Pre: return box(fmt::format("pre[{},{}]", e.phi(), e.sigma()), from);
            case K::Post: return box(fmt::format("post[{},{}]", e.phi(), e.sigma()), from);
            case K::Seq: return emit(e.right(), emit(e.left(), from));
            case K::Par:
            case K::Prod: {
                std::string split = fresh("fanout");
                std::string merge = fresh("fanin");
                declare(split, "shape=circle, width=0.2, fixedsize=true, label=\"•\"");
                edge(from, split);
                Port l = emit(e.left(), {split, ""});
                Port r = emit(e.right(), {split, ""});
                declare(merge, "shape=circle, width=0.2, fixedsize=true, label=\"∘\"");
                edge(l, merge);
                edge(r, merge);
                return {merge, ""};
            }
            case K::Choice: {
                std::string test = fresh("choice");
                std::string join = fresh("join");
                declare(test, "shape=diamond, label=\"all true?\"");
                edge(from, test);
                Port t = emit(e.left(), {test, "True"});
                Port f = emit(e.right(), {test, "False"});
                declare(join, "shape=point");
                edge(t, join);
                edge(f, join);
                return {join, ""};
            }
            case K::Star: {
                std::string cluster = fresh("cluster_star");
                scopes_.emplace_back();
                std::string entry = fresh("join");
                std::string test = fresh("fixtest");
                declare(entry, "shape=point");
                edge(from, entry);
                Port b = emit(e.body(), {entry, ""});
                declare(test, "shape=diamond, label=\"fixed point?\"");
                edge(b, test);
                edge({test, "False"}, entry);
                std::string body = std::move(scopes_.back());
                scopes_.pop_back();
                scopes_.back() += fmt::format("{0}  subgraph {1} {{\n{0}    label=\"*\";\n{0}    style=dashed;\n{2}{0}  }}\n",
                                              indent(), cluster, body);
                return {test, "True"};
            }
        }
        return from;
    }

    std::vector<std::string> scopes_;
    std::vector<std::string> edges_;
    int counter_ = 0;
};

} // namespace

std::string to_dot(const CoreExpr& e) { return DotWriter().run(e); }

} // namespace mug
