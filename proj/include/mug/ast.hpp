#pragma once

#include <mug/error.hpp>

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace mug {

/// Core terms: iota, psi, pre/post-image, `;`, `||`, the internal product, choice and star.
class CoreExpr {
public:
    enum class Kind { Id, Psi, Pre, Post, Seq, Par, Prod, Choice, Star };

    static CoreExpr id(Span s = {});
    static CoreExpr psi(std::string name, Span s = {});
    static CoreExpr pre(std::string phi, std::string sigma, Span s = {});
    static CoreExpr post(std::string phi, std::string sigma, Span s = {});
    static CoreExpr seq(CoreExpr l, CoreExpr r, Span s = {});
    static CoreExpr par(CoreExpr l, CoreExpr r, Span s = {});
    static CoreExpr prod(CoreExpr l, CoreExpr r, Span s = {});
    static CoreExpr choice(CoreExpr l, CoreExpr r, Span s = {});
    /// `unfolds` counts how many times the operational STAR rule has already unrolled
    /// this loop; it is bookkeeping for the iteration budget and ignored by ==.
    static CoreExpr star(CoreExpr body, Span s = {}, unsigned long unfolds = 0);

    Kind kind() const;
    Span span() const;
    /// psi name, or the phi symbol of pre/post.
    const std::string& name() const;
    const std::string& phi() const { return name(); }
    const std::string& sigma() const;
    const CoreExpr& left() const;
    const CoreExpr& right() const;
    const CoreExpr& body() const { return left(); }
    unsigned long unfolds() const;

    bool is_id() const { return kind() == Kind::Id; }
    bool is_leaf() const;

    /// Number of nodes in the tree.
    std::size_t size() const;
    std::size_t depth() const;

    /// Structural equality (spans and unfold counters are ignored).
    friend bool operator==(const CoreExpr& a, const CoreExpr& b);

private:
    struct Node;
    explicit CoreExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

/// Surface terms: the core constructors plus variables and the macro forms.
class SurfaceExpr {
public:
    enum class Kind { Id, Psi, Pre, Post, Seq, Par, Choice, Star, Var, Let, Def, Call, If, Fix, Repeat };
    using Binding = std::pair<std::string, SurfaceExpr>;

    static SurfaceExpr id(Span s = {});
    static SurfaceExpr psi(std::string name, Span s = {});
    static SurfaceExpr pre(std::string phi, std::string sigma, Span s = {});
    static SurfaceExpr post(std::string phi, std::string sigma, Span s = {});
    static SurfaceExpr seq(SurfaceExpr l, SurfaceExpr r, Span s = {});
    static SurfaceExpr par(SurfaceExpr l, SurfaceExpr r, Span s = {});
    static SurfaceExpr choice(SurfaceExpr l, SurfaceExpr r, Span s = {});
    static SurfaceExpr star(SurfaceExpr body, Span s = {});
    static SurfaceExpr var(std::string name, Span s = {});
    /// let X1 = E1, ..., Xk = Ek in body (bindings are sequential).
    static SurfaceExpr let(std::vector<Binding> bindings, SurfaceExpr body, Span s = {});
    /// def F(params) { fbody } in body
    static SurfaceExpr def(std::string fname, std::vector<std::string> params, SurfaceExpr fbody, SurfaceExpr body,
                           Span s = {});
    static SurfaceExpr call(std::string fname, std::vector<SurfaceExpr> args, Span s = {});
    static SurfaceExpr if_(SurfaceExpr c, SurfaceExpr t, SurfaceExpr f, Span s = {});
    /// fix X = init [with Y1 = N1, ...] in body
    static SurfaceExpr fix(std::string var, SurfaceExpr init, std::vector<Binding> consts, SurfaceExpr body,
                           Span s = {});
    /// repeat X = init in body for k; `var` is empty for the short form `repeat body for k`.
    static SurfaceExpr repeat(std::string var, SurfaceExpr init, SurfaceExpr body, long k, Span s = {});

    Kind kind() const;
    Span span() const;
    /// psi name, phi of pre/post, variable name, function name of def/call, fix/repeat variable.
    const std::string& name() const;
    const std::string& sigma() const;
    /// Positional children: Seq/Par/Choice (l, r); Star (body); Let/Def (body last);
    /// If (c, t, f); Fix (init, body); Repeat (init, body); Def (fbody, body); Call (args).
    const std::vector<SurfaceExpr>& kids() const;
    const SurfaceExpr& kid(std::size_t i) const { return kids()[i]; }
    const std::vector<Binding>& bindings() const;
    const std::vector<std::string>& params() const;
    long count() const;

    friend bool operator==(const SurfaceExpr& a, const SurfaceExpr& b);

private:
    struct Node;
    explicit SurfaceExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

/// Embeds a core term into the surface language (the internal product is rejected).
SurfaceExpr to_surface(const CoreExpr& e);

} // namespace mug
