#include <mug/ast.hpp>

#include <algorithm>

namespace mug {

struct CoreExpr::Node {
    Kind kind;
    Span span;
    std::string a, b;
    std::vector<CoreExpr> kids;
    unsigned long unfolds = 0;
};

CoreExpr CoreExpr::id(Span s) { return CoreExpr(std::make_shared<const Node>(Node{Kind::Id, s, {}, {}, {}})); }
CoreExpr CoreExpr::psi(std::string name, Span s) {
    return CoreExpr(std::make_shared<const Node>(Node{Kind::Psi, s, std::move(name), {}, {}}));
}
CoreExpr CoreExpr::pre(std::string phi, std::string sigma, Span s) {
    return CoreExpr(std::make_shared<const Node>(Node{Kind::Pre, s, std::move(phi), std::move(sigma), {}}));
}
CoreExpr CoreExpr::post(std::string phi, std::string sigma, Span s) {
    return CoreExpr(std::make_shared<const Node>(Node{Kind::Post, s, std::move(phi), std::move(sigma), {}}));
}
CoreExpr CoreExpr::seq(CoreExpr l, CoreExpr r, Span s) {
    return CoreExpr(std::make_shared<const Node>(Node{Kind::Seq, s, {}, {}, {std::move(l), std::move(r)}}));
}
CoreExpr CoreExpr::par(CoreExpr l, CoreExpr r, Span s) {
    return CoreExpr(std::make_shared<const Node>(Node{Kind::Par, s, {}, {}, {std::move(l), std::move(r)}}));
}
CoreExpr CoreExpr::prod(CoreExpr l, CoreExpr r, Span s) {
    return CoreExpr(std::make_shared<const Node>(Node{Kind::Prod, s, {}, {}, {std::move(l), std::move(r)}}));
}
CoreExpr CoreExpr::choice(CoreExpr l, CoreExpr r, Span s) {
    return CoreExpr(std::make_shared<const Node>(Node{Kind::Choice, s, {}, {}, {std::move(l), std::move(r)}}));
}
CoreExpr CoreExpr::star(CoreExpr body, Span s, unsigned long unfolds) {
    return CoreExpr(std::make_shared<const Node>(Node{Kind::Star, s, {}, {}, {std::move(body)}, unfolds}));
}

CoreExpr::Kind CoreExpr::kind() const { return n_->kind; }
Span CoreExpr::span() const { return n_->span; }
const std::string& CoreExpr::name() const { return n_->a; }
const std::string& CoreExpr::sigma() const { return n_->b; }
const CoreExpr& CoreExpr::left() const { return n_->kids.at(0); }
const CoreExpr& CoreExpr::right() const { return n_->kids.at(1); }
unsigned long CoreExpr::unfolds() const { return n_->unfolds; }

bool CoreExpr::is_leaf() const { return n_->kids.empty(); }

std::size_t CoreExpr::size() const {
    std::size_t s = 1;
    for (const CoreExpr& k : n_->kids) s += k.size();
    return s;
}

std::size_t CoreExpr::depth() const {
    std::size_t d = 0;
    for (const CoreExpr& k : n_->kids) d = std::max(d, k.depth());
    return d + 1;
}

bool operator==(const CoreExpr& a, const CoreExpr& b) {
    if (a.n_ == b.n_) return true;
    const auto& x = *a.n_;
    const auto& y = *b.n_;
    return x.kind == y.kind && x.a == y.a && x.b == y.b && x.kids == y.kids;
}

// ---------------------------------------------------------------------------

struct SurfaceExpr::Node {
    Kind kind;
    Span span;
    std::string a, b;
    std::vector<SurfaceExpr> kids;
    std::vector<Binding> bindings;
    std::vector<std::string> params;
    long k = 0;
};

namespace {
using SK = SurfaceExpr::Kind;
}

#define MUG_SNODE(...) SurfaceExpr(std::make_shared<const Node>(Node{__VA_ARGS__}))

SurfaceExpr SurfaceExpr::id(Span s) { return MUG_SNODE(SK::Id, s); }
SurfaceExpr SurfaceExpr::psi(std::string name, Span s) { return MUG_SNODE(SK::Psi, s, std::move(name)); }
SurfaceExpr SurfaceExpr::pre(std::string phi, std::string sigma, Span s) {
    return MUG_SNODE(SK::Pre, s, std::move(phi), std::move(sigma));
}
SurfaceExpr SurfaceExpr::post(std::string phi, std::string sigma, Span s) {
    return MUG_SNODE(SK::Post, s, std::move(phi), std::move(sigma));
}
SurfaceExpr SurfaceExpr::seq(SurfaceExpr l, SurfaceExpr r, Span s) {
    return MUG_SNODE(SK::Seq, s, {}, {}, {std::move(l), std::move(r)});
}
SurfaceExpr SurfaceExpr::par(SurfaceExpr l, SurfaceExpr r, Span s) {
    return MUG_SNODE(SK::Par, s, {}, {}, {std::move(l), std::move(r)});
}
SurfaceExpr SurfaceExpr::choice(SurfaceExpr l, SurfaceExpr r, Span s) {
    return MUG_SNODE(SK::Choice, s, {}, {}, {std::move(l), std::move(r)});
}
SurfaceExpr SurfaceExpr::star(SurfaceExpr body, Span s) { return MUG_SNODE(SK::Star, s, {}, {}, {std::move(body)}); }
SurfaceExpr SurfaceExpr::var(std::string name, Span s) { return MUG_SNODE(SK::Var, s, std::move(name)); }
SurfaceExpr SurfaceExpr::let(std::vector<Binding> bindings, SurfaceExpr body, Span s) {
    return MUG_SNODE(SK::Let, s, {}, {}, {std::move(body)}, std::move(bindings));
}
SurfaceExpr SurfaceExpr::def(std::string fname, std::vector<std::string> params, SurfaceExpr fbody, SurfaceExpr body,
                             Span s) {
    return MUG_SNODE(SK::Def, s, std::move(fname), {}, {std::move(fbody), std::move(body)}, {}, std::move(params));
}
SurfaceExpr SurfaceExpr::call(std::string fname, std::vector<SurfaceExpr> args, Span s) {
    return MUG_SNODE(SK::Call, s, std::move(fname), {}, std::move(args));
}
SurfaceExpr SurfaceExpr::if_(SurfaceExpr c, SurfaceExpr t, SurfaceExpr f, Span s) {
    return MUG_SNODE(SK::If, s, {}, {}, {std::move(c), std::move(t), std::move(f)});
}
SurfaceExpr SurfaceExpr::fix(std::string var, SurfaceExpr init, std::vector<Binding> consts, SurfaceExpr body,
                             Span s) {
    return MUG_SNODE(SK::Fix, s, std::move(var), {}, {std::move(init), std::move(body)}, std::move(consts));
}
SurfaceExpr SurfaceExpr::repeat(std::string var, SurfaceExpr init, SurfaceExpr body, long k, Span s) {
    return MUG_SNODE(SK::Repeat, s, std::move(var), {}, {std::move(init), std::move(body)}, {}, {}, k);
}

#undef MUG_SNODE

SurfaceExpr::Kind SurfaceExpr::kind() const { return n_->kind; }
Span SurfaceExpr::span() const { return n_->span; }
const std::string& SurfaceExpr::name() const { return n_->a; }
const std::string& SurfaceExpr::sigma() const { return n_->b; }
const std::vector<SurfaceExpr>& SurfaceExpr::kids() const { return n_->kids; }
const std::vector<SurfaceExpr::Binding>& SurfaceExpr::bindings() const { return n_->bindings; }
const std::vector<std::string>& SurfaceExpr::params() const { return n_->params; }
long SurfaceExpr::count() const { return n_->k; }

bool operator==(const SurfaceExpr& a, const SurfaceExpr& b) {
    if (a.n_ == b.n_) return true;
    const auto& x = *a.n_;
    const auto& y = *b.n_;
    return x.kind == y.kind && x.a == y.a && x.b == y.b && x.k == y.k && x.params == y.params &&
           x.kids == y.kids && x.bindings == y.bindings;
}

SurfaceExpr to_surface(const CoreExpr& e) {
    using K = CoreExpr::Kind;
    switch (e.kind()) {
        case K::Id: return SurfaceExpr::id(e.span());
        case K::Psi: return SurfaceExpr::psi(e.name(), e.span());
        case K::Pre: return SurfaceExpr::pre(e.phi(), e.sigma(), e.span());
        case K::Post: return SurfaceExpr::post(e.phi(), e.sigma(), e.span());
        case K::Seq: return SurfaceExpr::seq(to_surface(e.left()), to_surface(e.right()), e.span());
        case K::Par: return SurfaceExpr::par(to_surface(e.left()), to_surface(e.right()), e.span());
        case K::Choice: return SurfaceExpr::choice(to_surface(e.left()), to_surface(e.right()), e.span());
        case K::Star: return SurfaceExpr::star(to_surface(e.body()), e.span());
        case K::Prod: break;
    }
    throw Error(ErrorKind::Structural, "the internal product has no surface syntax", e.span());
}

} // namespace mug
