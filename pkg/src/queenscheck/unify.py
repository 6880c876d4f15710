"""Most-general unification with a switchable occur-check.

Two layers: a trail-based in-place unifier used by the resolution engine,
and `mgu`/`unify_atoms` which return idempotent substitutions.

With occur_check=False the per-binding occurs scan is skipped, but a cyclic
binding set is still rejected after the fact: this artifact never builds
rational trees, so both modes agree on every solvable problem.
"""

from dataclasses import dataclass
from typing import Optional

from .terms import Atom, Compound, Substitution, Term, Var


@dataclass(frozen=True)
class UnifyOptions:
    occur_check: bool = True


def walk(t: Term, bindings: dict) -> Term:
    while isinstance(t, Var):
        b = bindings.get(t)
        if b is None:
            return t
        t = b
    return t


def occurs(v: Var, t: Term, bindings: dict) -> bool:
    stack = [t]
    while stack:
        u = walk(stack.pop(), bindings)
        if u == v:
            return True
        if isinstance(u, Compound):
            stack.extend(u.args)
    return False


def unify_terms(t1: Term, t2: Term, bindings: dict, trail: list,
                occur_check: bool = True) -> bool:
    """Extend bindings to unify t1 and t2; on failure, bindings may hold
    partial work that the caller must undo via the trail."""
    stack = [(t1, t2)]
    while stack:
        a, b = stack.pop()
        a = walk(a, bindings)
        b = walk(b, bindings)
        if a == b:
            continue
        if isinstance(a, Var):
            if occur_check and occurs(a, b, bindings):
                return False
            bindings[a] = b
            trail.append(a)
        elif isinstance(b, Var):
            if occur_check and occurs(b, a, bindings):
                return False
            bindings[b] = a
            trail.append(b)
        else:
            if a.functor != b.functor or len(a.args) != len(b.args):
                return False
            # push reversed so argument pairs are processed left to right
            for pair in zip(reversed(a.args), reversed(b.args)):
                stack.append(pair)
    return True


def undo_trail(bindings: dict, trail: list, mark: int):
    while len(trail) > mark:
        del bindings[trail.pop()]


def bindings_cyclic(bindings: dict, roots) -> bool:
    """True if following bindings from any root revisits a variable."""
    for root in roots:
        stack = [(bindings.get(root), {root})]
        while stack:
            t, path = stack.pop()
            if t is None:
                continue
            todo = [t]
            while todo:
                u = todo.pop()
                if isinstance(u, Var):
                    if u in path:
                        return True
                    b = bindings.get(u)
                    if b is not None:
                        stack.append((b, path | {u}))
                else:
                    todo.extend(u.args)
    return False


def try_unify_atoms(a1: Atom, a2: Atom, bindings: dict, trail: list,
                    occur_check: bool = True) -> bool:
    """In-place atom unification honoring the occur-check mode; undoes its
    own work on failure."""
    if a1.pred != a2.pred or len(a1.args) != len(a2.args):
        return False
    mark = len(trail)
    for x, y in zip(a1.args, a2.args):
        if not unify_terms(x, y, bindings, trail, occur_check):
            undo_trail(bindings, trail, mark)
            return False
    if not occur_check and bindings_cyclic(bindings, trail[mark:]):
        undo_trail(bindings, trail, mark)
        return False
    return True


def resolve(t: Term, bindings: dict) -> Term:
    """Fully apply bindings to t (bindings must be acyclic)."""
    t = walk(t, bindings)
    if isinstance(t, Var) or not t.args:
        return t
    return Compound(t.functor, tuple(resolve(a, bindings) for a in t.args))


def resolve_atom(a: Atom, bindings: dict) -> Atom:
    return Atom(a.pred, tuple(resolve(t, bindings) for t in a.args))


def _to_substitution(bindings: dict, trail: list) -> Substitution:
    out = {}
    for v in trail:
        t = resolve(v, bindings)
        if t != v:
            out[v] = t
    return out


def mgu(t1: Term, t2: Term, opts: UnifyOptions = UnifyOptions()) -> Optional[Substitution]:
    """Idempotent most-general unifier of t1 and t2, or None."""
    bindings: dict = {}
    trail: list = []
    if not unify_terms(t1, t2, bindings, trail, opts.occur_check):
        return None
    if not opts.occur_check and bindings_cyclic(bindings, trail):
        return None
    return _to_substitution(bindings, trail)


def unify_atoms(a1: Atom, a2: Atom, opts: UnifyOptions = UnifyOptions()) -> Optional[Substitution]:
    bindings: dict = {}
    trail: list = []
    if not try_unify_atoms(a1, a2, bindings, trail, opts.occur_check):
        return None
    return _to_substitution(bindings, trail)


def match_term(pattern: Term, ground: Term, subst: Optional[dict] = None) -> Optional[dict]:
    """One-way matching: substitution over pattern variables making the
    pattern equal to the (ground) target, extending subst if given."""
    out = dict(subst) if subst else {}
    stack = [(pattern, ground)]
    while stack:
        p, g = stack.pop()
        if isinstance(p, Var):
            bound = out.get(p)
            if bound is None:
                out[p] = g
            elif bound != g:
                return None
        else:
            if not isinstance(g, Compound) or p.functor != g.functor or len(p.args) != len(g.args):
                return None
            stack.extend(zip(p.args, g.args))
    return out


def match_atom(pattern: Atom, fact: Atom, subst: Optional[dict] = None) -> Optional[dict]:
    if pattern.pred != fact.pred or len(pattern.args) != len(fact.args):
        return None
    out = dict(subst) if subst else {}
    for p, g in zip(pattern.args, fact.args):
        res = match_term(p, g, out)
        if res is None:
            return None
        out = res
    return out
