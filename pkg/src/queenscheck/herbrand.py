"""Bounded Herbrand universe enumeration and immediate-consequence fixpoints.

The Herbrand universe and base are infinite; everything here works on
finite slices. `tp_fixpoint` is computed bottom-up by matching clause
bodies against already-derived atoms, grounding free variables over a
small filler pool; the result is an under-approximation of the least
Herbrand model restricted to the depth bound.
"""

import warnings
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Optional

from .parser import parse_term
from .terms import (
    Atom,
    Clause,
    Compound,
    Program,
    Signature,
    Term,
    apply_subst,
    apply_subst_atom,
    atom_depth,
    atom_is_ground,
    clause_vars,
    format_atom,
    numeral,
    term_depth,
)
from .unify import match_atom

DEFAULT_MAX_INSTANCES = 10_000_000


class ResourceCapError(RuntimeError):
    """A bounded check ran out of its instance budget; carries partial results."""

    def __init__(self, msg: str, partial=None, examined: int = 0):
        super().__init__(msg)
        self.partial = partial
        self.examined = examined


@lru_cache(maxsize=None)
def _terms_of_exact_depth(sig: Signature, depth: int) -> tuple:
    if depth == 0:
        return tuple(Compound(c) for c in sig.constants())
    shallower = [_terms_of_exact_depth(sig, k) for k in range(depth)]
    upto = tuple(t for level in shallower for t in level)
    out = []
    for name, arity in sig.functions():
        for args in product(upto, repeat=arity):
            if max(term_depth(a) for a in args) == depth - 1:
                out.append(Compound(name, args))
    return tuple(out)


def enumerate_terms(sig: Signature, max_depth: int) -> Iterator[Term]:
    """All ground terms of depth <= max_depth, each exactly once, ordered by
    depth then by functor name."""
    for d in range(max_depth + 1):
        yield from _terms_of_exact_depth(sig, d)


def count_terms(sig: Signature, max_depth: int) -> int:
    """Number of ground terms of depth <= max_depth, computed without
    materializing them (the universe explodes quickly)."""
    cum = len(sig.constants())
    prev = 0
    for _ in range(max_depth):
        exact = sum(cum ** k - prev ** k for _, k in sig.functions())
        prev, cum = cum, cum + exact
    return cum


def _var_budgets(c: Clause, max_depth: int) -> Optional[dict]:
    """Max term depth each clause variable may take so that every atom of the
    instance stays within max_depth; None if the skeleton alone exceeds it."""
    budgets: dict = {}

    def visit(t: Term, at: int):
        from .terms import Var
        if isinstance(t, Var):
            budgets[t] = min(budgets.get(t, max_depth), max_depth - at)
        else:
            for a in t.args:
                visit(a, at + 1)

    for atom in (c.head, *c.body):
        if atom_depth_skeleton(atom) > max_depth:
            return None
        for arg in atom.args:
            visit(arg, 0)
    if any(b < 0 for b in budgets.values()):
        return None
    return budgets


def atom_depth_skeleton(a: Atom) -> int:
    """Depth contributed by the non-variable skeleton alone."""
    def d(t: Term) -> int:
        from .terms import Var
        if isinstance(t, Var) or not t.args:
            return 0
        return 1 + max(d(x) for x in t.args)
    return max((d(t) for t in a.args), default=0)


def enumerate_ground_instances(c: Clause, sig: Signature, max_depth: int
                               ) -> Iterator[Clause]:
    """All ground instances of c in which every atom has depth <= max_depth."""
    vs = clause_vars(c)
    if len(vs) > 6 and max_depth >= 2:
        warnings.warn(
            f"grounding a clause with {len(vs)} variables at depth {max_depth}: "
            "combinatorial blowup likely",
            stacklevel=2,
        )
    budgets = _var_budgets(c, max_depth)
    if budgets is None:
        return
    pools = [tuple(enumerate_terms(sig, budgets[v])) for v in vs]
    if any(not p for p in pools):
        return
    for combo in product(*pools):
        s = dict(zip(vs, combo))
        head = apply_subst_atom(s, c.head)
        body = tuple(apply_subst_atom(s, b) for b in c.body)
        yield Clause(head, body)


# --- immediate consequence -----------------------------------------------------

def _join_body(body, subst, indices) -> Iterator[dict]:
    """Substitutions grounding all body atoms; body atom k is matched
    against the fact index indices[k]."""
    if not body:
        yield subst
        return
    first, rest = body[0], body[1:]
    pattern = apply_subst_atom(subst, first)
    if atom_is_ground(pattern):
        if pattern in indices[0].get(pattern.pred, ()):
            yield from _join_body(rest, subst, indices[1:])
        return
    for fact in indices[0].get(pattern.pred, ()):
        ext = match_atom(pattern, fact, None)
        if ext is not None:
            merged = dict(subst)
            merged.update(ext)
            yield from _join_body(rest, merged, indices[1:])


def _index_by_pred(atoms: Iterable[Atom]) -> dict:
    out: dict = {}
    for a in atoms:
        out.setdefault(a.pred, set()).add(a)
    return out


def tp_step(p: Program, s: Iterable[Atom], base: Iterable[Atom]) -> frozenset:
    """One bottom-up step over an explicit base: s plus every base atom that
    heads a ground clause instance whose body atoms all lie in s."""
    s = frozenset(s)
    base = frozenset(base)
    if not s <= base:
        raise ValueError("s must be a subset of base")
    facts = _index_by_pred(s)
    derived = set(s)
    for c in p.clauses:
        for h in base:
            if h in derived:
                continue
            sub = match_atom(c.head, h, None)
            if sub is None:
                continue
            for full in _join_body(c.body, sub, [facts] * len(c.body)):
                inst = apply_subst_atom(full, c.head)
                if atom_is_ground(inst):
                    derived.add(inst)
                    break
    return frozenset(derived)


def _default_pool(sig: Signature, max_depth: int) -> tuple:
    """Grounding pool for free clause variables: a few representative filler
    constants plus the numerals up to the depth bound."""
    fillers = []
    consts = sig.constants()
    for want in ("0", "nil", "a"):
        if want in consts:
            fillers.append(Compound(want))
    if not fillers:
        fillers = [Compound(consts[0])]
    pool = list(fillers)
    for n in range(1, max_depth + 1):
        t = numeral(n)
        if t not in pool:
            pool.append(t)
    return tuple(pool)


def tp_fixpoint(p: Program, sig: Signature, max_depth: int,
                pool: Optional[tuple] = None,
                max_atoms: int = DEFAULT_MAX_INSTANCES) -> frozenset:
    """Bottom-up least fixpoint, keeping only atoms of depth <= max_depth.

    Free variables (unit-clause variables and body/head variables not fixed
    by matching) range over `pool`. The result under-approximates the least
    Herbrand model intersected with the depth slice: derivations that need
    intermediate atoms outside the slice, or filler terms outside the pool,
    are cut. Raises ResourceCapError with the partial set when the atom
    budget is exhausted.
    """
    if pool is None:
        pool = _default_pool(sig, max_depth)
    for t in pool:
        sig.check_term(t)
    derived: set = set()
    examined = 0

    def fire(c: Clause, sub: dict, new: set):
        nonlocal examined
        head_pat = apply_subst_atom(sub, c.head)
        # remaining free variables only deepen the head, so the skeleton
        # depth is a lower bound and lets us skip hopeless filler products
        if atom_depth_skeleton(head_pat) > max_depth:
            return
        free = [v for v in clause_vars(c) if v not in sub]
        for combo in product(pool, repeat=len(free)):
            examined += 1
            if len(derived) + len(new) > max_atoms or examined > max_atoms * 10:
                raise ResourceCapError(
                    "tp_fixpoint exceeded its atom budget",
                    partial=frozenset(derived | new),
                    examined=examined,
                )
            full = dict(sub)
            full.update(zip(free, combo))
            head = apply_subst_atom(full, c.head)
            if not atom_is_ground(head):
                continue
            if atom_depth(head) > max_depth:
                continue
            if head not in derived:
                new.add(head)

    new: set = set()
    for c in p.clauses:
        if not c.body:
            fire(c, {}, new)
    derived |= new
    last = new
    # semi-naive rounds: a body join must use at least one last-round atom
    while last:
        full_idx = _index_by_pred(derived)
        new_idx = _index_by_pred(last)
        new = set()
        for c in p.clauses:
            if not c.body:
                continue
            n = len(c.body)
            for j in range(n):
                indices = [new_idx if k == j else full_idx for k in range(n)]
                for sub in _join_body(c.body, {}, indices):
                    fire(c, sub, new)
        new -= derived
        derived |= new
        last = new
    return frozenset(derived)


def serialize_atoms(atoms: Iterable[Atom]) -> str:
    """Sorted newline-delimited canonical text, for golden files."""
    return "\n".join(sorted(format_atom(a) for a in atoms)) + "\n"
