"""First-order term language: terms, atoms, clauses, substitutions.

Numbers are successor terms s(s(...s(0)...)); lists are cons/nil chains.
Everything is immutable and hashable, so values can be shared freely.
"""

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __repr__(self):
        return f"Var({self.name})"


@dataclass(frozen=True, slots=True)
class Compound:
    functor: str
    args: tuple = ()

    def __repr__(self):
        return f"Compound({format_term(self)})"


Term = Union[Var, Compound]

NIL = Compound("nil")
ZERO = Compound("0")
CONS = "cons"
SUCC = "s"


def cons(head: Term, tail: Term) -> Compound:
    return Compound(CONS, (head, tail))


def make_list(items, tail: Term = NIL) -> Term:
    out = tail
    for item in reversed(list(items)):
        out = cons(item, out)
    return out


@dataclass(frozen=True, slots=True)
class Atom:
    pred: str
    args: tuple = ()

    def __repr__(self):
        return f"Atom({format_atom(self)})"


@dataclass(frozen=True, slots=True)
class Clause:
    head: Atom
    body: tuple = ()


@dataclass(frozen=True, slots=True)
class Query:
    atoms: tuple

    def __post_init__(self):
        if not isinstance(self.atoms, tuple):
            object.__setattr__(self, "atoms", tuple(self.atoms))


@dataclass(frozen=True)
class Program:
    clauses: tuple

    def __post_init__(self):
        if not isinstance(self.clauses, tuple):
            object.__setattr__(self, "clauses", tuple(self.clauses))

    def clauses_for(self, pred: str):
        return tuple(c for c in self.clauses if c.head.pred == pred)

    def predicates(self):
        preds = {}
        for c in self.clauses:
            for a in (c.head, *c.body):
                preds[a.pred] = len(a.args)
        return preds


class SignatureError(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    """Declared function symbols with fixed arities."""

    symbols: frozenset  # of (name, arity)

    def __post_init__(self):
        if not isinstance(self.symbols, frozenset):
            object.__setattr__(self, "symbols", frozenset(self.symbols))
        arities = {}
        for name, arity in self.symbols:
            if name in arities and arities[name] != arity:
                raise SignatureError(f"symbol {name} declared with two arities")
            arities[name] = arity
        if not any(a == 0 for a in arities.values()):
            raise SignatureError("signature has no constants: Herbrand universe empty")

    def arity(self, name: str) -> Optional[int]:
        for n, a in self.symbols:
            if n == name:
                return a
        return None

    def constants(self):
        return tuple(sorted(n for n, a in self.symbols if a == 0))

    def functions(self):
        """Non-constant symbols, sorted by name."""
        return tuple(sorted((n, a) for n, a in self.symbols if a > 0))

    def check_term(self, t: Term):
        if isinstance(t, Var):
            return
        a = self.arity(t.functor)
        if a is None:
            raise SignatureError(f"undeclared symbol {t.functor}/{len(t.args)}")
        if a != len(t.args):
            raise SignatureError(
                f"arity mismatch: {t.functor} declared /{a}, used /{len(t.args)}"
            )
        for s in t.args:
            self.check_term(s)


#: Core constructors plus filler constants a..f used by the chessboard examples.
DEFAULT_SIGNATURE = Signature(
    frozenset(
        [("0", 0), ("s", 1), ("nil", 0), ("cons", 2)]
        + [(c, 0) for c in "abcdef"]
    )
)

MINIMAL_SIGNATURE = Signature(frozenset([("0", 0), ("s", 1), ("nil", 0), ("cons", 2)]))


# --- numerals ---------------------------------------------------------------

def numeral(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals are naturals")
    t = ZERO
    for _ in range(n):
        t = Compound(SUCC, (t,))
    return t


def numeral_value(t: Term) -> Optional[int]:
    """Inverse of numeral; None for anything that is not s^i(0)."""
    n = 0
    while isinstance(t, Compound) and t.functor == SUCC and len(t.args) == 1:
        n += 1
        t = t.args[0]
    if t == ZERO:
        return n
    return None


# --- generalized list membership --------------------------------------------

def kth_member(t: Term, k: int) -> Optional[Term]:
    """The k-th member of an (open) list or arbitrary cons chain; None if the
    spine ends (nil, variable, or non-cons term) before position k."""
    if k < 1:
        raise ValueError("positions start at 1")
    while k > 1:
        if isinstance(t, Compound) and t.functor == CONS and len(t.args) == 2:
            t = t.args[1]
            k -= 1
        else:
            return None
    if isinstance(t, Compound) and t.functor == CONS and len(t.args) == 2:
        return t.args[0]
    return None


def members_with_index(t: Term):
    """All pairs (k, e) with e the k-th member of t, increasing k."""
    out = []
    k = 1
    while isinstance(t, Compound) and t.functor == CONS and len(t.args) == 2:
        out.append((k, t.args[0]))
        t = t.args[1]
        k += 1
    return out


def members(t: Term):
    return [e for _, e in members_with_index(t)]


def is_proper_list(t: Term) -> bool:
    while isinstance(t, Compound) and t.functor == CONS and len(t.args) == 2:
        t = t.args[1]
    return t == NIL


def list_length(t: Term) -> Optional[int]:
    n = 0
    while isinstance(t, Compound) and t.functor == CONS and len(t.args) == 2:
        t = t.args[1]
        n += 1
    return n if t == NIL else None


def distinct_members(t: Term) -> bool:
    """Proper list whose members are pairwise syntactically distinct."""
    if not is_proper_list(t):
        return False
    ms = members(t)
    return len(ms) == len(set(ms))


# --- substitutions -----------------------------------------------------------

Substitution = dict  # Var -> Term


def apply_subst(s: Substitution, t: Term) -> Term:
    if isinstance(t, Var):
        return s.get(t, t)
    if not t.args:
        return t
    return Compound(t.functor, tuple(apply_subst(s, a) for a in t.args))


def apply_subst_atom(s: Substitution, a: Atom) -> Atom:
    return Atom(a.pred, tuple(apply_subst(s, t) for t in a.args))


def apply_subst_query(s: Substitution, q: Query) -> Query:
    return Query(tuple(apply_subst_atom(s, a) for a in q.atoms))


def compose_subst(s: Substitution, t: Substitution) -> Substitution:
    """Substitution equal to applying s, then t."""
    out = {}
    for v, term in s.items():
        term2 = apply_subst(t, term)
        if term2 != v:
            out[v] = term2
    for v, term in t.items():
        if v not in s and term != v:
            out[v] = term
    return out


def term_vars(t: Term, acc=None):
    """Variables in order of first occurrence."""
    if acc is None:
        acc = []
    if isinstance(t, Var):
        if t not in acc:
            acc.append(t)
    else:
        for a in t.args:
            term_vars(a, acc)
    return acc


def atom_vars(a: Atom, acc=None):
    if acc is None:
        acc = []
    for t in a.args:
        term_vars(t, acc)
    return acc


def clause_vars(c: Clause):
    acc = []
    atom_vars(c.head, acc)
    for b in c.body:
        atom_vars(b, acc)
    return acc


def query_vars(q: Query):
    acc = []
    for a in q.atoms:
        atom_vars(a, acc)
    return acc


def is_ground(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    return all(is_ground(a) for a in t.args)


def atom_is_ground(a: Atom) -> bool:
    return all(is_ground(t) for t in a.args)


def term_depth(t: Term) -> int:
    """Constructor nesting depth; constants and variables are 0."""
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(term_depth(a) for a in t.args)


def atom_depth(a: Atom) -> int:
    if not a.args:
        return 0
    return max(term_depth(t) for t in a.args)


# --- canonical printing -------------------------------------------------------

def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    n = numeral_value(t)
    if n is not None:
        return str(n)
    if t == NIL:
        return "[]"
    if t.functor == CONS and len(t.args) == 2:
        items = []
        while isinstance(t, Compound) and t.functor == CONS and len(t.args) == 2:
            items.append(format_term(t.args[0]))
            t = t.args[1]
        if t == NIL:
            return "[" + ",".join(items) + "]"
        return "[" + ",".join(items) + "|" + format_term(t) + "]"
    if not t.args:
        return t.functor
    return t.functor + "(" + ",".join(format_term(a) for a in t.args) + ")"


def format_atom(a: Atom) -> str:
    if not a.args:
        return a.pred
    return a.pred + "(" + ",".join(format_term(t) for t in a.args) + ")"


def format_clause(c: Clause) -> str:
    if not c.body:
        return format_atom(c.head) + "."
    return format_atom(c.head) + " :- " + ", ".join(format_atom(b) for b in c.body) + "."


def format_query(q: Query) -> str:
    return ", ".join(format_atom(a) for a in q.atoms)


def format_program(p: Program) -> str:
    return "\n".join(format_clause(c) for c in p.clauses) + "\n"
