"""Specification sets for the layered n-queens program.

Membership predicates decide, for a ground atom, whether it belongs to the
correctness specification (s_pq, s_pqs, their union s) or the completeness
specification (s0_pqs, s0). Each set also carries a sampler enumerating a
deterministic finite slice of the set, used by the bounded checks.

Diagonal bookkeeping: in the context of row i, a queen j sitting in column
k lies on up-diagonal k+j-i and down-diagonal k+i-j; equal numbers mean a
shared diagonal, and the equality is independent of the context row.
"""

from dataclasses import dataclass
from itertools import permutations, product, zip_longest
from typing import Callable, Iterator, Optional

from .terms import (
    Atom,
    Compound,
    NIL,
    Signature,
    Term,
    Var,
    distinct_members,
    is_proper_list,
    kth_member,
    make_list,
    members,
    numeral,
    numeral_value,
    term_depth,
)

PQS = "pqs"
PQ = "pq"


@dataclass(frozen=True)
class PlacementTriple:
    cs: Term
    us: Term
    ds: Term


def up_diag_number(j: int, k: int, i: int) -> int:
    """Up-diagonal number of queen j in column k, in the context of row i."""
    return k + j - i


def down_diag_number(j: int, k: int, i: int) -> int:
    return k + i - j


def correct_up_to(triple: PlacementTriple, m: int, i: int) -> bool:
    """The triple represents a correct placement of queens 1..m in the
    context of row i: cs is a proper list of distinct members containing
    1..m, the queens' diagonal numbers are pairwise distinct, and every
    positive diagonal number indexes the queen in us (respectively ds)."""
    if not (0 <= m <= i):
        return False
    cs = triple.cs
    if not distinct_members(cs):
        return False
    ms = members(cs)
    positions = {}
    for j in range(1, m + 1):
        t = numeral(j)
        if t not in ms:
            return False
        positions[j] = ms.index(t) + 1
    ups = [positions[j] + j for j in positions]
    downs = [positions[j] - j for j in positions]
    if len(set(ups)) != len(ups) or len(set(downs)) != len(downs):
        return False
    for j, k in positions.items():
        l_up = up_diag_number(j, k, i)
        if l_up > 0 and kth_member(triple.us, l_up) != numeral(j):
            return False
        l_down = down_diag_number(j, k, i)
        if l_down > 0 and kth_member(triple.ds, l_down) != numeral(j):
            return False
    return True


def _split_cons(t: Term):
    if isinstance(t, Compound) and t.functor == "cons" and len(t.args) == 2:
        return t.args
    return None


def in_s_pq(a: Atom) -> bool:
    """Some position k holds the first argument in all of the last three
    argument terms simultaneously."""
    if a.pred != PQ or len(a.args) != 4:
        return False
    i, cs, us, ds = a.args
    k = 1
    while True:
        e = kth_member(cs, k)
        if e is None:
            return False
        if e == i and kth_member(us, k) == i and kth_member(ds, k) == i:
            return True
        k += 1


def in_s_pqs(a: Atom) -> bool:
    if a.pred != PQS or len(a.args) != 4:
        return False
    it, cs, us, dst = a.args
    i = numeral_value(it)
    if i is None:
        return False
    if i == 0:
        return True
    split = _split_cons(dst)
    if split is None:
        return False
    _, ds = split
    ms = members(cs)
    for j in range(1, i + 1):
        if numeral(j) not in ms:
            return False
    if distinct_members(cs):
        return correct_up_to(PlacementTriple(cs, us, ds), i, i)
    return True


def in_s(a: Atom) -> bool:
    if a.pred == PQ:
        return in_s_pq(a)
    if a.pred == PQS:
        return in_s_pqs(a)
    return False


def in_s0_pqs(a: Atom) -> bool:
    if a.pred != PQS or len(a.args) != 4:
        return False
    it, cs, us, dst = a.args
    i = numeral_value(it)
    if i is None or i == 0:
        return False
    split = _split_cons(dst)
    if split is None:
        return False
    _, ds = split
    return correct_up_to(PlacementTriple(cs, us, ds), i, i)


def in_s0(a: Atom) -> bool:
    if a.pred == PQ:
        return in_s_pq(a)
    if a.pred == PQS:
        if a.args and a.args[0] == numeral(0):
            return True
        return in_s0_pqs(a)
    return False


# --- level mapping -------------------------------------------------------------

def term_size(t: Term) -> int:
    """Spine length: 1 + size of the tail for cons and s, 0 for anything else."""
    n = 0
    while isinstance(t, Compound) and (
        (t.functor == "cons" and len(t.args) == 2)
        or (t.functor == "s" and len(t.args) == 1)
    ):
        n += 1
        t = t.args[-1]
    return n


@dataclass(frozen=True)
class LevelMapping:
    atom_level: Callable[[Atom], int]
    term_size: Callable[[Term], int]


def level(a: Atom) -> int:
    """Level of a pqs atom is size(arg1) + size(arg2); of a pq atom, size(arg2)."""
    if a.pred == PQS and len(a.args) == 4:
        return term_size(a.args[0]) + term_size(a.args[1])
    if a.pred == PQ and len(a.args) == 4:
        return term_size(a.args[1])
    raise ValueError(f"no level defined for predicate {a.pred}/{len(a.args)}")


QUEENS_LEVEL_MAPPING = LevelMapping(atom_level=level, term_size=term_size)


# --- bounded samplers ----------------------------------------------------------

def filler_terms(sig: Signature, count: int = 2) -> tuple:
    """A few distinct filler constants, preferring 0 and a."""
    consts = sig.constants()
    preferred = [c for c in ("0", "a", "b", "nil") if c in consts]
    for c in consts:
        if c not in preferred:
            preferred.append(c)
    return tuple(Compound(c) for c in preferred[:count])


def letter_terms(sig: Signature) -> tuple:
    """Constants other than 0 and nil, used as distinct distractor members."""
    return tuple(Compound(c) for c in sig.constants() if c not in ("0", "nil"))


def small_term_pool(sig: Signature, depth: int) -> tuple:
    """Constants, small numerals, and short lists over them; the grounding
    pool for don't-care argument positions in bounded checks."""
    fill = filler_terms(sig, 2)
    elems = list(fill)
    for n in range(1, min(depth, 2) + 1):
        t = numeral(n)
        if t not in elems:
            elems.append(t)
    pool = list(fill) + [t for t in elems if t not in fill] + [NIL]
    tails = [NIL] + list(fill[:1])
    for e in elems:
        for tl in tails:
            pool.append(make_list([e], tl))
    for e1 in elems:
        for e2 in elems:
            for tl in tails:
                pool.append(make_list([e1, e2], tl))
    seen = set()
    out = []
    for t in pool:
        if t not in seen:
            seen.add(t)
            out.append(t)
    return tuple(out)


def _valid_placements(i: int, n_cols: int):
    """Injective diagonal-safe assignments of queens 1..i to columns 1..n_cols."""
    out = []
    for cols in permutations(range(1, n_cols + 1), i):
        ups = [cols[j - 1] + j for j in range(1, i + 1)]
        downs = [cols[j - 1] - j for j in range(1, i + 1)]
        if len(set(ups)) == len(ups) and len(set(downs)) == len(downs):
            out.append(cols)
    return out


def _forced_list(forced: dict, min_len: int, fill: Term, tail: Term) -> Term:
    """List whose position l holds forced[l], other positions the filler."""
    length = max([min_len] + list(forced))
    items = [forced.get(l, fill) for l in range(1, length + 1)]
    return make_list(items, tail)


def _placement_cs(cols, i: int, length: int, letters) -> Optional[Term]:
    """Column list of the given length: queen j at position cols[j-1], empty
    columns filled with distinct letters; None if not enough letters."""
    items: list = [None] * length
    for j in range(1, i + 1):
        items[cols[j - 1] - 1] = numeral(j)
    spare = list(letters)
    for k in range(length):
        if items[k] is None:
            if not spare:
                return None
            items[k] = spare.pop(0)
    return make_list(items)


def sample_s0_pqs(sig: Signature, depth: int) -> Iterator[Atom]:
    """Deterministic slice of the completeness set for pqs: every atom built
    from a diagonal-safe placement of queens 1..i (i <= min(depth, 4)) into
    columns 1..L (L <= max(depth, i)), with filler variants for the
    unconstrained positions and tails."""
    fill = filler_terms(sig, 2)
    letters = letter_terms(sig)
    max_i = min(depth, 4)
    for i in range(1, max_i + 1):
        for length in range(i, max(depth, i) + 1):
            for cols in _valid_placements(i, length):
                cs = _placement_cs(cols, i, length, letters)
                if cs is None:
                    continue
                forced_up = {
                    up_diag_number(j, cols[j - 1], i): numeral(j)
                    for j in range(1, i + 1)
                    if up_diag_number(j, cols[j - 1], i) > 0
                }
                forced_down = {
                    down_diag_number(j, cols[j - 1], i): numeral(j)
                    for j in range(1, i + 1)
                }
                for us_fill, us_tail, ds_tail, head_t in product(
                    fill, (NIL, fill[0]), (NIL, fill[0]), fill
                ):
                    us = _forced_list(forced_up, 0, us_fill, us_tail)
                    ds = _forced_list(forced_down, 0, us_fill, ds_tail)
                    atom = Atom(
                        PQS,
                        (numeral(i), cs, us, Compound("cons", (head_t, ds))),
                    )
                    if in_s0_pqs(atom):
                        yield atom


def _inject(t: Term, position: int, value: Term) -> Optional[Term]:
    """Proper list equal to t but with `value` at the given position,
    extending with copies of value as needed; None if t is not proper."""
    if not is_proper_list(t):
        return None
    items = members(t)
    while len(items) < position:
        items.append(value)
    items[position - 1] = value
    return make_list(items)


def sample_s_pqs(sig: Signature, depth: int) -> Iterator[Atom]:
    """Slice of the correctness set for pqs: the zero row over a small term
    pool, the completeness slice, variants with a non-distinct column list,
    and mid-derivation shapes with the next queen already present."""
    pool = small_term_pool(sig, depth)
    zero = numeral(0)
    for x, y, z in product(pool, repeat=3):
        yield Atom(PQS, (zero, x, y, z))
    fill = filler_terms(sig, 2)
    # non-distinct column lists: membership only needs 1..i among the members
    for i in range(1, min(depth, 3) + 1):
        queens = [numeral(j) for j in range(1, i + 1)]
        cs = make_list(queens + [queens[0]])
        for us, dst in product(pool[: 6], repeat=2):
            atom = Atom(PQS, (numeral(i), cs, us, dst))
            if in_s_pqs(atom):
                yield atom
    yield from sample_s0_pqs(sig, depth)
    # shapes arising mid-derivation: queens 1..i correct w.r.t. row i, with
    # queen i+1 already sitting in the lists at its own column position
    letters = letter_terms(sig)
    for i in range(0, min(depth, 3) + 1):
        q = i + 1
        max_len = max(depth, q)
        for length in range(q, max_len + 1):
            for cols in _valid_placements(q, length):
                cs = _placement_cs(cols, q, length, letters)
                if cs is None:
                    continue
                kq = cols[q - 1]
                forced_up = {
                    up_diag_number(j, cols[j - 1], i): numeral(j)
                    for j in range(1, i + 1)
                    if up_diag_number(j, cols[j - 1], i) > 0
                }
                forced_down = {
                    down_diag_number(j, cols[j - 1], i): numeral(j)
                    for j in range(1, i + 1)
                }
                for us_fill, t1 in product(fill, fill):
                    us_inner = _forced_list(forced_up, 0, us_fill, NIL)
                    ds_inner = _forced_list(forced_down, 0, us_fill, NIL)
                    us3 = _inject(us_inner, kq, numeral(q))
                    ds_full = _inject(ds_inner, kq - 1, numeral(q)) if kq > 1 else ds_inner
                    if us3 is None or ds_full is None:
                        continue
                    head_t = numeral(q) if kq == 1 else fill[0]
                    atom = Atom(
                        PQS,
                        (
                            numeral(i),
                            cs,
                            Compound("cons", (t1, us3)),
                            Compound("cons", (head_t, ds_full)),
                        ),
                    )
                    if in_s_pqs(atom):
                        yield atom


def sample_s_pq(sig: Signature, depth: int,
                pool: Optional[tuple] = None,
                max_spine: Optional[int] = None) -> Iterator[Atom]:
    """Slice of the pq specification: atoms with the shared member at spine
    position k, prefixes and tails drawn from the pool, all argument depths
    within the bound."""
    if pool is None:
        pool = _pq_pool(sig, depth)
    if max_spine is None:
        max_spine = min(depth, 3)
    for k in range(1, max_spine + 1):
        for i in pool:
            variants = []
            for prefix in product(pool, repeat=k - 1):
                for tail in pool:
                    lst = make_list(list(prefix) + [i], tail)
                    if term_depth(lst) <= depth:
                        variants.append(lst)
            for cs, us, ds in product(variants, repeat=3):
                yield Atom(PQ, (i, cs, us, ds))


def exactness_pool(sig: Signature) -> tuple:
    """Small member/tail/filler pool shared by the pq sampler and the
    bottom-up fixpoint when the two slices must coincide exactly."""
    return filler_terms(sig, 2) + (numeral(1),)


def _pq_pool(sig: Signature, depth: int) -> tuple:
    fill = filler_terms(sig, 2)
    pool = list(fill)
    for n in range(1, min(depth, 2) + 1):
        t = numeral(n)
        if t not in pool:
            pool.append(t)
    return tuple(pool)


def sample_s(sig: Signature, depth: int) -> Iterator[Atom]:
    yield from sample_s_pqs(sig, depth)
    yield from sample_s_pq(sig, depth)


def sample_s0(sig: Signature, depth: int) -> Iterator[Atom]:
    """The placement slice first, then the zero row and the pq slice
    interleaved so that budgeted prefixes stay diverse."""
    yield from sample_s0_pqs(sig, depth)
    zero = numeral(0)
    zeros = (Atom(PQS, (zero, x, y, z))
             for x, y, z in product(small_term_pool(sig, depth), repeat=3))
    pqs = sample_s_pq(sig, depth)
    for pair in zip_longest(zeros, pqs):
        for a in pair:
            if a is not None:
                yield a


@dataclass(frozen=True)
class SpecSet:
    """A named decidable set of ground atoms plus a bounded-slice sampler."""

    name: str
    contains: Callable[[Atom], bool]
    sample: Callable[[Signature, int], Iterator[Atom]]


SPEC_SETS = {
    "s_pq": SpecSet("s_pq", in_s_pq, sample_s_pq),
    "s_pqs": SpecSet("s_pqs", in_s_pqs, sample_s_pqs),
    "s": SpecSet("s", in_s, sample_s),
    "s0_pqs": SpecSet("s0_pqs", in_s0_pqs, sample_s0_pqs),
    "s0": SpecSet("s0", in_s0, sample_s0),
}


def spec_set(name: str) -> SpecSet:
    try:
        return SPEC_SETS[name]
    except KeyError:
        raise ValueError(
            f"unknown specification set {name!r}; known: {sorted(SPEC_SETS)}"
        ) from None
