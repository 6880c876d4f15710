"""SLD resolution with chronological backtracking.

Answers come out in depth-first, clause-source order. The selection rule
and the occur-check are switchable; a depth limit (resolution steps per
derivation branch) turns silent truncation into an explicit stream marker.
"""

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .terms import (
    Atom,
    Clause,
    Program,
    Query,
    Substitution,
    Var,
    apply_subst,
    apply_subst_atom,
    atom_vars,
    clause_vars,
    query_vars,
)
from .unify import resolve, resolve_atom, try_unify_atoms, undo_trail

SELECTION_RULES = ("leftmost", "rightmost", "fair_round_robin")


@dataclass(frozen=True)
class SolveOptions:
    selection_rule: str = "leftmost"
    depth_limit: Optional[int] = None
    answer_limit: Optional[int] = None
    occur_check: bool = True

    def __post_init__(self):
        if self.selection_rule not in SELECTION_RULES:
            raise ValueError(f"unknown selection rule {self.selection_rule!r}")
        if self.depth_limit is not None and self.depth_limit < 1:
            raise ValueError("depth_limit must be >= 1")


@dataclass(frozen=True)
class Answer:
    substitution: tuple  # sorted ((Var, Term), ...) restricted to query vars
    instantiated_query: Query

    def subst_dict(self) -> Substitution:
        return dict(self.substitution)


@dataclass(frozen=True)
class SearchTruncated:
    """Marker: some branches hit the depth limit, the stream may be incomplete."""

    branches_cut: int


@dataclass(frozen=True)
class TraceStep:
    goal: Query
    clause: Clause
    unifier: tuple  # ((Var, Term), ...) for the selected atom vs clause head


def _select(rule: str, n_goals: int, step: int) -> int:
    if rule == "leftmost":
        return 0
    if rule == "rightmost":
        return n_goals - 1
    return step % n_goals


def _canonical_renaming(inst: Query, qvars) -> dict:
    """Map leftover renamed-apart variables in an answer to fresh parseable
    names _G1, _G2, ... that avoid the query's own variables."""
    taken = {v.name for v in qvars}
    ren: dict = {}
    k = 1
    for v in query_vars(inst):
        if v in qvars or v in ren:
            continue
        while f"_G{k}" in taken:
            k += 1
        ren[v] = Var(f"_G{k}")
        k += 1
    return ren


def _rename_clause(c: Clause, counter) -> Clause:
    vs = clause_vars(c)
    if not vs:
        return c
    n = next(counter)
    ren = {v: Var(f"{v.name}@{n}") for v in vs}
    def sub(a: Atom) -> Atom:
        from .terms import apply_subst_atom
        return apply_subst_atom(ren, a)
    return Clause(sub(c.head), tuple(sub(b) for b in c.body))


def solve(program: Program, query: Query, opts: SolveOptions = SolveOptions()
          ) -> Iterator[Union[Answer, SearchTruncated]]:
    """Stream of computed answers for query; ends with a SearchTruncated
    marker if any branch was cut by the depth limit."""
    if not query.atoms:
        raise ValueError("query must be non-empty")
    declared = program.predicates()
    for a in query.atoms:
        if a.pred not in declared:
            raise ValueError(f"undeclared predicate {a.pred}/{len(a.args)}")
        if declared[a.pred] != len(a.args):
            raise ValueError(f"arity mismatch for {a.pred}")

    qvars = query_vars(query)
    bindings: dict = {}
    trail: list = []
    counter = itertools.count(1)
    truncated = 0
    emitted = 0
    clause_index = {p: program.clauses_for(p) for p in declared}

    def answers(goals: tuple, steps: int) -> Iterator[Answer]:
        nonlocal truncated
        if not goals:
            inst = Query(tuple(resolve_atom(a, bindings) for a in query.atoms))
            ren = _canonical_renaming(inst, qvars)
            inst = Query(tuple(apply_subst_atom(ren, a) for a in inst.atoms))
            subst = tuple(
                (v, apply_subst(ren, resolve(v, bindings)))
                for v in qvars
                if resolve(v, bindings) != v
            )
            yield Answer(subst, inst)
            return
        if opts.depth_limit is not None and steps >= opts.depth_limit:
            truncated += 1
            return
        idx = _select(opts.selection_rule, len(goals), steps)
        goal = goals[idx]
        for clause in clause_index.get(goal.pred, ()):
            renamed = _rename_clause(clause, counter)
            mark = len(trail)
            if try_unify_atoms(goal, renamed.head, bindings, trail, opts.occur_check):
                new_goals = goals[:idx] + renamed.body + goals[idx + 1:]
                yield from answers(new_goals, steps + 1)
            undo_trail(bindings, trail, mark)

    for ans in answers(tuple(query.atoms), 0):
        yield ans
        emitted += 1
        if opts.answer_limit is not None and emitted >= opts.answer_limit:
            return
    if truncated:
        yield SearchTruncated(truncated)


def solve_answers(program: Program, query: Query,
                  opts: SolveOptions = SolveOptions()) -> list:
    """All Answer items of solve, ignoring a truncation marker."""
    return [a for a in solve(program, query, opts) if isinstance(a, Answer)]


def derivation_trace(program: Program, query: Query,
                     opts: SolveOptions = SolveOptions()) -> Optional[list]:
    """Steps (goal, clause used, unifier) of the first successful branch,
    or None if the query has no answer within the options' limits."""
    if not query.atoms:
        raise ValueError("query must be non-empty")
    bindings: dict = {}
    trail: list = []
    counter = itertools.count(1)

    def search(goals: tuple, steps: int, acc: list) -> Optional[list]:
        if not goals:
            return acc
        if opts.depth_limit is not None and steps >= opts.depth_limit:
            return None
        idx = _select(opts.selection_rule, len(goals), steps)
        goal = goals[idx]
        for clause in program.clauses_for(goal.pred):
            renamed = _rename_clause(clause, counter)
            mark = len(trail)
            if try_unify_atoms(goal, renamed.head, bindings, trail, opts.occur_check):
                unifier = tuple(
                    sorted(
                        ((v, resolve(v, bindings)) for v in trail[mark:]),
                        key=lambda p: p[0].name,
                    )
                )
                snapshot = Query(tuple(resolve_atom(a, bindings) for a in goals))
                step = TraceStep(snapshot, clause, unifier)
                new_goals = goals[:idx] + renamed.body + goals[idx + 1:]
                found = search(new_goals, steps + 1, acc + [step])
                if found is not None:
                    return found
            undo_trail(bindings, trail, mark)
        return None

    return search(tuple(query.atoms), 0, [])
