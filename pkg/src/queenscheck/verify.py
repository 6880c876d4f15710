"""Bounded verification checks for programs against specification sets.

Every check quantifies over a finite, deterministic slice of ground
instances and returns a CheckReport. A reported counterexample is a real
one (the checks never guess); a pass is relative to the slice recorded in
the report's parameters. Budgets make exhaustion explicit: a check that
runs out of instances reports the verdict "resource-capped" instead of
silently passing.
"""

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Optional

from .herbrand import (
    DEFAULT_MAX_INSTANCES,
    ResourceCapError,
    _var_budgets,
    count_terms,
    enumerate_terms,
    tp_fixpoint,
)
from .specs import (
    LevelMapping,
    PlacementTriple,
    QUEENS_LEVEL_MAPPING,
    SpecSet,
    _forced_list,
    _placement_cs,
    _valid_placements,
    correct_up_to,
    down_diag_number,
    filler_terms,
    letter_terms,
    up_diag_number,
)
from .terms import (
    Atom,
    Clause,
    Compound,
    DEFAULT_SIGNATURE,
    Program,
    Query,
    Signature,
    Term,
    Var,
    apply_subst_atom,
    atom_is_ground,
    atom_vars,
    clause_vars,
    NIL,
    cons,
    format_atom,
    format_clause,
    format_term,
    make_list,
    members,
    numeral,
    term_depth,
)
from .unify import match_atom, unify_atoms


@dataclass
class CheckReport:
    """Outcome of one bounded check.

    The verdict is derived: "fail" if any counterexample was found,
    "resource-capped" if the instance budget ran out before the slice was
    exhausted, and "pass" otherwise. A pass certifies only the slice
    described by `parameters`.
    """

    check_name: str
    parameters: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    instances_examined: int = 0
    capped: bool = False

    MAX_RECORDED = 20

    @property
    def verdict(self) -> str:
        if self.counterexamples:
            return "fail"
        if self.capped:
            return "resource-capped"
        return "pass"

    def add_counterexample(self, cx: dict):
        if len(self.counterexamples) < self.MAX_RECORDED:
            self.counterexamples.append(cx)
        else:
            self.parameters["counterexamples_truncated"] = True


def report_text(r: CheckReport) -> str:
    lines = [f"{r.check_name}: {r.verdict} ({r.instances_examined} instances examined)"]
    for k in sorted(r.parameters):
        lines.append(f"  {k} = {r.parameters[k]}")
    for cx in r.counterexamples:
        detail = "; ".join(f"{k}={v}" for k, v in cx.items())
        lines.append(f"  counterexample: {detail}")
    return "\n".join(lines)


def report_record(r: CheckReport) -> dict:
    return {
        "check": r.check_name,
        "verdict": r.verdict,
        "instances_examined": r.instances_examined,
        "parameters": {k: repr(v) if not isinstance(v, (int, float, str, bool, type(None))) else v
                       for k, v in r.parameters.items()},
        "counterexamples": r.counterexamples,
    }


def _sample_index(spec: SpecSet, sig: Signature, depth: int,
                  limit: Optional[int] = None):
    """Sampled slice of the spec set, deduplicated and indexed by predicate."""
    by_pred: dict = {}
    seen: set = set()
    for a in spec.sample(sig, depth):
        if a in seen:
            continue
        seen.add(a)
        by_pred.setdefault(a.pred, set()).add(a)
        if limit is not None and len(seen) >= limit:
            break
    return by_pred, len(seen)


def _body_candidates(body, subst, by_pred, contains) -> Iterator[dict]:
    """Substitutions grounding the body with every atom inside the spec;
    non-ground atoms are matched against the sampled slice, ground ones are
    decided by the membership predicate directly."""
    if not body:
        yield subst
        return
    first, rest = body[0], body[1:]
    pattern = apply_subst_atom(subst, first)
    if atom_is_ground(pattern):
        if contains(pattern):
            yield from _body_candidates(rest, subst, by_pred, contains)
        return
    for fact in by_pred.get(pattern.pred, ()):
        ext = match_atom(pattern, fact, None)
        if ext is not None:
            merged = dict(subst)
            merged.update(ext)
            yield from _body_candidates(rest, merged, by_pred, contains)


def _uniform_pools(c: Clause, sig: Signature, depth: int, budget: int):
    """Per-variable term pools for scanning a clause's instances: the depth
    cap per variable, further capped by the largest uniform depth f whose
    product fits in the budget. Returns (pools, f) or None."""
    budgets = _var_budgets(c, depth)
    if budgets is None:
        return None
    vs = clause_vars(c)
    for f in range(depth, -1, -1):
        total = 1
        for v in vs:
            total *= count_terms(sig, min(budgets[v], f))
            if total > budget:
                break
        if total <= budget:
            pools = [tuple(enumerate_terms(sig, min(budgets[v], f))) for v in vs]
            return pools, f
    return None


def check_model(program: Program, spec: SpecSet,
                sig: Signature = DEFAULT_SIGNATURE, depth: int = 3,
                max_instances: int = DEFAULT_MAX_INSTANCES,
                fillers: Optional[tuple] = None) -> CheckReport:
    """Is the spec set a model of the program, on a bounded slice?

    For each clause, every scanned ground instance whose body atoms all lie
    in the spec must have its head in the spec. Unit clauses are scanned
    over budgeted uniform-depth term pools; clauses with bodies are scanned
    body-first against the spec's sampled slice, with leftover variables
    ranging over a small filler pool.
    """
    if fillers is None:
        fillers = filler_terms(sig, 2)
    report = CheckReport(
        "check_model",
        parameters={
            "spec": spec.name,
            "depth": depth,
            "max_instances": max_instances,
            "fillers": [format_term(f) for f in fillers],
        },
    )
    by_pred: Optional[dict] = None
    for ci, c in enumerate(program.clauses):
        share = max_instances - report.instances_examined
        if share <= 0:
            report.capped = True
            break
        if not c.body:
            got = _uniform_pools(c, sig, depth, share)
            if got is None:
                report.capped = True
                report.parameters[f"clause_{ci}_scan"] = "skipped: over budget"
                continue
            pools, f = got
            report.parameters[f"clause_{ci}_scan"] = f"uniform depth {f}"
            vs = clause_vars(c)
            for combo in product(*pools):
                report.instances_examined += 1
                head = apply_subst_atom(dict(zip(vs, combo)), c.head)
                if not spec.contains(head):
                    report.add_counterexample({
                        "clause": format_clause(c),
                        "head": format_atom(head),
                        "reason": "unit clause head outside the spec",
                    })
        else:
            if by_pred is None:
                by_pred, n_sampled = _sample_index(spec, sig, depth)
                report.parameters["sampled_slice"] = n_sampled
            report.parameters[f"clause_{ci}_scan"] = "body-directed over sampled slice"
            capped = False
            for sub in _body_candidates(c.body, {}, by_pred, spec.contains):
                free = [v for v in clause_vars(c) if v not in sub]
                for combo in product(fillers, repeat=len(free)):
                    report.instances_examined += 1
                    if report.instances_examined > max_instances:
                        capped = True
                        break
                    full = dict(sub)
                    full.update(zip(free, combo))
                    head = apply_subst_atom(full, c.head)
                    if not spec.contains(head):
                        body_inst = tuple(apply_subst_atom(full, b) for b in c.body)
                        report.add_counterexample({
                            "clause": format_clause(c),
                            "instance": format_clause(Clause(head, body_inst)),
                            "reason": "body in spec but head outside",
                        })
                if capped:
                    break
            if capped:
                report.capped = True
                break
    return report


@dataclass(frozen=True)
class CoverWitness:
    clause: Clause
    instance: Clause


def _subterms(t: Term, acc: set):
    acc.add(t)
    if isinstance(t, Compound):
        for a in t.args:
            _subterms(a, acc)


def _cover_pool(a: Atom, sig: Signature, depth: int) -> tuple:
    pool: set = set()
    for t in a.args:
        _subterms(t, pool)
    for t in filler_terms(sig, 2):
        pool.add(t)
    for n in range(0, depth + 1):
        pool.add(numeral(n))
    return tuple(sorted(pool, key=format_term))


def check_covered(a: Atom, program: Program, spec: SpecSet,
                  sig: Signature = DEFAULT_SIGNATURE, depth: int = 3
                  ) -> Optional[CoverWitness]:
    """A ground instance of some clause whose head is `a` and whose body
    atoms all lie in the spec, or None. Free body variables are searched
    over the subterms of `a`, small numerals, and filler constants."""
    pool = _cover_pool(a, sig, depth)

    def ground_body(body, subst):
        if not body:
            return subst
        pattern = apply_subst_atom(subst, body[0])
        free = atom_vars(pattern)
        if not free:
            if spec.contains(pattern):
                return ground_body(body[1:], subst)
            return None
        for combo in product(pool, repeat=len(free)):
            ext = dict(subst)
            ext.update(zip(free, combo))
            inst = apply_subst_atom(ext, body[0])
            if spec.contains(inst):
                found = ground_body(body[1:], ext)
                if found is not None:
                    return found
        return None

    for c in program.clauses:
        theta = unify_atoms(c.head, a)
        if theta is None:
            continue
        body = tuple(apply_subst_atom(theta, b) for b in c.body)
        full = ground_body(body, {})
        if full is not None:
            head = apply_subst_atom(full, apply_subst_atom(theta, c.head))
            body_inst = tuple(apply_subst_atom(full, b) for b in body)
            # head-only variables are irrelevant to coverage of a ground
            # atom; a successful unification leaves none once theta applies
            if head == a and all(atom_is_ground(b) for b in body_inst):
                return CoverWitness(c, Clause(head, body_inst))
    return None


def check_completeness_condition(program: Program, spec: SpecSet,
                                 sig: Signature = DEFAULT_SIGNATURE,
                                 depth: int = 3,
                                 sample_budget: int = 20_000) -> CheckReport:
    """Every sampled spec atom is covered: it heads some ground clause
    instance whose body atoms lie in the spec."""
    report = CheckReport(
        "check_completeness_condition",
        parameters={"spec": spec.name, "depth": depth, "sample_budget": sample_budget},
    )
    seen: set = set()
    for a in spec.sample(sig, depth):
        if a in seen:
            continue
        seen.add(a)
        report.instances_examined += 1
        if check_covered(a, program, spec, sig, depth) is None:
            report.add_counterexample({
                "atom": format_atom(a),
                "reason": "no clause instance with body inside the spec covers it",
            })
        if report.instances_examined >= sample_budget:
            break
    return report


def _recurrence_pool(sig: Signature, depth: int) -> tuple:
    """Probe terms up to the given depth, most structurally informative
    first so budget truncation keeps the interesting ones."""
    fill = filler_terms(sig, 2)
    a = fill[-1]
    pool = [numeral(1), make_list([a])] + list(fill)
    if depth >= 2:
        pool.extend([numeral(2), make_list([a, fill[0]]), Compound("cons", (a, a))])
    if depth >= 3:
        pool.append(make_list([a, fill[0], a]))
    seen, out = set(), []
    for t in pool:
        if t not in seen and term_depth(t) <= depth:
            seen.add(t)
            out.append(t)
    return tuple(out)


def check_recurrent(program: Program, lm: LevelMapping = QUEENS_LEVEL_MAPPING,
                    sig: Signature = DEFAULT_SIGNATURE, depth: int = 4,
                    max_instances: int = DEFAULT_MAX_INSTANCES) -> CheckReport:
    """Every scanned ground instance strictly decreases the level from head
    to each body atom. Unit clauses are trivially recurrent; instances are
    drawn from a structured probe pool (constants, numerals, short lists)."""
    pool = _recurrence_pool(sig, depth)
    report = CheckReport(
        "check_recurrent",
        parameters={"depth": depth, "probe_pool_size": len(pool),
                    "max_instances": max_instances},
    )
    for ci, c in enumerate(program.clauses):
        if not c.body:
            continue
        vs = clause_vars(c)
        share = max_instances - report.instances_examined
        n = len(pool)
        while n > 1 and n ** len(vs) > share:
            n -= 1
        if n ** len(vs) > share:
            report.capped = True
            break
        report.parameters[f"clause_{ci}_pool"] = n
        for combo in product(pool[:n], repeat=len(vs)):
            report.instances_examined += 1
            s = dict(zip(vs, combo))
            head = apply_subst_atom(s, c.head)
            try:
                hl = lm.atom_level(head)
                for b in c.body:
                    bi = apply_subst_atom(s, b)
                    if lm.atom_level(bi) >= hl:
                        report.add_counterexample({
                            "clause": format_clause(c),
                            "instance": format_clause(
                                Clause(head, tuple(apply_subst_atom(s, x) for x in c.body))
                            ),
                            "reason": f"level {lm.atom_level(bi)} of a body atom "
                                      f"is not below head level {hl}",
                        })
                        break
            except ValueError as e:
                report.add_counterexample({
                    "clause": format_clause(c),
                    "reason": str(e),
                })
                break
    return report


def _spine_bound(t: Term) -> Optional[int]:
    """Upper bound on term_size over all ground instances of t; None if the
    spine is open (ends in a variable)."""
    n = 0
    while isinstance(t, Compound) and (
        (t.functor == "cons" and len(t.args) == 2)
        or (t.functor == "s" and len(t.args) == 1)
    ):
        n += 1
        t = t.args[-1]
    if isinstance(t, Var):
        return None
    return n


def check_query_bound(query: Query,
                      lm: LevelMapping = QUEENS_LEVEL_MAPPING) -> Optional[int]:
    """Upper bound on the level of any ground instance of any query atom,
    or None if no bound is derivable (an open spine in a measured argument
    position can be instantiated arbitrarily deep)."""
    best = None
    for a in query.atoms:
        if a.pred == "pqs" and len(a.args) == 4:
            b1 = _spine_bound(a.args[0])
            b2 = _spine_bound(a.args[1])
            if b1 is None or b2 is None:
                return None
            bound = b1 + b2
        elif a.pred == "pq" and len(a.args) == 4:
            b2 = _spine_bound(a.args[1])
            if b2 is None:
                return None
            bound = b2
        else:
            return None
        best = bound if best is None else max(best, bound)
    return best


def compare_spec_fixpoint(program: Program, spec_correct: SpecSet,
                          spec_complete: SpecSet,
                          sig: Signature = DEFAULT_SIGNATURE, depth: int = 3,
                          pool: Optional[tuple] = None,
                          max_atoms: int = DEFAULT_MAX_INSTANCES,
                          evidence_budget: int = 20_000) -> CheckReport:
    """Bottom-up fixpoint versus the two spec sets: every fixpoint atom must
    lie in the correctness set (counterexamples otherwise); presence of
    sampled completeness atoms in the fixpoint is reported as bounded
    evidence, not as counterexamples (the fixpoint under-approximates)."""
    report = CheckReport(
        "compare_spec_fixpoint",
        parameters={
            "spec_correct": spec_correct.name,
            "spec_complete": spec_complete.name,
            "depth": depth,
        },
    )
    try:
        fix = tp_fixpoint(program, sig, depth, pool=pool, max_atoms=max_atoms)
    except ResourceCapError as e:
        fix = e.partial or frozenset()
        report.capped = True
    report.parameters["fixpoint_size"] = len(fix)
    report.instances_examined = len(fix)
    bad = 0
    for a in fix:
        if not spec_correct.contains(a):
            bad += 1
            report.add_counterexample({
                "atom": format_atom(a),
                "reason": "fixpoint atom outside the correctness spec",
            })
    report.parameters["fixpoint_atoms_outside_spec"] = bad
    present = absent = 0
    seen: set = set()
    for a in spec_complete.sample(sig, depth):
        if a in seen:
            continue
        seen.add(a)
        if a in fix:
            present += 1
        else:
            absent += 1
        if len(seen) >= evidence_budget:
            break
    report.parameters["bounded_evidence_present"] = present
    report.parameters["bounded_evidence_absent"] = absent
    return report


def check_fixpoint_exactness(program: Program, expected: Iterable[Atom],
                             sig: Signature = DEFAULT_SIGNATURE, depth: int = 3,
                             pool: Optional[tuple] = None,
                             max_atoms: int = DEFAULT_MAX_INSTANCES) -> CheckReport:
    """Set equality between the bottom-up fixpoint and an expected slice of
    atoms; both sides must be built over the same pool and depth for the
    comparison to be meaningful."""
    report = CheckReport(
        "check_fixpoint_exactness",
        parameters={"depth": depth},
    )
    try:
        fix = tp_fixpoint(program, sig, depth, pool=pool, max_atoms=max_atoms)
    except ResourceCapError as e:
        fix = e.partial or frozenset()
        report.capped = True
    want = set(expected)
    report.parameters["fixpoint_size"] = len(fix)
    report.parameters["expected_size"] = len(want)
    report.instances_examined = len(fix | want)
    for a in sorted(fix - want, key=format_atom)[:CheckReport.MAX_RECORDED]:
        report.add_counterexample({"atom": format_atom(a), "reason": "in fixpoint only"})
    for a in sorted(want - fix, key=format_atom)[:CheckReport.MAX_RECORDED]:
        report.add_counterexample({"atom": format_atom(a), "reason": "in expected slice only"})
    report.parameters["symmetric_difference"] = len(fix ^ want)
    return report


# --- row-shift property ----------------------------------------------------------

def _row_shift_structured(max_i: int, fill, letters):
    """Instance tuples (cs, us, ds, t, t2, m, i) built from diagonal-safe
    placements so that the forward premise (or the backward one) holds by
    construction."""
    for i in range(1, max_i + 1):
        for m in range(1, i + 1):
            for length in range(m, max_i + 1):
                for cols in _valid_placements(m, length):
                    cs = _placement_cs(cols, m, length, letters)
                    if cs is None:
                        continue
                    # (cs, [t|us], ds) correct up to m in the context of row i
                    fu = {
                        up_diag_number(j, cols[j - 1], i): numeral(j)
                        for j in range(1, m + 1)
                        if up_diag_number(j, cols[j - 1], i) > 0
                    }
                    fd = {
                        down_diag_number(j, cols[j - 1], i): numeral(j)
                        for j in range(1, m + 1)
                    }
                    uf = _forced_list(fu, 1, fill[0], NIL)
                    ds = _forced_list(fd, 0, fill[0], NIL)
                    for t2 in (fill[0], numeral(1)):
                        yield (cs, uf.args[1], ds, uf.args[0], t2, m, i)
                    # (cs, us, [t2|ds]) correct up to m in the context of row i+1
                    fu2 = {
                        up_diag_number(j, cols[j - 1], i + 1): numeral(j)
                        for j in range(1, m + 1)
                        if up_diag_number(j, cols[j - 1], i + 1) > 0
                    }
                    fd2 = {
                        down_diag_number(j, cols[j - 1], i + 1): numeral(j)
                        for j in range(1, m + 1)
                    }
                    us2 = _forced_list(fu2, 0, fill[0], NIL)
                    df = _forced_list(fd2, 1, fill[0], NIL)
                    yield (cs, us2, df.args[1], fill[0], df.args[0], m, i)


def _mutate_list(rng: random.Random, t, atoms):
    ms = members(t)
    if not ms:
        return make_list([rng.choice(atoms)])
    k = rng.randrange(len(ms))
    action = rng.randrange(3)
    if action == 0:
        ms[k] = rng.choice(atoms)
    elif action == 1:
        del ms[k]
    else:
        ms.append(rng.choice(atoms))
    return make_list(ms)


def check_row_shift(sig: Signature = DEFAULT_SIGNATURE, max_i: int = 4,
                    n_instances: int = 120_000, seed: int = 0) -> CheckReport:
    """Moving the head cell of the up-diagonal list onto the down-diagonal
    list shifts the context row up by one.

    Forward: if (cs,[t|us],ds) is correct up to m w.r.t. i, then
    (cs,us,[t2|ds]) is correct up to m w.r.t. i+1 for every t2. Backward:
    if (cs,us,[t2|ds]) is correct up to m w.r.t. i+1, then some t makes
    (cs,[t|us],ds) correct up to m w.r.t. i; the witness is searched over
    the queens 1..m and the fillers. Instances mix exhaustive constructions
    (premise true by design) with seeded random and perturbed ones.
    """
    fill = filler_terms(sig, 2)
    letters = letter_terms(sig)
    rng = random.Random(seed)
    report = CheckReport(
        "check_row_shift",
        parameters={"max_i": max_i, "n_instances": n_instances, "seed": seed},
    )
    forward_hits = backward_hits = 0
    witness_pool_base = list(fill)

    def handle(cs, us, ds, t, t2, m, i):
        nonlocal forward_hits, backward_hits
        report.instances_examined += 1
        us_full = cons(t, us)
        ds_full = cons(t2, ds)
        if correct_up_to(PlacementTriple(cs, us_full, ds), m, i):
            forward_hits += 1
            if not correct_up_to(PlacementTriple(cs, us, ds_full), m, i + 1):
                report.add_counterexample({
                    "cs": format_term(cs), "us": format_term(us),
                    "ds": format_term(ds), "t": format_term(t),
                    "t2": format_term(t2), "m": m, "i": i,
                    "reason": "forward implication fails",
                })
        if correct_up_to(PlacementTriple(cs, us, ds_full), m, i + 1):
            backward_hits += 1
            pool = [numeral(j) for j in range(1, m + 1)] + witness_pool_base
            if not any(
                correct_up_to(PlacementTriple(cs, cons(w, us), ds), m, i)
                for w in pool
            ):
                report.add_counterexample({
                    "cs": format_term(cs), "us": format_term(us),
                    "ds": format_term(ds), "t2": format_term(t2),
                    "m": m, "i": i,
                    "reason": "no backward witness in the bounded pool",
                })

    structured = list(_row_shift_structured(max_i, fill, letters))
    for tup in structured:
        handle(*tup)

    atoms = [numeral(n) for n in range(0, max_i + 1)] + list(letters[:3])
    tails = [NIL, fill[0]]

    def random_list():
        items = [rng.choice(atoms) for _ in range(rng.randrange(5))]
        return make_list(items, rng.choice(tails))

    while report.instances_examined < n_instances:
        if structured and rng.random() < 0.4:
            cs, us, ds, t, t2, m, i = structured[rng.randrange(len(structured))]
            which = rng.randrange(3)
            if which == 0:
                cs = _mutate_list(rng, cs, atoms)
            elif which == 1:
                us = _mutate_list(rng, us, atoms)
            else:
                ds = _mutate_list(rng, ds, atoms)
            if rng.random() < 0.3:
                t = rng.choice(atoms)
        else:
            i = rng.randrange(1, max_i + 1)
            m = rng.randrange(1, i + 1)
            cs, us, ds = random_list(), random_list(), random_list()
            t, t2 = rng.choice(atoms), rng.choice(atoms)
        handle(cs, us, ds, t, t2, m, i)

    report.parameters["structured_instances"] = len(structured)
    report.parameters["forward_premise_true"] = forward_hits
    report.parameters["backward_premise_true"] = backward_hits
    return report
