"""Term model: numerals, lists, substitutions, depth, printing."""

import pytest
from hypothesis import given, strategies as st

from queenscheck.terms import (
    Atom,
    Clause,
    Compound,
    DEFAULT_SIGNATURE,
    MINIMAL_SIGNATURE,
    NIL,
    Program,
    Query,
    Signature,
    SignatureError,
    Var,
    ZERO,
    apply_subst,
    apply_subst_atom,
    atom_depth,
    atom_is_ground,
    clause_vars,
    compose_subst,
    cons,
    distinct_members,
    format_atom,
    format_clause,
    format_term,
    is_ground,
    is_proper_list,
    kth_member,
    list_length,
    make_list,
    members,
    members_with_index,
    numeral,
    numeral_value,
    term_depth,
    term_vars,
)

X, Y, V = Var("X"), Var("Y"), Var("V")
a, b = Compound("a"), Compound("b")


def test_apply_subst_basic():
    assert apply_subst({X: ZERO}, Compound("s", (X,))) == numeral(1)
    t = cons(a, cons(b, NIL))
    assert apply_subst({}, t) == t
    assert apply_subst({X: numeral(1), Y: NIL}, cons(X, Y)) == make_list([numeral(1)])


def test_apply_subst_ground_unchanged():
    t = make_list([numeral(2), a])
    assert apply_subst({X: b}, t) == t


def test_numeral_roundtrip():
    assert numeral(0) == ZERO
    assert numeral(2) == Compound("s", (Compound("s", (ZERO,)),))
    for n in (0, 1, 7, 100):
        assert numeral_value(numeral(n)) == n
    assert numeral_value(NIL) is None
    assert numeral_value(Compound("s", (NIL,))) is None
    with pytest.raises(ValueError):
        numeral(-1)


def test_kth_member():
    t = make_list([numeral(1), a, numeral(2), b])
    assert kth_member(t, 1) == numeral(1)
    assert kth_member(t, 3) == numeral(2)
    assert kth_member(t, 4) == b
    assert kth_member(t, 5) is None
    assert kth_member(NIL, 1) is None
    # open lists and non-list chains still expose their cons prefix
    assert kth_member(cons(a, V), 1) == a
    assert kth_member(cons(a, V), 2) is None
    assert kth_member(cons(a, cons(b, ZERO)), 2) == b
    with pytest.raises(ValueError):
        kth_member(t, 0)


def test_members_with_index():
    t = make_list([numeral(1), ZERO])
    assert members_with_index(t) == [(1, numeral(1)), (2, ZERO)]
    assert members_with_index(NIL) == []
    assert members_with_index(cons(a, V)) == [(1, a)]
    assert members(t) == [numeral(1), ZERO]


def test_list_predicates():
    t = make_list([numeral(1), a, numeral(2), b])
    assert is_proper_list(t)
    assert list_length(t) == 4
    assert distinct_members(t)
    rep = make_list([numeral(1), numeral(1)])
    assert is_proper_list(rep) and not distinct_members(rep)
    open_l = cons(numeral(1), V)
    assert not is_proper_list(open_l)
    assert list_length(open_l) is None
    assert not distinct_members(open_l)


# position-k membership commutes with substitution
@given(
    st.lists(st.sampled_from([a, b, X, Y, numeral(1)]), min_size=1, max_size=5),
    st.integers(min_value=1, max_value=5),
    st.sampled_from([{}, {X: a}, {X: numeral(2), Y: NIL}, {Y: cons(a, NIL)}]),
)
def test_kth_member_closed_under_substitution(items, k, s):
    t = make_list(items)
    e = kth_member(t, k)
    if e is not None:
        assert kth_member(apply_subst(s, t), k) == apply_subst(s, e)


@given(
    st.sampled_from([cons(X, Y), Compound("s", (X,)), make_list([X, a, Y]), a]),
    st.sampled_from([{}, {X: a}, {X: b, Y: numeral(1)}]),
    st.sampled_from([{}, {Y: NIL}, {X: numeral(2)}]),
)
def test_compose_subst_pointwise(t, s1, s2):
    composed = compose_subst(s1, s2)
    assert apply_subst(composed, t) == apply_subst(s2, apply_subst(s1, t))


def test_term_vars_first_occurrence_order():
    t = Compound("f", (Y, cons(X, Y)))
    assert term_vars(t) == [Y, X]
    assert term_vars(a) == []


def test_groundness():
    assert is_ground(make_list([numeral(1), a]))
    assert not is_ground(cons(X, NIL))
    assert atom_is_ground(Atom("pq", (ZERO, NIL, NIL, NIL)))
    assert not atom_is_ground(Atom("pq", (X,)))


def test_depths():
    assert term_depth(ZERO) == 0
    assert term_depth(X) == 0
    assert term_depth(numeral(3)) == 3
    assert term_depth(make_list([a, b])) == 2
    assert atom_depth(Atom("p")) == 0
    assert atom_depth(Atom("p", (numeral(2), a))) == 2


def test_formatting():
    assert format_term(numeral(2)) == "2"
    assert format_term(NIL) == "[]"
    assert format_term(make_list([numeral(1), a])) == "[1,a]"
    assert format_term(cons(a, V)) == "[a|V]"
    assert format_term(Compound("s", (NIL,))) == "s([])"
    assert format_atom(Atom("pqs", (ZERO, X, Y, V))) == "pqs(0,X,Y,V)"
    c = Clause(Atom("p", (X,)), (Atom("q", (X,)),))
    assert format_clause(c) == "p(X) :- q(X)."


def test_signature_checks():
    assert DEFAULT_SIGNATURE.arity("cons") == 2
    assert DEFAULT_SIGNATURE.arity("nope") is None
    assert set("abcdef") <= set(DEFAULT_SIGNATURE.constants())
    assert MINIMAL_SIGNATURE.functions() == (("cons", 2), ("s", 1))
    DEFAULT_SIGNATURE.check_term(make_list([a, numeral(1)]))
    with pytest.raises(SignatureError):
        DEFAULT_SIGNATURE.check_term(Compound("g", (a,)))
    with pytest.raises(SignatureError):
        DEFAULT_SIGNATURE.check_term(Compound("s", (a, b)))
    with pytest.raises(SignatureError):
        Signature(frozenset([("f", 1)]))  # no constants
    with pytest.raises(SignatureError):
        Signature(frozenset([("f", 1), ("f", 2), ("c", 0)]))


def test_program_accessors():
    p = Program((
        Clause(Atom("p", (X,)), ()),
        Clause(Atom("q", (X, Y)), (Atom("p", (X,)),)),
    ))
    assert len(p.clauses_for("p")) == 1
    assert p.predicates() == {"p": 1, "q": 2}
    assert clause_vars(p.clauses[1]) == [X, Y]


def test_apply_subst_atom_and_query():
    atom = Atom("p", (X, a))
    assert apply_subst_atom({X: b}, atom) == Atom("p", (b, a))
    q = Query((atom,))
    assert q.atoms == (atom,)
