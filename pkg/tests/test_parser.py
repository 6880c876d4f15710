"""Concrete syntax: parsing, error reporting, print/parse round trips."""

import pytest

from queenscheck.parser import ParseError, parse_program, parse_query, parse_term
from queenscheck.terms import (
    Atom,
    Compound,
    DEFAULT_SIGNATURE,
    NIL,
    Var,
    atom_vars,
    clause_vars,
    cons,
    format_program,
    format_term,
    make_list,
    numeral,
)


def test_parse_unit_clause_fresh_underscores():
    p = parse_program("pqs(0,_,_,_).")
    assert len(p.clauses) == 1
    c = p.clauses[0]
    assert c.head.pred == "pqs" and not c.body
    assert c.head.args[0] == numeral(0)
    vs = atom_vars(c.head)
    assert len(vs) == 3 and len(set(vs)) == 3  # each _ is fresh


def test_parse_empty_program():
    assert parse_program("").clauses == ()


def test_parse_shared_variable_clause():
    p = parse_program("pq(I,[I|_],[I|_],[I|_]).")
    c = p.clauses[0]
    i = Var("I")
    assert c.head.args[0] == i
    for arg in c.head.args[1:]:
        assert arg.functor == "cons" and arg.args[0] == i
    # I plus three distinct tail variables
    assert len(clause_vars(c)) == 4


def test_parse_terms():
    assert parse_term("0") == numeral(0)
    assert parse_term("3") == numeral(3)
    assert parse_term("[]") == NIL
    assert parse_term("[1,a]") == make_list([numeral(1), Compound("a")])
    assert parse_term("[a|T]") == cons(Compound("a"), Var("T"))
    assert parse_term("s(s(0))") == numeral(2)
    assert parse_term("foo(X,bar)") == Compound("foo", (Var("X"), Compound("bar")))


def test_parse_query_and_rules():
    q = parse_query("pqs(0,A,B,C)")
    assert q.atoms == (Atom("pqs", (numeral(0), Var("A"), Var("B"), Var("C"))),)
    q2 = parse_query("p(X), q(X).")
    assert len(q2.atoms) == 2
    p = parse_program("p(X) :- q(X), r(X).  % trailing comment\n")
    assert len(p.clauses[0].body) == 2


def test_parse_errors_have_location():
    with pytest.raises(ParseError) as e:
        parse_term("s(0")
    assert e.value.line == 1 and e.value.col == 4
    with pytest.raises(ParseError):
        parse_term("?")
    with pytest.raises(ParseError):
        parse_query("p(X) trailing")
    with pytest.raises(ParseError):
        parse_program("p(a). p(a,b).")  # predicate used at two arities


def test_signature_enforcement():
    parse_program("p([a,b]).", DEFAULT_SIGNATURE)
    with pytest.raises(Exception):
        parse_program("p(zebra(0)).", DEFAULT_SIGNATURE)


def test_print_parse_roundtrip():
    src = "pqs(0,_,_,_).\npqs(s(I),Cs,Us,[_|Ds]) :- pqs(I,Cs,[_|Us],Ds), pq(s(I),Cs,Us,Ds).\n"
    p = parse_program(src)
    again = parse_program(format_program(p))
    # identical up to the fresh names the parser invents for _
    assert len(again.clauses) == len(p.clauses)
    assert format_program(again) == format_program(p)


def test_numeral_printing_roundtrip():
    for text in ("0", "5", "[1,2|T]", "[s(0)|X]", "cons(a,a)"):
        assert format_term(parse_term(format_term(parse_term(text)))) == format_term(
            parse_term(text)
        )
