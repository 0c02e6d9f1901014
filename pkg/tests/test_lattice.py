import random

import pytest
from hypothesis import given, settings, strategies as st

from fclp.core import Attribute, Fact
from fclp.lattice import (
    BOTTOM, CHOICE_BOTTOM, CHOICE_TOP, INCOMPATIBLE, ChoiceSet, ConstraintDatabase, InconsistentFactSet, Just,
    NoneOf, choice_leq, choice_lub, compatible, constraint_leq, constraint_lub, db_leq, db_lub, erase,
    is_pairwise_incompatible, is_positive, promote,
)

from helpers import ALL_CONSTRAINTS, ALL_DBS, rand_choice_set

p, q = Attribute("p"), Attribute("q")
p1, p2, p3 = Attribute("p1"), Attribute("p2"), Attribute("p3")


def none(*xs):
    return NoneOf(frozenset(xs))


def db(**kw):
    return ConstraintDatabase.of(**kw)


# -- constraints --------------------------------------------------------------------


@pytest.mark.parametrize("c1,c2,expected", [
    (none(), Just("tt"), True),
    (Just("tt"), none("ff"), False),
    (none("a"), none("a", "b"), True),
    (none("a"), Just("a"), False),
    (Just("a"), Just("a"), True),
    (Just("a"), Just("b"), False),
])
def test_constraint_leq_cases(c1, c2, expected):
    assert constraint_leq(c1, c2) is expected


def test_constraint_lub_cases():
    assert constraint_lub([none("a"), Just("b")]) == Just("b")
    assert constraint_lub([none("a"), none("b")]) == none("a", "b")
    assert constraint_lub([Just("a"), Just("b")]) is INCOMPATIBLE
    assert constraint_lub([none("a"), Just("a")]) is INCOMPATIBLE
    assert constraint_lub([]) == BOTTOM
    assert not INCOMPATIBLE


# -- databases ------------------------------------------------------------------------


def test_bottom_entries_are_elided():
    d = db(p=none())
    assert d == ConstraintDatabase() and len(d) == 0 and d[p] == BOTTOM


def test_db_leq_examples():
    assert db_leq(ConstraintDatabase(), db(p=Just("tt")))
    assert db_leq(db(p=Just("tt")), db(p=Just("tt"), q=none("ff")))
    assert not db_leq(db(p=Just("tt")), db(p=Just("ff")))


def test_db_lub_examples():
    assert db_lub([db(p=Just("b")), db(q=Just("c"))]) == db(p=Just("b"), q=Just("c"))
    assert db_lub([db(p=Just("b")), db(p=none("c"))]) == db(p=Just("b"))
    assert db_lub([db(p=Just("b")), db(p=Just("c"))]) is INCOMPATIBLE


def test_compatible_examples():
    assert compatible(db(p=Just("tt")), db(q=Just("tt")))
    assert not compatible(db(p=Just("tt")), db(p=none("tt")))
    d = db(p=Just("a"), q=none("b"))
    assert compatible(d, d)


# -- choice sets ------------------------------------------------------------------------


def test_choice_leq_examples():
    c = ChoiceSet([db(p=Just("a")), db(p=Just("b"))])
    assert choice_leq(CHOICE_BOTTOM, c)
    assert choice_leq(c, CHOICE_TOP)
    assert not choice_leq(ChoiceSet([db(p=Just("tt"))]), ChoiceSet([db(p=Just("ff"))]))


def test_choice_lub_two_views():
    left = [
        ChoiceSet([ConstraintDatabase({p1: Just("b")})]),
        ChoiceSet([ConstraintDatabase({p2: Just("b")}), ConstraintDatabase({p2: Just("c")})]),
        ChoiceSet([ConstraintDatabase({p3: Just("b")}), ConstraintDatabase({p3: none("b")})]),
    ]
    right = ChoiceSet(
        ConstraintDatabase({p1: Just("b"), p2: Just(v2), p3: c3})
        for v2 in ("b", "c") for c3 in (Just("b"), none("b"))
    )
    assert choice_lub(left) == right and len(right) == 4


def test_choice_lub_identity_and_clash():
    c = ChoiceSet([db(p=Just("a")), db(p=none("a"))])
    assert choice_lub([c, CHOICE_BOTTOM]) == c
    assert choice_lub([ChoiceSet([db(p=Just("a"))]), ChoiceSet([db(p=Just("b"))])]) == CHOICE_TOP


def test_choice_set_rejects_compatible_members_when_checked():
    with pytest.raises(ValueError):
        ChoiceSet([db(p=Just("a")), db(q=Just("a"))], check=True)


# -- erasure and promotion ---------------------------------------------------------------


def test_erase_examples():
    assert erase(db(p=Just("tt"), q=none("a", "b"))) == {Fact(p, "tt")}
    assert erase(ConstraintDatabase()) == frozenset()


def test_promote_examples():
    assert promote({Fact(p, "tt")}) == db(p=Just("tt"))
    assert promote(set()) == ConstraintDatabase()
    with pytest.raises(InconsistentFactSet):
        promote({Fact(p, "tt"), Fact(p, "ff")})


def test_is_positive_examples():
    assert is_positive(db(p=Just("tt")))
    assert not is_positive(db(p=none("ff")))
    assert is_positive(ConstraintDatabase())


# -- properties (a few hundred cases each; the acceptance suite runs 10^4) -----------------

constraints = st.sampled_from(ALL_CONSTRAINTS)
dbs = st.sampled_from(ALL_DBS)
choice_sets = st.randoms(use_true_random=False).map(rand_choice_set)


@given(constraints, constraints, constraints)
def test_constraint_order_laws(a, b, c):
    assert constraint_leq(a, a)
    if constraint_leq(a, b) and constraint_leq(b, c):
        assert constraint_leq(a, c)
    if constraint_leq(a, b) and constraint_leq(b, a):
        assert a == b


@given(dbs, dbs)
def test_db_lub_is_least_upper_bound(d, e):
    lub = db_lub([d, e])
    uppers = [u for u in ALL_DBS if db_leq(d, u) and db_leq(e, u)]
    if lub is INCOMPATIBLE:
        assert not uppers and not compatible(d, e)
    else:
        assert db_leq(d, lub) and db_leq(e, lub)
        assert all(db_leq(lub, u) for u in uppers)


@given(dbs, dbs, dbs, dbs)
def test_incompatibility_is_monotone(d, d2, e, e2):
    if db_leq(d, d2) and db_leq(e, e2) and not compatible(d, e):
        assert not compatible(d2, e2)


@settings(max_examples=200)
@given(choice_sets, choice_sets, choice_sets)
def test_choice_lub_laws(a, b, c):
    ab = choice_lub([a, b])
    assert is_pairwise_incompatible(list(ab))
    assert choice_leq(a, ab) and choice_leq(b, ab)
    assert ab == choice_lub([b, a])
    assert choice_lub([ab, c]) == choice_lub([a, choice_lub([b, c])])


@given(dbs)
def test_erase_promote_adjunction(delta):
    facts = erase(delta)
    assert erase(promote(facts)) == facts
    assert db_leq(promote(facts), delta)
    assert (promote(facts) == delta) == is_positive(delta)


def test_random_choice_sets_are_valid():
    rng = random.Random(3)
    for _ in range(200):
        assert is_pairwise_incompatible(list(rand_choice_set(rng)))
