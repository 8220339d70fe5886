from hypothesis import given
from hypothesis import strategies as st

from kanforge.names import (Abstraction, ContractViolation, Name, Perm, abstract, act_any, alpha_equal,
                            extend_over_abstraction, fresh_name, fresh_names, parse_name, support_any)

import pytest

names = st.integers(0, 6).map(Name)


@st.composite
def perms(draw):
    carrier = draw(st.lists(names, unique=True, max_size=5))
    image = draw(st.permutations(carrier))
    return Perm(tuple(zip(carrier, image)))


def test_name_roundtrip():
    assert parse_name("a12") == Name(12)
    assert str(Name(3)) == "a3"
    with pytest.raises(ValueError):
        parse_name("b1")
    with pytest.raises(ValueError):
        Name(-1)


def test_fresh():
    assert fresh_name([Name(0), Name(2)]) == Name(1)
    assert fresh_names(3, [Name(1)]) == [Name(0), Name(2), Name(3)]


def test_perm_rejects_non_bijection():
    with pytest.raises(ValueError):
        Perm(((Name(0), Name(1)),))


@given(perms(), perms(), names)
def test_composition_order(p, q, a):
    assert (p * q)(a) == p(q(a))


@given(perms(), names)
def test_inverse(p, a):
    assert p.inverse()(p(a)) == a
    assert (p * p.inverse()).is_identity()


def test_cycles():
    a0, a1, a2 = Name(0), Name(1), Name(2)
    p = Perm.from_cycles([a0, a1, a2])
    assert (p(a0), p(a1), p(a2)) == (a1, a2, a0)


@given(perms(), st.lists(names, max_size=4))
def test_support_equivariant(p, xs):
    x = tuple(xs)
    assert support_any(act_any(p, x)) == frozenset(p(n) for n in support_any(x))


def test_abstraction_canonical_and_alpha():
    a0, a1, a3 = Name(0), Name(1), Name(3)
    t = abstract(a3, (a3, a1))
    assert t == abstract(a0, (a0, a1))
    assert t.bound == a0
    assert alpha_equal(Abstraction(a3, (a3, a1)), Abstraction(Name(5), (Name(5), a1)))
    assert not alpha_equal(Abstraction(a3, (a3, a1)), Abstraction(a3, (a1, a3)))
    assert support_any(t) == {a1}


def test_extend_over_abstraction():
    first = extend_over_abstraction(lambda b, x: x[1])
    assert first(abstract(Name(2), (Name(2), Name(7)))) == Name(7)
    leaky = extend_over_abstraction(lambda b, x: x[0])
    with pytest.raises(ContractViolation):
        leaky(abstract(Name(2), (Name(2), Name(7))))
