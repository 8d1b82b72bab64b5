import pytest
from hypothesis import given, settings, strategies as st

from freecons import amalgam as am
from freecons import factors as fc
from freecons.errors import DegenerateError, EscalationCapError, GroupMismatchError
from freecons.genericity import enumerate_ball
from freecons.wordspec import parse_word

from oracles import (amalgam_equal, brute_conjugator, brute_roots, min_conjugate_length,
                     naive_amalgam_reduce)


def W(P, spec):
    return parse_word(spec, P)


def raw_strategy(P, max_size=12):
    letters = [(s, x) for s, F in enumerate(P.factors) for x in F.elements()]
    return st.lists(st.sampled_from(letters), max_size=max_size)


# -- reduce / length / invert ---------------------------------------------------------

def test_reduce_examples(z2z3, s3amalgam):
    G, H = z2z3.factors
    x = am.reduce([(0, G.parse("a")), (0, G.parse("a")), (1, H.parse("b"))], z2z3)
    assert x.prefix == G.identity and x.length == 1 and str(x) == "b"
    assert am.reduce([], z2z3).length == 0 and str(am.reduce([], z2z3)) == "identity"
    P = s3amalgam
    G, H = P.factors
    x = am.reduce([(0, G.parse("(12)")), (1, H.parse("(13)"))], P)
    # (13) = a r in H with r the minimal coset element; a crosses into the prefix
    a, rep = P.subgroups[1].coset_rep(H.parse("(13)"))
    assert rep == min(H.mul(b, H.parse("(13)")) for b in P.subgroups[1].elements())
    assert x.prefix == G.mul(G.parse("(12)"), P.iso.backward(a))
    assert x.syllables == ((1, rep),) and x.length == 1


def test_length_examples(z2z3, s3amalgam):
    assert am.length(W(s3amalgam, "G:(12)")) == 0
    assert am.length(W(s3amalgam, "H:(12)")) == 0
    assert am.length(W(s3amalgam, "G:(13)")) == 1
    assert am.length(W(z2z3, "G:a H:b G:a H:b2")) == 4


def test_invert_examples(z2z3):
    assert am.invert(z2z3.identity) == z2z3.identity
    x = W(z2z3, "G:a H:b")
    assert am.invert(x) == W(z2z3, "H:b2 G:a") and am.invert(x).length == 2


@pytest.mark.parametrize("name", ["z2z3", "s3amalgam"])
def test_invert_preserves_length_on_b5(name, request):
    P = request.getfixturevalue(name)
    for x in enumerate_ball(P, 5):
        assert am.invert(x).length == x.length
        assert (x * am.invert(x)) == P.identity


@pytest.mark.parametrize("name", ["z2z3", "s3amalgam"])
def test_reduce_idempotent_on_b6(name, request):
    P = request.getfixturevalue(name)
    ball = enumerate_ball(P, 6)
    assert len(set(ball)) == len(ball)
    for x in ball:
        assert P.word(x.letters()) == x


@pytest.mark.parametrize("name", ["z2z3", "s3amalgam"])
def test_normal_form_matches_naive_rewriting(name, request):
    P = request.getfixturevalue(name)

    @settings(max_examples=300, deadline=None)
    @given(u=raw_strategy(P), v=raw_strategy(P))
    def check(u, v):
        assert (P.word(u) == P.identity) == (naive_amalgam_reduce(u, P) == [])
        assert (P.word(u) == P.word(v)) == amalgam_equal(P, u, v)
        # a shared suffix makes equality likely enough to exercise both branches
        assert (P.word(u + v) == P.word(v)) == amalgam_equal(P, u + v, v)

    check()


def test_identification_soundness(s3amalgam):
    P = s3amalgam
    a_g = [(0, a) for a in P.subgroups[0].elements()]

    @settings(max_examples=300, deadline=None)
    @given(u=raw_strategy(P), v=raw_strategy(P), i=st.integers(0, 1))
    def check(u, v, i):
        s, a = a_g[i]
        b = P.iso.forward(a)
        assert P.word(u + [(0, a)] + v) == P.word(u + [(1, b)] + v)

    check()


@given(data=st.data())
@settings(max_examples=100, deadline=None)
def test_multiplication_laws(s3amalgam, data):
    P = s3amalgam
    x, y, z = (P.word(data.draw(raw_strategy(P, 8))) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert (x * y).length <= x.length + y.length
    assert (x * y).inverse() == y.inverse() * x.inverse()


def test_mixed_groups_rejected(z2z3, s3amalgam):
    with pytest.raises(GroupMismatchError):
        z2z3.identity * s3amalgam.identity


def test_trivial_amalgam_rejected():
    Z2 = fc.cyclic_group(2)
    with pytest.raises(DegenerateError):
        am.AmalgamGroup(Z2, Z2, fc.EnumeratedSubgroup(Z2, [0, 1]), fc.EnumeratedSubgroup(Z2, [0, 1]))


# -- cyclic reduction and ellipticity ------------------------------------------------------

def test_cyclically_reduce_examples(z2z3):
    P = z2z3
    x = W(P, "H:b G:a H:b2")
    form = am.cyclically_reduce(x)
    assert form.core == W(P, "G:a") and form.conjugator == W(P, "H:b")
    for spec in ("", "G:a", "H:b"):
        y = W(P, spec)
        assert am.cyclically_reduce(y) == am.CyclicForm(P.identity, y)
    z = W(P, "(G:a H:b)^3")
    assert am.cyclically_reduce(z).core == z


@pytest.mark.parametrize("name", ["z2z3", "s3amalgam"])
def test_cyclic_core_is_minimal(name, request):
    P = request.getfixturevalue(name)
    conj_ball = enumerate_ball(P, 3).elements
    for x in enumerate_ball(P, 4 if name == "z2z3" else 3):
        form = am.cyclically_reduce(x)
        assert form.conjugator * form.core * form.conjugator.inverse() == x
        core = form.core
        if core.length >= 2:
            assert core.syllables[0][0] != core.syllables[-1][0]
        assert core.length == min_conjugate_length(x, conj_ball)


def test_is_elliptic_examples(z2z3, s3amalgam):
    assert am.is_elliptic(W(s3amalgam, "G:(12)"))
    assert not am.is_elliptic(W(z2z3, "G:a H:b"))
    assert am.is_elliptic(W(z2z3, "G:a H:b G:a"))
    assert am.is_elliptic(W(s3amalgam, "G:(13) H:(123) G:(13)"))


# -- conjugacy --------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["z2z3", "s3amalgam"])
def test_conjugate_of_conjugate_found(name, request):
    P = request.getfixturevalue(name)
    for x in enumerate_ball(P, 3):
        for w in enumerate_ball(P, 2):
            y = w * x * w.inverse()
            c = am.are_conjugate(x, y)
            assert c is not None
            assert c * x * c.inverse() == y


def test_conjugacy_examples(z2z3):
    P = z2z3
    assert am.are_conjugate(W(P, "G:a H:b"), W(P, "G:a H:b2")) is None
    x = W(P, "G:a H:b")
    # (ab)^-1 = b2 a, which is a cyclic permutation of a b2
    c = am.are_conjugate(x, x.inverse())
    ball = enumerate_ball(P, 4).elements
    assert (c is None) == (brute_conjugator(x, x.inverse(), ball) is None)
    assert c is None


# -- powers and roots -------------------------------------------------------------------

def test_power_examples(z2z3):
    x = W(z2z3, "G:a H:b")
    for d in range(6):
        assert am.power(x, d).length == 2 * d
    assert am.power(x, 0) == z2z3.identity and am.power(x, 1) == x
    assert am.power(x, -2) == am.power(x.inverse(), 2)


def test_roots_central_example(central):
    P = central(2)
    w = W(P, "G:(1,0,0) H:(0,0,1)")
    roots = am.dth_roots(am.power(w, 2), 2)
    A = [P.a_element(a) for a in P.subgroups[0].elements()]
    assert sorted(roots, key=lambda v: v.sort_key()) == sorted((a * w for a in A), key=lambda v: v.sort_key())
    assert len(roots) == 4
    assert am.dth_roots(am.power(w, 3), 3) == [w]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_central_root_count_law(central, k):
    P = central(k)
    for w in enumerate_ball(P, 4):
        if am.is_elliptic(w):
            continue
        assert len(am.dth_roots(am.power(w, 2), 2)) == 2 ** k
        assert len(am.dth_roots(am.power(w, 3), 3)) == 1


def test_malnormal_single_root(s3amalgam):
    P = s3amalgam
    for x in enumerate_ball(P, 4):
        if am.is_elliptic(x):
            continue
        for d in (2, 3):
            assert am.dth_roots(am.power(x, d), d) == [x]


@pytest.mark.parametrize("name", ["z2z3", "s3amalgam"])
def test_roots_complete_against_brute_force(name, request):
    P = request.getfixturevalue(name)
    cands = enumerate_ball(P, 4).elements
    for v in cands:
        for d in (2, 3):
            x = am.power(v, d)
            if am.is_elliptic(x) or x.length > 8:
                continue
            brute = brute_roots(x, d, [c for c in cands if c.length * d >= x.length])
            assert am.dth_roots(x, d) == brute


def test_roots_edge_cases(z2z3):
    P = z2z3
    assert am.dth_roots(W(P, "G:a H:b"), 2) == []  # odd core length
    assert am.dth_roots(W(P, "H:b"), 2) == [W(P, "H:b2")]
    for r in am.dth_roots(P.identity, 2):
        assert am.power(r, 2) == P.identity
    assert am.dth_roots(W(P, "G:a"), 1) == [W(P, "G:a")]


def test_centralizer_in_a(z2z3, central, s3amalgam):
    assert len(am.centralizer_in_A(W(z2z3, "G:a H:b"))) == 1
    P = central(2)
    assert len(am.centralizer_in_A(W(P, "G:(1,0,0) H:(0,0,1)"))) == 4
    S = s3amalgam
    for x in enumerate_ball(S, 3):
        if not am.is_elliptic(x):
            assert [S.factors[0].fmt(a.payload) for a in am.centralizer_in_A(x)] == ["e"]


# -- witness ------------------------------------------------------------------------------

def test_witness_examples(z2z3, z2z2):
    P = z2z3
    w, exps = am.witness_alpha(P, 2, 0)
    assert exps == (8, 8)
    assert w == W(P, "(G:a H:b)^8 (G:a H:b2 G:a H:b)^8")
    assert am.square_exponents(1) == (5, 6)
    with pytest.raises(DegenerateError, match="dihedral"):
        am.witness_alpha(z2z2, 2, 0)
    with pytest.raises(ValueError):
        am.witness_alpha(P, 1, 0)


def test_escalation_schedule():
    assert am.escalated_exponents(2, 1, 0) == (10, 28)
    assert am.escalated_exponents(2, 1, 3) == (80, 224)
    with pytest.raises(EscalationCapError):
        am.escalated_exponents(2, 1, am.MAX_ESCALATIONS + 1)


def test_word_text(z2z3, s3amalgam):
    x = W(z2z3, "G:a H:b2")
    assert str(x) == "a b2" and x.to_spec() == "G:a H:b2"
    y = W(s3amalgam, "G:(12) H:(13)")
    assert W(s3amalgam, y.to_spec()) == y
