import itertools

import pytest
from hypothesis import given, settings, strategies as st

from freecons import factors as fc
from freecons import hnn
from freecons.errors import DegenerateError
from freecons.genericity import enumerate_ball
from freecons.wordspec import parse_word

from conftest import load_group
from oracles import bs_equal, hnn_letters, min_conjugate_length, naive_bs_reduce


@pytest.fixture(scope="module")
def bs_small():
    """BS(2,3) with the G-letter window cut to |g| <= 2 for brute-force checks."""
    return load_group("bs23", window=2)


def W(Gs, spec):
    return parse_word(spec, Gs)


def to_raw(letters):
    return [(0, (v,)) if k == "g" else (1, v) for k, v in letters]


bs_raw = st.lists(st.one_of(st.tuples(st.just("g"), st.integers(-12, 12)),
                            st.tuples(st.just("t"), st.sampled_from([1, -1]))), max_size=14)


# -- reduction ---------------------------------------------------------------------------

def test_britton_examples(bs23):
    x = hnn.britton_reduce([("t", -1), (0, (2,)), ("t", 1)], bs23)
    assert x.t_length == 0 and str(x) == "3"
    y = W(bs23, "t^-1 G:1 t")
    assert y.t_length == 2
    assert str(W(bs23, "t G:3 t^-1")) == "2"


def test_t_length_examples(bs23):
    assert hnn.t_length(bs23.identity) == 0
    assert hnn.t_length(W(bs23, "G:1 t")) == 1
    for k in range(1, 6):
        assert hnn.t_length(W(bs23, f"(G:1 t)^{k}")) == k


@settings(max_examples=400, deadline=None)
@given(u=bs_raw, v=bs_raw)
def test_reduction_matches_pinch_rewriting(bs23, u, v):
    x, y = bs23.word(to_raw(u)), bs23.word(to_raw(v))
    assert (x == bs23.identity) == (naive_bs_reduce(u, 2, 3) == [])
    assert (x == y) == bs_equal(u, v)
    assert (x * y == y) == bs_equal(u + v, v)
    # the rewriting fixpoint and the normal form agree on stable-letter count
    assert x.t_length == sum(k == "t" for k, _ in naive_bs_reduce(u, 2, 3))
    assert bs_equal(hnn_letters(x), u)


@settings(max_examples=300, deadline=None)
@given(u=bs_raw, v=bs_raw, k=st.integers(-5, 5), side=st.sampled_from(["A", "B"]))
def test_relation_insertion(bs23, u, v, k, side):
    if side == "A":
        lhs, rhs = [("t", -1), ("g", 2 * k), ("t", 1)], [("g", 3 * k)]
    else:
        lhs, rhs = [("t", 1), ("g", 3 * k), ("t", -1)], [("g", 2 * k)]
    assert bs23.word(to_raw(u + lhs + v)) == bs23.word(to_raw(u + rhs + v))


def test_britton_lemma_small_window(bs_small):
    Gs = bs_small
    for x in enumerate_ball(Gs, 3):
        assert Gs.word(x.letters()) == x
        assert x * x.inverse() == Gs.identity
        if x.t_length:
            assert x != Gs.identity


def test_length_laws(bs_small):
    ball = enumerate_ball(bs_small, 2).elements
    for x in ball:
        assert x.inverse().t_length == x.t_length
        for y in ball[::5]:
            assert (x * y).t_length <= x.t_length + y.t_length


def test_generic_path_matches_kernel():
    fast, slow = load_group("bs23", window=3), load_group("bs23", window=3, use_kernel=False)
    assert fast.backend == "kernel" and slow.backend == "generic"
    xs, ys = enumerate_ball(fast, 2).elements, enumerate_ball(slow, 2).elements
    for x, y in zip(xs[::3], ys[::3]):
        for u, v in zip(xs[::17], ys[::17]):
            assert (x * u.inverse()).to_spec() == (y * v.inverse()).to_spec()


# -- cyclic reduction, ellipticity, conjugacy ------------------------------------------------

def test_cyclic_reduce_examples(bs23):
    x = W(bs23, "t G:1 t^-1")
    form = hnn.cyclically_reduce_hnn(x)
    assert form.core == W(bs23, "G:1") and form.conjugator == bs23.t
    y = W(bs23, "(G:1 t)^2")
    assert hnn.cyclically_reduce_hnn(y).core == y
    z = W(bs23, "G:1 t G:3 t^-1 G:-1")
    assert z == W(bs23, "G:2")  # inner pinch already gone
    assert hnn.cyclically_reduce_hnn(z).core == z


def test_is_elliptic_examples(bs23):
    assert hnn.is_elliptic_hnn(W(bs23, "G:5"))
    assert not hnn.is_elliptic_hnn(W(bs23, "G:1 t"))
    assert hnn.is_elliptic_hnn(W(bs23, "t G:1 t^-1"))


def test_core_is_minimal_over_b2_conjugates(bs_small):
    Gs = bs_small
    conj = enumerate_ball(Gs, 2).elements
    tl = lambda w: w.t_length
    for x in enumerate_ball(Gs, 2):
        form = hnn.cyclically_reduce_hnn(x)
        assert form.conjugator * form.core * form.conjugator.inverse() == x
        assert form.core.t_length == min_conjugate_length(x, conj, tl)


def test_conjugacy_examples(bs23):
    t = bs23.t
    g = W(bs23, "G:1")
    c = hnn.are_conjugate_hnn(t, g * t * g.inverse())
    assert c == g and c * t * c.inverse() == g * t * g.inverse()
    a = W(bs23, "(G:1 t) (G:1 t G:1 t^-1)")
    b = W(bs23, "(G:1 t)^3")
    assert hnn.are_conjugate_hnn(a, b) is None


def test_conjugate_of_conjugate_found(bs_small):
    Gs = bs_small
    ws = enumerate_ball(Gs, 1).elements
    for x in enumerate_ball(Gs, 2).elements[::3]:
        for w in ws:
            y = w * x * w.inverse()
            c = hnn.are_conjugate_hnn(x, y)
            assert c is not None and c * x * c.inverse() == y


# -- roots --------------------------------------------------------------------------------

def test_roots_examples(bs23):
    gt = W(bs23, "G:1 t")
    assert hnn.dth_roots_hnn(gt, 1) == [gt]
    roots = hnn.dth_roots_hnn(hnn.power_hnn(gt, 2), 2)
    assert gt in roots
    brute = sorted(v for v in bs23.iter_ball(1) if hnn.power_hnn(v, 2) == hnn.power_hnn(gt, 2))
    assert roots == brute
    pmm = W(bs23, "G:1 t G:1 t G:1 t^-1")
    assert hnn.dth_roots_hnn(pmm, 2) == []
    assert hnn.power_pattern_excluded(pmm, 2)
    assert not hnn.power_pattern_excluded(hnn.power_hnn(gt, 2), 2)


def test_roots_against_brute_force(bs_small):
    Gs = bs_small
    cands = enumerate_ball(Gs, 2).elements
    for v in cands:
        if v.t_length == 0:
            continue
        for d in (2, 3):
            x = hnn.power_hnn(v, d)
            if hnn.is_elliptic_hnn(x):
                continue
            brute = sorted(c for c in cands if hnn.power_hnn(c, d) == x)
            roots = hnn.dth_roots_hnn(x, d)
            assert v in roots
            # the root search is not bounded by the candidate ball, so compare on the ball only
            assert [r for r in roots if r in set(cands)] == brute


# -- non-ascending and the witness ------------------------------------------------------------

def finite_groups_to_24():
    for n in range(1, 25):
        yield fc.cyclic_group(n)
    for n in range(3, 13):
        yield fc.dihedral_group(n)
    yield fc.symmetric_group(4)
    yield fc.permutation_group(sorted(
        p for p in itertools.permutations(range(4))
        if sum(p[i] > p[j] for i in range(4) for j in range(i + 1, 4)) % 2 == 0))


@pytest.mark.parametrize("G", list(finite_groups_to_24()), ids=lambda G: f"{G.name}-{G.n}")
def test_proper_subgroups_never_cover(G):
    subs = list(fc.iter_subgroups(G))
    for S in subs:
        A = fc.EnumeratedSubgroup(G, sorted(S))
        ok, g = hnn.is_nonascending(hnn.HnnGroup(G, A, A, fc.make_iso(A, A)))
        if len(S) == G.n:
            assert not ok
        else:
            assert ok and not A.contains(g)
    for S, T in itertools.combinations(subs, 2):
        if len(S) < G.n and len(T) < G.n:
            assert len(S | T) < G.n


def test_nonascending_examples(bs23):
    assert hnn.is_nonascending(bs23) == (True, (1,))
    Z = fc.AbelianGroup([0])
    A, B = fc.LatticeSubgroup(Z, [[1]]), fc.LatticeSubgroup(Z, [[2]])
    asc = hnn.HnnGroup(Z, A, B, fc.make_iso(A, B, [[2]]))
    assert hnn.is_nonascending(asc) == (False, None)
    with pytest.raises(DegenerateError, match="ascending"):
        hnn.witness_alpha_hnn(asc, 2, 0)


def test_witness_shape(bs23):
    w, (a, b) = hnn.witness_alpha_hnn(bs23, 2, 1)
    assert (a, b) == (10, 28)
    expected = W(bs23, f"(G:1 t)^{a} (G:1 t G:1 t^-1)^{b}")
    assert w == expected and w.t_length == a + 2 * b
    with pytest.raises(ValueError):
        hnn.witness_alpha_hnn(bs23, 1, 0)


def test_witness_search_failure_is_reported():
    Z = fc.AbelianGroup([0])
    A, B = fc.LatticeSubgroup(Z, [[2]]), fc.LatticeSubgroup(Z, [[3]])
    Gs = hnn.HnnGroup(Z, A, B, fc.make_iso(A, B, [[3]]), window=0)
    with pytest.raises(DegenerateError, match="window"):
        hnn.witness_alpha_hnn(Gs, 2, 0)
