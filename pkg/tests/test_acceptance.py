"""Acceptance suite: one test per criterion, each at its stated tolerance and
time limit.  The terminal summary prints one PASS/FAIL line per criterion."""

import itertools
import random
import time

import pytest

from freecons import amalgam as am
from freecons import genericity as gen
from freecons import hnn
from freecons.cli import cmd_census, cmd_detect, cmd_verify, main
from freecons.config import load

from conftest import CONFIGS
from oracles import brute_conjugator, root_counts


def cfg_path(name):
    return str(CONFIGS / f"{name}.yaml")


class Clock:
    def __init__(self, limit):
        self.limit = limit
        self.t0 = time.perf_counter()

    def check(self):
        elapsed = time.perf_counter() - self.t0
        assert elapsed < self.limit, f"took {elapsed:.1f}s, limit {self.limit}s"


# -- 1 -----------------------------------------------------------------------------------

def amalgam_relations(P, rng):
    """A pair of raw words equal by a defining relation: the two copies of an
    element of A, or a factor product against its value."""
    a = rng.choice(P.subgroups[0].elements())
    if rng.random() < 0.5:
        return [(0, a)], [(1, P.iso.forward(a))]
    s = rng.randrange(2)
    F = P.factors[s]
    x, y = rng.randrange(F.n), rng.randrange(F.n)
    return [(s, x), (s, y)], [(s, F.mul(x, y))]


def bs_relation(rng):
    k = rng.randint(-6, 6)
    if rng.random() < 0.5:
        return [(1, -1), (0, (2 * k,)), (1, 1)], [(0, (3 * k,))]
    return [(1, 1), (0, (3 * k,)), (1, -1)], [(0, (2 * k,))]


@pytest.mark.criterion(1, "normal-form soundness under relation insertion")
def test_criterion_1_normal_form_soundness(z2z3, s3amalgam, bs23):
    clock = Clock(10)
    rng = random.Random(1)
    failures = 0
    for P in (z2z3, s3amalgam):
        letters = [(s, x) for s, F in enumerate(P.factors) for x in F.elements()]
        for _ in range(10_000):
            w = [rng.choice(letters) for _ in range(rng.randint(0, 12))]
            i = rng.randint(0, len(w))
            lhs, rhs = amalgam_relations(P, rng)
            failures += P.word(w[:i] + lhs + w[i:]) != P.word(w[:i] + rhs + w[i:])
    for _ in range(10_000):
        w = [(0, (rng.randint(-9, 9),)) if rng.random() < 0.5 else (1, rng.choice((1, -1)))
             for _ in range(rng.randint(0, 12))]
        i = rng.randint(0, len(w))
        lhs, rhs = bs_relation(rng)
        failures += bs23.word(w[:i] + lhs + w[i:]) != bs23.word(w[:i] + rhs + w[i:])
    assert failures == 0
    clock.check()


# -- 2 -----------------------------------------------------------------------------------

def pinch_free_words(window, max_t):
    """Every raw word g0 t^e1 g1 ... t^ek gk with |g| <= window and no pinch."""
    W = range(-window, window + 1)
    for k in range(1, max_t + 1):
        for es in itertools.product((1, -1), repeat=k):
            for mids in itertools.product(W, repeat=k - 1):
                if any((es[i] == -1 and es[i + 1] == 1 and mids[i] % 2 == 0) or
                       (es[i] == 1 and es[i + 1] == -1 and mids[i] % 3 == 0) for i in range(k - 1)):
                    continue
                for g0, gk in itertools.product(W, repeat=2):
                    word = [(0, (g0,))]
                    for i, e in enumerate(es):
                        word.append((1, e))
                        if i < k - 1:
                            word.append((0, (mids[i],)))
                    word.append((0, (gk,)))
                    yield k, word


@pytest.mark.criterion(2, "Britton's lemma in BS(2,3)")
def test_criterion_2_britton(bs23):
    clock = Clock(30)
    bad = count = 0
    for k, word in pinch_free_words(9, 3):
        x = bs23.word(word)
        count += 1
        bad += x.t_length != k or x == bs23.identity
    assert count > 600_000 and bad == 0
    rng = random.Random(2)
    for _ in range(10_000):
        w = bs23.word([(0, (rng.randint(-9, 9),)) if rng.random() < 0.5 else (1, rng.choice((1, -1)))
                       for _ in range(rng.randint(1, 12))])
        assert w * w.inverse() == bs23.identity
    clock.check()


# -- 3, 4, 5 -------------------------------------------------------------------------------

@pytest.mark.criterion(3, "witness with the original exponents on Z/2*Z/3")
@pytest.mark.parametrize("n", [0, 1, 2])
def test_criterion_3_original_exponents(z2z3, n):
    clock = Clock(60)
    exps = am.square_exponents(n)
    assert exps == (n + 4, 3 * n + 3)
    rep = gen.verify_witness(z2z3, 2, n, exponents=exps)
    assert rep.passed and rep.exact
    assert all(v["hyperbolic"] and v["root_free"] for v in rep.verdicts)
    assert gen.recheck_report(z2z3, rep)
    clock.check()


@pytest.mark.criterion(4, "witness verification on S3 *_C2 S3")
def test_criterion_4_s3_amalgam(s3amalgam):
    clock = Clock(300)
    for d, n in itertools.product((2, 3), (0, 1)):
        rep = gen.verify_witness(s3amalgam, d, n)
        assert rep.passed and len(rep.escalations) <= 6
        assert gen.recheck_report(s3amalgam, rep)
    clock.check()


@pytest.mark.criterion(5, "witness verification on BS(2,3)")
def test_criterion_5_hnn(bs23):
    clock = Clock(300)
    assert bs23.window == 9
    for d, n in itertools.product((2, 3), (0, 1)):
        rep = gen.verify_witness(bs23, d, n)
        assert rep.passed and rep.window == 9
        assert rep.letters == {"g": "1"}
    clock.check()


# -- 6, 7 ----------------------------------------------------------------------------------

@pytest.mark.criterion(6, "root-count dichotomy in the central example")
@pytest.mark.parametrize("k", [1, 2, 3])
def test_criterion_6_central_census(central, k):
    clock = Clock(120)
    P = central(k)
    ball = gen.enumerate_ball(P, 4).elements
    for d, s in ((2, 2 ** k), (3, 1)):
        rep = gen.fs_type_census(P, d, 4)
        assert rep.s_observed == s
        counts = root_counts(ball, d)
        expected = [{"element": x.to_spec(), "roots": counts[x ** d]} for x in ball
                    if not am.is_elliptic(x) and x not in counts]
        assert rep.entries == expected
    clock.check()


@pytest.mark.criterion(7, "single roots in the malnormal amalgam")
def test_criterion_7_malnormal(s3amalgam):
    clock = Clock(120)
    ball = gen.enumerate_ball(s3amalgam, 4).elements
    for d in (2, 3):
        counts = root_counts(ball, d)
        for x in ball:
            if am.is_elliptic(x):
                continue
            y = x ** d
            assert am.dth_roots(y, d) == [x]
            assert counts[y] == 1
        assert gen.fs_type_census(s3amalgam, d, 4).s_observed == 1
    clock.check()


# -- 8 -------------------------------------------------------------------------------------

@pytest.mark.criterion(8, "conjugacy test against brute force")
def test_criterion_8_conjugacy(z2z3):
    clock = Clock(120)
    b3 = gen.enumerate_ball(z2z3, 3).elements
    b4 = gen.enumerate_ball(z2z3, 4).elements
    positives = 0
    for x, y in itertools.product(b3, repeat=2):
        c = am.are_conjugate(x, y)
        if c is not None:
            assert c * x * c.inverse() == y
        if brute_conjugator(x, y, b4) is not None:
            positives += 1
            assert c is not None
    assert positives > len(b3)
    clock.check()


# -- 9 -------------------------------------------------------------------------------------

@pytest.mark.criterion(9, "dihedral exclusion")
def test_criterion_9_dihedral(z2z2, capsys):
    clock = Clock(30)
    r = cmd_detect(load(cfg_path("z2_z2")))
    assert "degenerate: dihedral case" in r.payload.splitlines()
    assert main(["verify", "--config", cfg_path("z2_z2"), "-d", "2", "-n", "0"]) == 1
    assert "dihedral" in capsys.readouterr().err
    assert gen.generosity_escapee(z2z2, 2, 6) is None
    clock.check()


# -- 10 ------------------------------------------------------------------------------------

def criterion_runs():
    runs = [("z2_z3", "verify", (2, n, am.square_exponents(n))) for n in (0, 1, 2)]
    runs += [("s3_c2_s3", "verify", (d, n, None)) for d in (2, 3) for n in (0, 1)]
    runs += [("bs23", "verify", (d, n, None)) for d in (2, 3) for n in (0, 1)]
    runs += [(f"central_k{k}", "census", (d, 4)) for k in (1, 2, 3) for d in (2, 3)]
    runs += [("s3_c2_s3", "census", (d, 4)) for d in (2, 3)]
    return runs


@pytest.mark.criterion(10, "byte-identical reports across worker counts")
def test_criterion_10_determinism():
    configs = {}
    for name, kind, args in criterion_runs():
        cfg = configs.setdefault(name, load(cfg_path(name)))
        outputs = set()
        for workers in (1, 4, 8):
            if kind == "verify":
                d, n, exps = args
                r = cmd_verify(cfg, d, n, exponents=exps, workers=workers)
            else:
                r = cmd_census(cfg, *args, workers=workers)
            assert r.exit_code == 0
            outputs.add(r.payload.encode())
        assert len(outputs) == 1, f"{name} {kind} {args} differs across worker counts"
