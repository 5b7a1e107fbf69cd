import itertools
import random
from fractions import Fraction

import pytest

from ghostslopes.ffield import field
from ghostslopes.localrep import (
    Induced,
    Split,
    TraceRequired,
    b_of,
    canonicalize,
    format_rep,
    is_irregular,
    parse_rep,
    reduce_crystalline_small_weight,
    twist,
)

F5 = field(5)
F25 = field(5, None, 2)


def split(f, a, b, t, j=0):
    return canonicalize(Split(f(a), f(b), t, j))


def test_named_examples():
    # omega + omega*chi, chi(5) = -1: locally (nr(1) + nr(-1)) (x) omega
    r = split(F5, 1, -1, 0, 1)
    reg = is_irregular(r)
    assert reg.irregular and reg.clause == "2b"
    assert not is_irregular(split(F5, 1, 1, 1, 0))  # 1 + omega
    assert not is_irregular(split(F5, 1, 1, 0, 0))  # 1 + chi with chi(p) = 1
    assert is_irregular(canonicalize(Induced(1, F5(1), 0))).clause == "2a"


def test_twist_examples():
    r = split(F25, 2, 3, 1, 2)
    g = F25("x+1")
    assert twist(r, g, 1) == split(F25, g * F25(2), g * F25(3), 1, 3)
    assert twist(r, 1, 0) == r


def test_b_of_examples():
    assert b_of(split(F5, 1, 1, 1, 0)) == 2
    assert b_of(split(F5, 1, -1, 0, 1)) == 3
    assert b_of(canonicalize(Induced(6, F5(1), 0))) == 3
    assert b_of(canonicalize(Induced(4, F5(1), 0))) == 5


def test_ind_one_rewrites_to_split():
    r = canonicalize(Induced(0, F5(1), 0))
    assert isinstance(r, Split) and r.t == 0 and r.alpha + r.beta == 0
    assert {r.alpha.code, r.beta.code} == {2, 3}  # +-sqrt(-1) in F_5
    # no sqrt(-1) in F_7: stays induced, flagged reducible
    r7 = canonicalize(Induced(8, field(7)(1), 0))
    assert isinstance(r7, Induced) and r7.reducible
    assert is_irregular(r7).clause == "2b"


def test_induced_isomorphisms():
    p = 5
    for s in range(24):
        assert canonicalize(Induced(s, F25(1), 0)) == canonicalize(Induced(p * s, F25(1), 0))
        assert canonicalize(Induced(s, F25(2), 0)) == canonicalize(Induced(s, F25(-2), 0))
        assert canonicalize(Induced(s, F25(1), 1)) == canonicalize(Induced(s + p + 1, F25(1), 0))


def _split_signature(r):
    p = r.p
    return sorted([(r.alpha.code, r.j % (p - 1)), (r.beta.code, (r.j + r.t) % (p - 1))])


def test_split_canonical_forms_match_character_multisets():
    reps = [Split(F5(a), F5(b), t, j) for a, b, t, j in itertools.product(range(1, 5), range(1, 5), range(4), range(4))]
    canon = [canonicalize(r) for r in reps]
    for (r1, c1), (r2, c2) in itertools.combinations(zip(reps, canon), 2):
        assert (c1 == c2) == (_split_signature(r1) == _split_signature(r2))


def test_canonicalization_idempotent():
    for a, b, t, j in itertools.product(range(1, 25, 5), range(1, 25, 3), range(4), range(4)):
        c = canonicalize(Split(F25.from_code(a), F25.from_code(b), t, j))
        assert canonicalize(c) == c
    for s, g in itertools.product(range(24), range(1, 25, 4)):
        c = canonicalize(Induced(s, F25.from_code(g), 0))
        assert canonicalize(c) == c


@pytest.mark.parametrize("p", [7, 11, 13])
def test_twist_invariance_sampled(p):
    f = field(p, None, 2)
    rng = random.Random(p)
    units = f.units()
    for _ in range(300):
        if rng.random() < 0.5:
            r = canonicalize(Split(rng.choice(units), rng.choice(units), rng.randrange(p - 1), rng.randrange(p - 1)))
        else:
            r = canonicalize(Induced(rng.randrange(p * p - 1), rng.choice(units), rng.randrange(p - 1)))
        g, j = rng.choice(units), rng.randrange(p - 1)
        tw = twist(r, g, j)
        assert bool(is_irregular(tw)) == bool(is_irregular(r))
        assert (b_of(tw) - b_of(r) - 2 * j) % (p - 1) == 0
        if not is_irregular(r):
            assert isinstance(r, Split)


def test_trace_zero_split_is_twist_of_ind_one():
    # nr(a) + nr(-a) equals ind(1) (x) nr(a / sqrt(-1))
    i = F25.sqrt(F25(-1))
    for a in F25.units():
        assert split(F25, a, -a, 0, 2) == canonicalize(Induced(0, a / i, 2))


@pytest.mark.parametrize(
    "k, slope, p, trace, kind, exponent, irregular",
    [
        (7, Fraction(1, 2), 11, None, "Ind2", 6, True),
        (7, Fraction(3, 2), 5, None, "IndOneTwist", None, True),
        (7, Fraction(1), 5, 2, "SplitUnramifiedPair", None, False),
        (7, Fraction(2, 3), 5, None, "Ind2", 2, True),
        (2, Fraction(5), 5, None, "Ind2", 1, True),
        (6, Fraction(1), 5, None, "Ind2", 5, True),
    ],
)
def test_small_weight_reductions(k, slope, p, trace, kind, exponent, irregular):
    tr = None if trace is None else field(p)(trace)
    shape = reduce_crystalline_small_weight(k, slope, p, tr)
    assert shape.kind == kind
    assert shape.irregular is irregular
    if exponent is not None:
        assert shape.exponent == exponent
    assert bool(is_irregular(shape.to_local_rep())) is irregular


def test_reduction_is_constant_on_slope_intervals():
    p = 5
    low = {reduce_crystalline_small_weight(p + 2, Fraction(s), p) for s in ("1/3", "1/2", "2/3")}
    high = {reduce_crystalline_small_weight(p + 2, Fraction(s), p) for s in ("4/3", "3/2", "7")}
    assert len(low) == 1 and len(high) == 1
    mid = {reduce_crystalline_small_weight(p + 2, 1, p, F5(t)).irregular for t in range(1, 5)}
    assert mid == {False}


def test_reduction_determinant_matches_weight():
    # det|_I of the reduction is omega^(k-1) in every branch
    p = 5
    for k, slope, tr in [(7, "1/2", None), (7, "1", 2), (7, "3", None), (4, "1", None)]:
        shape = reduce_crystalline_small_weight(k, Fraction(slope), p, None if tr is None else F5(tr))
        assert (b_of(shape.to_local_rep()) - k) % (p - 1) == 0


def test_reduction_errors():
    with pytest.raises(ValueError):
        reduce_crystalline_small_weight(8, 1, 5)
    with pytest.raises(ValueError):
        reduce_crystalline_small_weight(1, 1, 5)
    with pytest.raises(ValueError):
        reduce_crystalline_small_weight(4, 0, 5)
    with pytest.raises(TraceRequired):
        reduce_crystalline_small_weight(7, 1, 5)
    with pytest.raises(TraceRequired):
        reduce_crystalline_small_weight(7, 1, 5, F5(0))


def test_split_pair_needs_root_in_field():
    # x^2 - x + 1 has no root in F_5 (discriminant -3 = 2, a non-square)
    shape = reduce_crystalline_small_weight(7, 1, 5, F5(1))
    with pytest.raises(ValueError):
        shape.to_local_rep()
    shape25 = reduce_crystalline_small_weight(7, 1, 5, F25(1))
    assert not is_irregular(shape25.to_local_rep())


@pytest.mark.parametrize(
    "text",
    [
        "rep/1 split p=5 alpha=1 beta=-1 t=0 j=1",
        "rep/1 split p=5 m=2 modulus=x^2+2 alpha=x beta=2x+1 t=3 j=2",
        "rep/1 induced p=5 s=1",
        "rep/1 induced p=7 s=8 gamma=3 j=2",
        "rep/1 induced p=5 m=2 s=7 gamma=x",
    ],
)
def test_descriptor_round_trip(text):
    r = parse_rep(text)
    assert parse_rep(format_rep(r)) == r


@pytest.mark.parametrize(
    "text",
    [
        "split p=5 alpha=1 beta=1 t=0",
        "rep/2 split p=5 alpha=1 beta=1 t=0",
        "rep/1 diagonal p=5",
        "rep/1 split p=5 alpha=1 t=0",
        "rep/1 split p=5 alpha=1 beta=0 t=0",
        "rep/1 split p=5 alpha=1 beta=1 t=0 s=3",
        "rep/1 induced p=5",
        "rep/1 induced p=5 s=1 s=2",
        "rep/1 split p=5 m=2 modulus=x^2+1 alpha=1 beta=1 t=0",
        "rep/1 split p=5 m=3 modulus=x^2+2 alpha=1 beta=1 t=0",
        "rep/1 split p=5 alpha",
    ],
)
def test_descriptor_errors(text):
    with pytest.raises(ValueError):
        parse_rep(text)
