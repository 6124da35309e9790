from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minkrep.fields import (
    BinOp,
    Const,
    FieldEvalError,
    FieldSection,
    FieldSyntaxError,
    Pullback,
    Var,
    eval_field,
    parse_field,
    pullback,
    scale_add,
    to_text,
)
from minkrep.lorentz import InhomogeneousElement, apply, compose
from minkrep.sampling import make_rng, random_element, random_field

CORPUS = Path(__file__).parent / "data" / "malformed_fields.txt"


def load_corpus():
    out = []
    for line in CORPUS.read_text().splitlines():
        if line.startswith("#"):
            continue
        pos, src = line.split("\t", 1)
        out.append((int(pos), {"<empty>": "", "<spaces>": "   "}.get(src, src)))
    return out


def close(a, b, tol=1e-12):
    a, b = np.asarray(a), np.asarray(b)
    both_nan = np.isnan(a) & np.isnan(b)
    same = a == b  # also covers equal infinities
    err = np.abs(a - b) <= tol * np.maximum(1.0, np.abs(b))
    return bool(np.all(both_nan | same | err))


def test_parse_examples():
    assert parse_field("1") == Const(1 + 0j)
    assert parse_field(" x2 ") == Var(2)
    f = parse_field("exp(i*x0) + 2*x2")
    assert abs(eval_field(f, [np.pi, 0, 0, 0]) - (-1)) <= 1e-15
    assert eval_field(parse_field("x2^2"), [0, 0, 3, 0]) == 9
    assert eval_field(parse_field("1"), [5, 6, 7, 8]) == 1


def test_precedence_and_associativity():
    x = [1.5, -2.0, 0.25, 3.0]
    assert eval_field(parse_field("1 - 2 - 3"), x) == -4
    assert eval_field(parse_field("8 / 4 / 2"), x) == 1
    assert eval_field(parse_field("2 + 3 * 4"), x) == 14
    assert eval_field(parse_field("2 * x3 ^ 2"), x) == 18
    assert eval_field(parse_field("(1 + i) ^ 2"), x) == 2j
    assert eval_field(parse_field("x0 ^ 0"), x) == 1


def test_unknown_identifier():
    with pytest.raises(FieldSyntaxError, match="unknown identifier"):
        parse_field("x4")


def test_malformed_corpus_positions():
    corpus = load_corpus()
    assert len(corpus) >= 50
    for pos, src in corpus:
        with pytest.raises(FieldSyntaxError) as info:
            parse_field(src)
        assert info.value.position == pos, src
        assert 0 <= info.value.position <= len(src)
        assert f"at position {pos}" in str(info.value)


@settings(max_examples=300)
@given(st.text(alphabet="x0123i+-*/^() .esncoh", max_size=25))
def test_parser_never_crashes(src):
    try:
        parse_field(src)
    except FieldSyntaxError as err:
        assert 0 <= err.position <= len(src)


def test_division_by_zero():
    f = parse_field("1 / x1")
    with pytest.raises(FieldEvalError):
        eval_field(f, [0, 0, 0, 0])
    assert eval_field(f, [0, 2, 0, 0]) == 0.5


def test_evaluation_vectorised_and_pure():
    f = parse_field("sin(x0) * cosh(x1) + i * x2 ^ 3 - exp(x3) / 2")
    pts = make_rng(0, "fields").normal(size=(50, 4))
    batch = eval_field(f, pts)
    single = np.array([eval_field(f, p) for p in pts])
    assert np.array_equal(batch, single)
    assert np.array_equal(batch, eval_field(f, pts))
    with pytest.raises(ValueError):
        eval_field(f, [1, 2, 3])


def test_printer_forms():
    assert to_text(Const(-2.5 + 0j)) == "(0-2.5)"
    assert to_text(Const(1 - 2j)) == "(1.0+(0-2.0)*i)"
    assert to_text(Const(3j)) == "(3.0*i)"
    assert parse_field(to_text(Const(-0.1 + 0.7j))) != Const(-0.1 + 0.7j)  # printed as arithmetic
    assert eval_field(parse_field(to_text(Const(-0.1 + 0.7j))), [0, 0, 0, 0]) == -0.1 + 0.7j


def test_round_trip_generator_fields():
    rng = make_rng(1, "parser")
    for _ in range(200):
        f = random_field(rng)
        g = parse_field(to_text(f))
        pts = rng.uniform(-2, 2, (20, 4))
        assert close(eval_field(g, pts), eval_field(f, pts))
        # printing is a fixed point after one round
        assert to_text(g) == to_text(parse_field(to_text(g)))


def test_pullback_examples():
    f = parse_field("x0")
    g = InhomogeneousElement.pure_translation([1, 0, 0, 0])
    assert eval_field(pullback(f, g), [3, 0, 0, 0]) == 2
    assert pullback(f, InhomogeneousElement.identity()) is f
    assert pullback(Const(2j), g) == Const(2j)


def test_pullback_exactness():
    rng = make_rng(2, "fields")
    for _ in range(1000):
        f = random_field(rng)
        g = random_element(rng)
        x = rng.uniform(-1, 1, 4)
        lhs = eval_field(pullback(f, g), apply(g, x))
        rhs = eval_field(f, x)
        if not np.isfinite(rhs):
            continue
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs)) * max(1.0, np.abs(g.matrix).max())


def test_pullback_composition():
    rng = make_rng(3, "fields")
    for _ in range(100):
        f = random_field(rng)
        g1, g2 = random_element(rng), random_element(rng)
        nested = pullback(pullback(f, g2), g1)
        direct = pullback(f, compose(g1, g2))
        assert isinstance(nested, (Pullback, BinOp, Const))
        pts = rng.uniform(-2, 2, (10, 4))
        a, b = eval_field(nested, pts), eval_field(direct, pts)
        ok = np.isfinite(b)
        assert np.all(np.abs(a[ok] - b[ok]) <= 1e-10 * np.maximum(1.0, np.abs(b[ok])) * np.abs(compose(g1, g2).matrix).max())


def test_pullback_prints_as_affine_map():
    rng = make_rng(4, "fields")
    for _ in range(100):
        f = random_field(rng, depth=2)
        g = random_element(rng)
        h = pullback(f, g)
        back = parse_field(to_text(h))
        pts = rng.uniform(-2, 2, (10, 4))
        a, b = eval_field(back, pts), eval_field(h, pts)
        ok = np.isfinite(b) & (np.abs(b) < 1e8)
        assert np.all(np.abs(a[ok] - b[ok]) <= 1e-9 * np.maximum(1.0, np.abs(b[ok])))


def test_section_basics():
    s = FieldSection(("x0", "1", "i"))
    assert s.n == 3
    assert s.evaluate(np.zeros((5, 4))).shape == (5, 3)
    e2 = FieldSection.basis(2, 3)
    assert np.array_equal(e2.evaluate([1, 2, 3, 4]), [0, 1, 0])
    assert np.array_equal(FieldSection.zero(2).evaluate([1, 2, 3, 4]), [0, 0])
    with pytest.raises(ValueError):
        FieldSection(())
    with pytest.raises(FieldSyntaxError):
        FieldSection(("x0", "x5"))


def test_scale_add():
    rng = make_rng(5, "fields")
    f = FieldSection(("x0 + i*x1", "exp(x2)"))
    g = FieldSection(("cos(x3)", "x1^2"))
    assert scale_add(1, f, 0, g) == f
    doubled = scale_add(1, f, 1, f)
    pts = rng.normal(size=(30, 4))
    assert np.allclose(doubled.evaluate(pts), 2 * f.evaluate(pts), rtol=1e-15)
    lam, mu = 0.3 - 1.2j, -2 + 0.5j
    combo = scale_add(lam, f, mu, g).evaluate(pts)
    want = lam * f.evaluate(pts) + mu * g.evaluate(pts)
    assert np.all(np.abs(combo - want) <= 1e-12 * np.maximum(1, np.abs(want)))
    with pytest.raises(ValueError):
        scale_add(1, f, 1, FieldSection(("1",)))
