import itertools

import pytest

import bsat


def test_classify_and_pretty():
    c = bsat.classify("forall y1 y2 . R(y1,y2) | ~R(y2,y1)")
    assert c["class"] == "SBS"
    assert bsat.pretty("forall y . (P(y))  &  Q(a)") == "forall y . P(y) & Q(a)"


def test_solve_grounds_and_agrees_with_oracle():
    r = bsat.solve("forall y1 y2 . R(y1,y2) | ~R(y2,a) | P(b)", oracle_check=True)
    assert r["verdict"] == "SAT"
    assert r["ground_count"] == 4
    assert r["oracle"]["agreement"] is True
    assert r["ground_set"].count("\n") == 4
    assert r["dimacs"].startswith("c ")


def test_witness_policies_diverge():
    text = "exists x . P(x) & ~P(a)"
    assert bsat.solve(text, policy="paper-literal")["verdict"] == "UNSAT"
    assert bsat.solve(text)["verdict"] == "SAT"
    model = bsat.find_model(text)
    assert model["domain_size"] == 2
    assert model["relations"]["P"] == [[1]]


def test_find_model_none_when_unsat():
    assert bsat.find_model("forall y . P(y) & ~P(a)") is None


def test_pad_unpad():
    blob = bsat.pad("abc", k=2)
    assert len(blob) == 512
    assert bsat.unpad(blob.decode(), k=2) == "abc"
    with pytest.raises(bsat.BsatError) as e:
        bsat.pad("a#b")
    assert e.value.kind == "ReservedByte"
    with pytest.raises(bsat.BsatError) as e:
        bsat.pad("x" * 21)
    assert e.value.kind == "PaddingOverflow"


def test_padded_pipeline_and_stage():
    text = "forall y.P(y)|~P(a)"
    blob = bsat.pad(text).decode()
    assert bsat.solve(blob, padded=True)["verdict"] == bsat.solve(text)["verdict"]
    with pytest.raises(bsat.BsatError) as e:
        bsat.solve("P(a)###", padded=True)
    assert e.value.kind == "MalformedPadding"
    assert e.value.stage == "unpad"


def test_parse_error_kind():
    with pytest.raises(bsat.BsatError) as e:
        bsat.classify("P(a) & P(a,b)")
    assert e.value.kind == "ArityMismatch"


def brute_force(clauses, n):
    for bits in itertools.product([False, True], repeat=n):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return True
    return False


def test_dpll_against_brute_force():
    import random

    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(1, 6)
        clauses = [
            [rng.choice([1, -1]) * rng.randint(1, n) for _ in range(rng.randint(1, 3))]
            for _ in range(rng.randint(1, 10))
        ]
        model = bsat.dpll(clauses, n)
        assert (model is not None) == brute_force(clauses, n)
        if model is not None:
            assert all(any(model[abs(l)] == (l > 0) for l in c) for c in clauses)


def test_dimacs_round_trip():
    clauses = [[1, -2], [2, 3], []]
    n, back = bsat.read_dimacs(bsat.emit_dimacs(clauses, 3))
    assert n == 3
    assert back == clauses
