import pytest

import kmcoh


def test_worked_reciprocity():
    r = kmcoh.reciprocity("(t1) dlog(t1) ^ dlog(x+t1)")
    assert r["verdict"] == "ZERO"
    assert r["places"] == ["x+t1", "inf"]
    assert r["values"] == ["(t1) dlog(t1)", "(t1) dlog(t1)"]


def test_is_zero_verdicts():
    assert kmcoh.is_zero("(t1) dlog(t1) ^ dlog(x)")["verdict"] == "ZERO"
    z = kmcoh.is_zero("(1/(t1+1)) dlog(t1) ^ dlog(x)")
    assert z["verdict"] == "NONZERO"
    assert z["place"] == "x"


def test_gamma_and_classify():
    assert kmcoh.gamma("x^2+t1", 4) == ["1", "0", "t1", "0", "t1^2"]
    assert kmcoh.classify("x^2+t1") == "FINITE"
    assert kmcoh.classify("x^2+t1^2") == "REDUCIBLE"


def test_transfer_and_witt():
    assert kmcoh.transfer("(t1) dlog(t1) ^ dlog(x+t1)", "x+t1") == "(t1) dlog(t1)"
    assert kmcoh.witt_equal("[1, t1] + [1, t1]", "") == "EQUAL"
    assert kmcoh.witt_equal("[1, 1/t1]", "") == "NOT_EQUAL"


def test_errors_surface():
    with pytest.raises(Exception):
        kmcoh.normalize("dlog(0)")


@pytest.mark.parametrize("name", ["gamma", "teichmuller", "roundtrip"])
def test_suites_pass(name):
    assert name in kmcoh.suites
    assert kmcoh.run_suite(name, seed=3, count=5)["pass"]
