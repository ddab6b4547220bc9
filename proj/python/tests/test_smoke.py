import pytest

import blockdescent as bd


def test_blocks_of_a5():
    doc = bd.blocks("a5", k=(2, 2))
    assert [b["dim"] for b in doc["blocks"]] == [44, 16]
    assert [b["defect_order"] for b in doc["blocks"]] == [4, 1]


def test_group_text():
    text = bd.builtin_group_text("a4")
    assert [b["dim"] for b in bd.blocks(text, k=(2, 1))["blocks"]] == [12]
    with pytest.raises(bd.ParseError):
        bd.blocks("(1 2\n", k=(2, 1))
    with pytest.raises(bd.CapExceeded):
        bd.blocks("(1 2 3 4 5 6 7)\n(1 2)\n", k=(2, 1), max_order=1000)


def test_classify():
    assert bd.classify("a4")["kind"] == "A4"
    assert bd.classify("v4xc3")["kind"] == "P"


def test_verify_theorem_3():
    doc = bd.verify("a4", theorem="3")
    assert doc["verdicts"]["pass"] is True
    assert bd.verify("a5", theorem="3")["hypothesis"]["satisfied"] is False


def test_descend():
    mods = bd.simples("a5", k=(2, 2))
    assert [m["dim"] for m in mods] == [1, 2, 2]
    assert bd.descend(mods[0])["verified"] is True
    with pytest.raises(bd.PreconditionFailed):
        bd.descend(mods[1])


def test_bad_field():
    with pytest.raises(bd.UnsupportedField):
        bd.blocks("v4", k=(4, 1))
