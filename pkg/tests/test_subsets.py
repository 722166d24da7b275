from hypothesis import given
from hypothesis import strategies as st

from macmatroid.subsets import (
    complement,
    elements,
    from_elements,
    full_mask,
    parse,
    render,
    submasks,
)


def test_render_element_one_leftmost():
    assert render(0b01, 2) == "10"
    assert render(0b10, 2) == "01"
    assert render(0b11, 2) == "11"
    assert render(0, 2) == "00"
    assert render(0, 0) == "∅"


def test_parse_inverse_examples():
    assert parse("10") == (0b01, 2)
    assert parse("∅") == (0, 0)


def test_elements_roundtrip():
    assert elements(0b1011) == (1, 2, 4)
    assert from_elements((1, 2, 4)) == 0b1011


def test_submasks_count():
    subs = list(submasks(0b1010))
    assert sorted(subs) == [0, 0b0010, 0b1000, 0b1010]


@given(st.integers(min_value=1, max_value=16), st.data())
def test_render_parse_roundtrip(m, data):
    mask = data.draw(st.integers(min_value=0, max_value=full_mask(m)))
    assert parse(render(mask, m)) == (mask, m)


@given(st.integers(min_value=0, max_value=16), st.data())
def test_complement_involution(m, data):
    mask = data.draw(st.integers(min_value=0, max_value=full_mask(m)))
    assert complement(complement(mask, m), m) == mask
    assert complement(mask, m) == full_mask(m) ^ mask
