"""Domain spec-file parsing and error anchoring."""

import numpy as np
import pytest

from symprod.geometry2d import EllipsoidSpec
from symprod.specfile import SpecFileError, parse_spec

GOOD = """\
p = 2

[factor]
type = weierstrass
amplitude = 0.1
terms = 20

[factor]
type = polygon
vertices = 1 1, -1 1, -1 -1, 1 -1
"""


def test_parse_good_spec():
    domain = parse_spec(GOOD)
    assert len(domain.factors) == 2
    assert domain.p == 2.0
    assert domain.factor_areas[1] == pytest.approx(4.0, rel=1e-5)


def test_parse_ellipsoid_factor():
    domain = parse_spec("[factor]\ntype = ellipsoid\nareas = 1 2 3\n")
    assert isinstance(domain.factors[0], EllipsoidSpec)
    assert domain.n_complex == 3


def test_parse_samples_factor():
    values = " ".join(["1", "1.1"] * 16)
    domain = parse_spec(f"[factor]\ntype = samples\nvalues = {values}\n")
    assert domain.factors[0].radius(0.0) == pytest.approx(1.0)


def test_default_p_is_two():
    assert parse_spec("[factor]\ntype = disk\n").p == 2.0


def test_custom_p():
    assert parse_spec("p = 3.5\n[factor]\ntype = disk\n").p == 3.5


def test_unknown_key_is_line_anchored():
    text = "p = 2\n\n[factor]\ntype = disk\nradius = 3\n"
    with pytest.raises(SpecFileError) as exc:
        parse_spec(text)
    assert exc.value.line == 5
    assert "radius" in str(exc.value)


def test_unknown_factor_type():
    with pytest.raises(SpecFileError, match="unknown factor type"):
        parse_spec("[factor]\ntype = pentagon\n")


def test_unknown_section():
    with pytest.raises(SpecFileError, match=r"unknown section"):
        parse_spec("[domain]\ntype = disk\n")


def test_unknown_top_level_key():
    with pytest.raises(SpecFileError, match="top-level"):
        parse_spec("q = 2\n[factor]\ntype = disk\n")


def test_duplicate_key_rejected():
    text = "[factor]\ntype = disk\narea = 1\narea = 2\n"
    with pytest.raises(SpecFileError, match="duplicate"):
        parse_spec(text)


def test_missing_type_rejected():
    with pytest.raises(SpecFileError, match="missing 'type'"):
        parse_spec("[factor]\narea = 1\n")


def test_empty_spec_rejected():
    with pytest.raises(SpecFileError, match="no factors"):
        parse_spec("p = 2\n")


def test_bad_value_is_line_anchored():
    text = "[factor]\ntype = disk\narea = big\n"
    with pytest.raises(SpecFileError) as exc:
        parse_spec(text)
    assert exc.value.line == 3


def test_comments_and_blank_lines_ignored():
    text = "# heading\np = 2  # inline\n\n[factor]\ntype = disk\n"
    assert len(parse_spec(text).factors) == 1


def test_malformed_line_rejected():
    with pytest.raises(SpecFileError, match="key = value"):
        parse_spec("just some words\n")
