"""Deterministic SVG emitter structure checks."""

import xml.etree.ElementTree as ET

import pytest

from pencil.svg import render_line_chart


def _polylines(doc: str):
    root = ET.fromstring(doc)
    ns = "{http://www.w3.org/2000/svg}"
    return root.findall(f".//{ns}polyline")


def test_single_curve_parses_with_one_polyline():
    pts = [(i / 10, (i / 10) ** 2) for i in range(100)]
    doc = render_line_chart([("squared", pts)], title="t", x_label="x", y_label="y")
    assert len(_polylines(doc)) == 1


def test_two_curves_have_legend_entries():
    pts = [(float(i), float(i)) for i in range(10)]
    doc = render_line_chart([("first", pts), ("second", pts)])
    assert len(_polylines(doc)) == 2
    assert ">first<" in doc and ">second<" in doc


def test_empty_series_rejected():
    with pytest.raises(ValueError):
        render_line_chart([])
    with pytest.raises(ValueError):
        render_line_chart([("empty", [])])


def test_byte_identical_for_identical_input():
    pts = [(float(i), float(i % 3)) for i in range(50)]
    a = render_line_chart([("series", pts)], title="same")
    b = render_line_chart([("series", pts)], title="same")
    assert a == b


def test_header_comment_embedded():
    doc = render_line_chart([("s", [(0.0, 0.0), (1.0, 1.0)])], header_comment="config: {}")
    assert "<!-- config: {} -->" in doc
