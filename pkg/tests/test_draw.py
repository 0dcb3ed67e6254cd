"""SVG rendering of annular diagrams."""

import pytest

from ncfree.annular import AnnulusShape
from ncfree.draw import render_svg
from ncfree.perm import Permutation, SetPartition


def test_output_is_deterministic():
    shape = AnnulusShape(8, 4)
    a = Permutation.parse("(1,2,12,9,8)(3,4)(5,10,11)(6)(7)")
    assert render_svg(a, shape) == render_svg(a, shape)


def test_worked_example_layout():
    shape = AnnulusShape(8, 4)
    a = Permutation.parse("(1,2,12,9,8)(3,4)(5,10,11)(6)(7)")
    svg = render_svg(a, shape)
    # One closed outline per non-singleton cycle, one dot per point.
    assert svg.count("<path") == 3
    assert svg.count('r="3.0"') == 12
    assert "<title>(1,2,12,9,8)(3,4)(5,10,11)(6)(7) on the (8,4)-annulus</title>" in svg


def test_identity_renders_points_only():
    svg = render_svg(Permutation.identity(4), AnnulusShape(2, 2))
    assert svg.count("<path") == 0
    assert svg.count('r="3.0"') == 4


def test_glued_block_draws_one_connector():
    shape = AnnulusShape(2, 1)
    svg = render_svg(
        Permutation.parse("(1,2)(3)"),
        shape,
        partition=SetPartition.full(3),
    )
    assert svg.count("stroke-dasharray") == 1


def test_disc_partition_draws_no_connector():
    shape = AnnulusShape(2, 1)
    svg = render_svg(Permutation.parse("(1,2,3)"), shape)
    assert "stroke-dasharray" not in svg


def test_partition_must_dominate_cycles():
    shape = AnnulusShape(2, 1)
    with pytest.raises(ValueError):
        render_svg(
            Permutation.parse("(1,2)(3)"),
            shape,
            partition=SetPartition(3, [(1,), (2, 3)]),
        )


def test_size_mismatch_is_rejected():
    with pytest.raises(ValueError):
        render_svg(Permutation.identity(3), AnnulusShape(2, 2))


def test_coordinates_are_rounded_cleanly():
    svg = render_svg(Permutation.parse("(1,2,3)"), AnnulusShape(2, 1))
    assert "-0.000" not in svg
