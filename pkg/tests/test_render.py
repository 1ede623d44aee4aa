from fractions import Fraction as Fr

import pytest

from trip.algebra import T
from trip.render import (
    E13E_REGIONS,
    bary_label,
    gauss_cells,
    render_e13e_regions_svg,
    render_gauss_fan_svg,
    render_partition_svg,
    subtriangles,
)
from trip.trip_dynamics import Point3, region_of

EEE = T("(e,e,e)")


def test_depth_one_split():
    cells = dict(subtriangles(EEE, 1))
    assert set(cells) == {"0", "1"}
    shared = set(cells["0"]) & set(cells["1"])
    # the cut runs from (1/2,0,1/2) to (0,1,0)
    assert shared == {(Fr(1, 2), Fr(0), Fr(1, 2)), (Fr(0), Fr(1), Fr(0))}


def test_cells_tile_the_triangle():
    # areas in barycentric coordinates sum to the whole triangle
    def area(v):
        (a1, a2, _), (b1, b2, _), (c1, c2, _) = v
        return abs((b1 - a1) * (c2 - a2) - (c1 - a1) * (b2 - a2)) / 2
    for t in (EEE, T("(e,13,e)"), T("(132,12,23)")):
        for depth in (2, 5):
            assert sum(area(v) for _, v in subtriangles(t, depth)) == Fr(1, 2)


def test_gauss_fan_vertices():
    for k, v in gauss_cells(EEE, 6):
        assert (Fr(k, k + 1), Fr(0), Fr(1, k + 1)) in v
        assert (Fr(k + 1, k + 2), Fr(0), Fr(1, k + 2)) in v


def test_region_centroids():
    for name, v in E13E_REGIONS.items():
        c = tuple(sum(p[i] for p in v) / 3 for i in range(3))
        assert region_of(Point3(*c)) == name


def test_labels_and_svg():
    assert bary_label((Fr(0), Fr(1, 2), Fr(1, 2))) == "(0,1/2,1/2)"
    svg = render_partition_svg(EEE, 2)
    assert svg.startswith("<svg") and svg.count("<polygon") == 4
    assert "(1/2,0,1/2)" in svg and 'class="cell-01"' in svg
    assert "(0,1/2,1/2)" in render_e13e_regions_svg()
    assert 'class="gauss-3"' in render_gauss_fan_svg(EEE, 4)
    assert render_partition_svg(EEE, 2) == svg


def test_depth_limits():
    with pytest.raises(ValueError):
        subtriangles(EEE, 13)
    assert "(" not in render_partition_svg(EEE, 6, label_limit=4).split("</title>")[1].split("<text")[0]
