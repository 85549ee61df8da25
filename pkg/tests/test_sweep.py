import math

import numpy as np
import pytest

from eigm.modelzoo import ModelSpec
from eigm.stats import STAT_COLUMNS
from eigm.svgplot import render_sweep_svg
from eigm.sweep import (
    ExperimentConfig,
    evaluate_point,
    parse_config,
    reference_record,
    run_sweep,
    sweep_csv_header,
)
from eigm.synth import random_connected_graph

CONFIG_TEXT = """\
# demo sweep
input = graph.edges
samples = 4
seed = 11
output_dir = out
plot = true

[linear]
omega = 0, 0.5, 1.0

[tsvd]
rank = 1, 2
eps = 1e-7
"""


def test_parse_config_round_trip():
    config = parse_config(CONFIG_TEXT)
    assert config.input_path == "graph.edges"
    assert config.samples == 4
    assert config.seed == 11
    assert config.plot is True
    kinds = [(s.kind, s.knob) for s in config.specs]
    assert ("linear", 0.0) in kinds and ("tsvd", 2.0) in kinds
    assert len(config.specs) == 5
    tsvd = [s for s in config.specs if s.kind == "tsvd"][0]
    assert tsvd.eps == 1e-7


def test_parse_config_rejects_unknown_section():
    with pytest.raises(ValueError):
        parse_config("[nope]\nomega = 1\n")
    with pytest.raises(ValueError):
        parse_config("[linear]\nrank = 1\n")


def test_experiment_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(input_path="x", specs=(), samples=5)
    with pytest.raises(ValueError):
        ExperimentConfig(
            input_path="x", specs=(ModelSpec("linear", 0.5),), samples=0
        )


@pytest.fixture(scope="module")
def reference():
    return random_connected_graph(30, 0.1, seed=21)


def test_run_sweep_rows_sorted_and_deterministic(reference):
    specs = [ModelSpec("linear", w) for w in (1.0, 0.0, 0.5)]
    rows1 = run_sweep(reference, specs, samples=3, seed=5, workers=2)
    rows2 = run_sweep(reference, specs, samples=3, seed=5, workers=1)
    assert [r.knob for r in rows1] == [0.0, 0.5, 1.0]
    assert [r.csv_row() for r in rows1] == [r.csv_row() for r in rows2]


def test_sweep_memorization_limit(reference):
    row = evaluate_point(reference, ModelSpec("ccop", 1.0), samples=3, seed=2)
    ref = reference_record(reference)
    assert row.overlap_expected == pytest.approx(1.0)
    assert row.overlap_empirical == pytest.approx(1.0)
    assert row.means["triangle_count"] == pytest.approx(ref.triangle_count)
    assert row.stds["triangle_count"] == 0.0


def test_sweep_overlap_monotone_for_linear(reference):
    specs = [ModelSpec("linear", w) for w in np.linspace(0, 1, 5)]
    rows = run_sweep(reference, specs, samples=2, seed=7)
    ovs = [r.overlap_expected for r in rows]
    assert all(b >= a - 1e-12 for a, b in zip(ovs, ovs[1:]))


def test_sweep_empirical_overlap_consistency(reference):
    specs = [ModelSpec("linear", w) for w in (0.2, 0.8)]
    rows = run_sweep(reference, specs, samples=5, seed=3)
    for r in rows:
        # crude 3-sigma band from the pairwise estimator spread
        assert abs(r.overlap_empirical - r.overlap_expected) < 0.1


def test_sweep_failure_row_marked(reference):
    # rank 0 is invalid for tsvd: the row is marked, not raised
    row = evaluate_point(reference, ModelSpec("tsvd", 0), samples=2, seed=0)
    assert row.status.startswith("error:")
    assert math.isnan(row.overlap_expected)
    assert math.isnan(row.means["triangle_count"])


def test_csv_header_and_row_shape(reference):
    header = sweep_csv_header()
    cols = header.split(",")
    assert cols[0] == "model" and cols[-1] == "status"
    assert len(cols) == 4 + 2 * len(STAT_COLUMNS) + 1
    row = evaluate_point(reference, ModelSpec("linear", 0.5), samples=2, seed=0)
    assert len(row.csv_row().split(",")) == len(cols)


def test_single_sample_std_is_nan(reference):
    row = evaluate_point(reference, ModelSpec("linear", 0.5), samples=1, seed=0)
    assert math.isnan(row.stds["triangle_count"])
    assert math.isnan(row.overlap_empirical)


def test_triangle_trend_on_clustered_reference():
    # triangle-rich reference: every model recovers more triangles (and a
    # higher clustering coefficient) as its overlap knob rises
    from scipy.stats import spearmanr

    from eigm.synth import clustered_graph

    g = clustered_graph(8, 6, 0.01, seed=4)
    n = g.n
    specs = (
        [ModelSpec("linear", w) for w in (0.0, 0.25, 0.5, 0.75, 1.0)]
        + [ModelSpec("ccop", w) for w in (0.0, 0.25, 0.5, 0.75, 1.0)]
        + [ModelSpec("hdop", h) for h in (0, n // 6, n // 3, 2 * n // 3, n)]
        + [ModelSpec("tsvd", k) for k in (2, 4, 8, 16, 32)]
    )
    rows = run_sweep(g, specs, samples=5, seed=9)
    for kind in ("linear", "ccop", "hdop", "tsvd"):
        pts = [r for r in rows if r.model == kind and r.status == "ok"]
        assert len(pts) == 5
        xs = [r.overlap_expected for r in pts]
        tri = spearmanr(xs, [r.means["triangle_count"] for r in pts]).statistic
        cc = spearmanr(xs, [r.means["clustering_coeff"] for r in pts]).statistic
        assert tri > 0.8, (kind, tri)
        assert cc > 0.8, (kind, cc)


def test_render_sweep_svg(reference):
    specs = [ModelSpec("linear", w) for w in (0.0, 0.5, 1.0)] + [
        ModelSpec("ccop", 0.5)
    ]
    rows = run_sweep(reference, specs, samples=2, seed=9)
    svg = render_sweep_svg(rows, reference_record(reference))
    assert svg.startswith("<svg")
    assert svg.rstrip().endswith("</svg>")
    assert svg.count("<text") > 8
    for stat in STAT_COLUMNS:
        assert stat in svg
    assert "polyline" in svg
    # deterministic output
    assert svg == render_sweep_svg(rows, reference_record(reference))
