import io

import numpy as np
import pytest

from spectrakit import DurationSeries, empirical_survival, load_durations
from spectrakit.durations import (default_tau_grid, read_survival_csv,
                                  write_survival_csv)


def test_load_durations_basic():
    s = load_durations("3\n1\n2\n")
    assert list(s.values) == [3, 1, 2]
    assert s.n == 3 and s.mean == 2 and s.max == 3
    assert s.dropped == 0


def test_load_timestamps_drops_zero_differences():
    s = load_durations("0\n5\n5\n12\n", mode="timestamps")
    assert list(s.values) == [5, 7]
    assert s.dropped == 1


def test_load_durations_positivity_filter():
    s = load_durations("1\n-4\n2\n")
    assert list(s.values) == [1, 2]
    assert s.dropped == 1


def test_load_durations_comments_and_blank_lines():
    s = load_durations("# header\n1\n\n2\n")
    assert list(s.values) == [1, 2]


def test_load_durations_max_duration_cap():
    s = load_durations("1\n50000\n2\n", max_duration=100)
    assert list(s.values) == [1, 2]
    assert s.dropped == 1


def test_load_durations_unparsable_line_cites_lineno():
    with pytest.raises(ValueError, match="line 2"):
        load_durations("1\nfoo\n2\n")


def test_load_durations_empty_result():
    with pytest.raises(ValueError, match="no usable durations"):
        load_durations("-1\n0\n")


def test_load_durations_unknown_mode():
    with pytest.raises(ValueError, match="mode"):
        load_durations("1\n", mode="bogus")


def test_empirical_survival_counting():
    s = DurationSeries.from_values([1, 2, 3])
    c = empirical_survival(s, [1, 2, 3])
    assert np.allclose(c.psi, [1, 2 / 3, 1 / 3])
    assert c.n_source == 3


def test_empirical_survival_at_zero_is_one():
    s = DurationSeries.from_values([0.3, 7.0, 2.5])
    c = empirical_survival(s, [0.0])
    assert c.psi[0] == 1.0


def test_empirical_survival_beyond_max_is_zero():
    s = DurationSeries.from_values([1, 2, 3])
    c = empirical_survival(s, [3.5, 10.0])
    assert np.all(c.psi == 0.0)


def test_dynamic_range_equals_n_for_unique_max():
    rng = np.random.default_rng(1)
    vals = rng.exponential(5.0, size=500)
    s = DurationSeries.from_values(vals)
    grid = np.linspace(vals.min(), vals.max(), 50)
    c = empirical_survival(s, grid)
    assert c.psi[-1] == 1 / s.n
    assert c.psi[0] / c.psi[-1] == s.n


def test_empirical_survival_non_increasing():
    rng = np.random.default_rng(2)
    s = DurationSeries.from_values(rng.exponential(1.0, 200))
    c = empirical_survival(s, np.linspace(0, 10, 100))
    assert np.all(np.diff(c.psi) <= 0)
    assert np.all((c.psi >= 0) & (c.psi <= 1))


def test_permutation_invariance():
    rng = np.random.default_rng(3)
    vals = rng.exponential(1.0, 100)
    grid = np.linspace(0, 5, 40)
    a = empirical_survival(DurationSeries.from_values(vals), grid)
    b = empirical_survival(DurationSeries.from_values(rng.permutation(vals)), grid)
    assert np.array_equal(a.psi, b.psi)


def test_empty_grid_rejected():
    s = DurationSeries.from_values([1.0])
    with pytest.raises(ValueError):
        empirical_survival(s, [])


def test_load_roundtrip_idempotent():
    s = load_durations("1.5\n2.25\n0.125\n")
    text = "\n".join(repr(float(v)) for v in s.values) + "\n"
    s2 = load_durations(text)
    assert np.array_equal(s.values, s2.values)


def test_default_tau_grid():
    s = DurationSeries.from_values([1.2, 4.7])
    assert list(default_tau_grid(s)) == [1, 2, 3, 4, 5]


def test_survival_csv_roundtrip():
    s = DurationSeries.from_values([1, 2, 3, 4])
    c = empirical_survival(s, [1, 2, 3, 4])
    buf = io.StringIO()
    write_survival_csv(c, buf)
    assert buf.getvalue().startswith("tau,psi\n")
    back = read_survival_csv(io.StringIO(buf.getvalue()), n_source=4)
    assert np.allclose(back.psi, c.psi, atol=1e-6)
    assert np.array_equal(back.taus, c.taus)
