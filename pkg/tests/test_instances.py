import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from itsp.instances import (
    GenConfig,
    GridCell,
    InstanceParseError,
    InstanceSchemaError,
    InstanceValidationError,
    derive_seed,
    dumps_instance,
    generate_instance,
    generate_suite,
    instance_filename,
    loads_instance,
    metric_closure,
    read_instance,
    write_instance,
)
from itsp.temperature import Instance, ProfilePair, validate_instance


def floyd_reference(d):
    """Plain triple loop used as the reference for the numpy version."""
    n = len(d)
    m = [row[:] for row in d]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if m[i][k] + m[k][j] < m[i][j]:
                    m[i][j] = m[i][k] + m[k][j]
    return m


def symmetric_matrix(rng, n, lo, hi):
    d = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = rng.randint(lo, hi)
    return d


def test_closure_shortcuts_long_edge():
    d = [[0, 10, 100], [10, 0, 10], [100, 10, 0]]
    assert metric_closure(d) == [[0, 10, 20], [10, 0, 10], [20, 10, 0]]


def test_closure_identity_on_metric_input():
    d = [[0, 3, 4], [3, 0, 5], [4, 5, 0]]
    assert metric_closure(d) == d


def test_narrow_range_never_changes():
    # with d in [10, 20] every detour costs at least 20, so no edge shortens
    rng = random.Random(0)
    for _ in range(50):
        d = symmetric_matrix(rng, 10, 10, 20)
        assert metric_closure(d) == d


@settings(max_examples=500, deadline=None)
@given(st.integers(1, 9), st.integers(0, 2**32 - 1), st.sampled_from([(10, 20), (10, 100), (1, 50)]))
def test_closure_properties(n, seed, d_range):
    d = symmetric_matrix(random.Random(seed), n, *d_range)
    m = metric_closure(d)
    assert m == floyd_reference(d)
    assert metric_closure(m) == m
    for i in range(n):
        assert m[i][i] == 0
        for j in range(n):
            assert m[i][j] == m[j][i] <= d[i][j]
            assert m[i][j] >= d_range[0] or i == j
            for k in range(n):
                assert m[i][j] <= m[i][k] + m[k][j]


def test_wide_range_stays_above_lower_bound():
    cell = GridCell(10, (10, 20), (10, 100), 20)
    for seed in range(100):
        inst = generate_instance(cell, 0, seed)
        assert min(inst.d[i][j] for i in range(10) for j in range(10) if i != j) >= 10
        assert validate_instance(inst) == []


def test_full_grid_size_and_names():
    config = GenConfig()
    assert len(config) == 400
    names = [name for name, _ in generate_suite(GenConfig(nodes=(10,), variations=2))]
    assert len(names) == len(set(names)) == 40
    assert instance_filename(GridCell(10, (10, 20), (10, 20), 20), 3) == "itsp_n10_p10-20_d10-20_B20_v3.json"


def test_generation_is_deterministic():
    cell = GridCell(10, (10, 100), (10, 100), 60)
    a = dumps_instance(generate_instance(cell, 4, 7))
    b = dumps_instance(generate_instance(cell, 4, 7))
    assert a == b
    assert a != dumps_instance(generate_instance(cell, 5, 7))
    assert a != dumps_instance(generate_instance(cell, 4, 8))


def test_derive_seed_is_stable():
    assert derive_seed(1, "a") == derive_seed(1, "a")
    assert derive_seed(1, "a") != derive_seed(1, "b")
    assert 0 <= derive_seed("x") < 2**64


def test_generated_values_within_ranges():
    cell = GridCell(50, (10, 100), (10, 20), 40)
    inst = generate_instance(cell, 0, 0)
    assert inst.n == 50 and inst.B == 40
    assert all(10 <= p <= 100 for p in inst.p)


def test_round_trip_full_suite(tmp_path):
    for name, inst in generate_suite(GenConfig(master_seed=3)):
        assert loads_instance(dumps_instance(inst)) == inst
    name, inst = next(generate_suite(GenConfig(nodes=(10,), variations=1)))
    write_instance(inst, tmp_path / name)
    assert read_instance(tmp_path / name) == inst


def test_profile_round_trips():
    inst = Instance([1, 2], [[0, 3], [3, 0]], 5, ProfilePair("Q", "E"))
    assert loads_instance(dumps_instance(inst)).profile == ProfilePair("Q", "E")


def test_truncated_file_is_a_parse_error():
    text = dumps_instance(Instance([1, 2], [[0, 3], [3, 0]], 5))
    with pytest.raises(InstanceParseError):
        loads_instance(text[: len(text) // 2])


def test_asymmetric_matrix_names_the_pair():
    data = Instance([1, 2, 3], [[0, 3, 4], [3, 0, 5], [4, 5, 0]], 5).to_dict()
    data["d"][2][0] = 7
    with pytest.raises(InstanceValidationError) as err:
        loads_instance(json.dumps(data))
    assert "d[0][2]" in str(err.value) and "d[2][0]" in str(err.value)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("B"),
        lambda d: d.update(p=[1, "x", 3]),
        lambda d: d.update(n=4),
        lambda d: d.update(profile={"increase": "Z", "decrease": "L"}),
        lambda d: d.update(d=[[0, 3, 4], [3, 0, 5]]),
    ],
)
def test_schema_errors(mutate):
    data = Instance([1, 2, 3], [[0, 3, 4], [3, 0, 5], [4, 5, 0]], 5).to_dict()
    mutate(data)
    with pytest.raises(InstanceSchemaError):
        loads_instance(json.dumps(data))


def test_triangle_violation_rejected():
    data = Instance([1, 1, 1], [[0, 1, 1], [1, 0, 1], [1, 1, 0]], 5).to_dict()
    data["d"][0][2] = data["d"][2][0] = 9
    with pytest.raises(InstanceValidationError, match="triangle"):
        loads_instance(json.dumps(data))
