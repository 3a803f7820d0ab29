import pytest

from colorcode3d.codes import (
    AssemblyError,
    GaugingError,
    LogicalPair,
    MatterGraph,
    StabilizerCode,
    assemble_color_code,
    cubic_slab,
    cubic_torus,
    deserialize_code,
    find_logical_pairs,
    gauge_z2,
    is_logical_pair_valid,
    logical_qubit_count,
    parse_matter_graph,
    relation_breakdown,
    relation_count,
    relation_report,
    serialize_code,
    serialize_matter_graph,
    slab_logicals,
    verify_commutation,
)
from colorcode3d.fixtures import fixture_logicals, sublattice_fixture
from colorcode3d.gf2 import BitMatrix, BitVector, in_span
from colorcode3d.lattice import build_minimal_model
from colorcode3d.xp import PauliOperator, commutes


@pytest.fixture(scope="module")
def model():
    return build_minimal_model()


@pytest.fixture(scope="module")
def code(model):
    return assemble_color_code(model)


# --- assembly -----------------------------------------------------------------


def test_minimal_model_counts(code):
    assert code.n == 192
    assert len(code.x_generators) == 45
    assert len(code.z_generators) == 206


def test_minimal_model_k_and_relations(code):
    assert logical_qubit_count(code) == 3
    assert relation_count(code) == 62


def test_relation_split_found(code):
    report = relation_report(code)
    assert report["total"] == 62
    assert report["x_relations"] == 0
    assert report["z_relations"] == 62


def test_relation_breakdown_matches_recorded_split(model, code):
    breakdown = relation_breakdown(model, code)
    assert breakdown["total"] == 62
    assert breakdown["cells"] == {"r": 8, "p": 24, "y": 2}
    assert breakdown["boundary"] == 28


def test_assembly_error_names_pair():
    bad = StabilizerCode(
        n=2,
        x_generators=(PauliOperator.x_on(2, [0]),),
        z_generators=(PauliOperator.z_on(2, [0, 1]),),
        x_labels=("A[test]",),
        z_labels=("B[test]",),
    )
    with pytest.raises(AssemblyError) as err:
        verify_commutation(bad)
    assert "A[test]" in str(err.value) and "B[test]" in str(err.value)


def test_empty_code_k_equals_n():
    code = StabilizerCode(5, (), (), (), ())
    assert logical_qubit_count(code) == 5
    assert relation_count(code) == 0


def test_empty_complex_empty_code():
    from colorcode3d.lattice import empty_complex

    code = assemble_color_code(empty_complex())
    assert code.n == 0 and not code.x_generators and not code.z_generators


# --- fixtures -------------------------------------------------------------------


FIXTURE_EXPECT = {
    "green": (28, 4, 32, 9),
    "yellow": (28, 5, 32, 10),
    "purple": (96, 28, 78, 11),
}


@pytest.mark.parametrize("name", sorted(FIXTURE_EXPECT))
def test_fixture_census(name):
    n, nx, nz, rel = FIXTURE_EXPECT[name]
    code = sublattice_fixture(name)
    verify_commutation(code)
    assert code.n == n
    assert len(code.x_generators) == nx
    assert len(code.z_generators) == nz
    assert relation_count(code) == rel
    assert logical_qubit_count(code) == 1


@pytest.mark.parametrize("name", sorted(FIXTURE_EXPECT))
def test_fixture_printed_logicals_valid(name):
    code = sublattice_fixture(name)
    lx, lz = fixture_logicals(name)
    assert is_logical_pair_valid(code, LogicalPair(lx, lz, name))


def test_fixture_logical_supports():
    _, lz = fixture_logicals("green")
    assert lz.z.indices() == (2, 10)          # Z3 Z11, 1-indexed
    _, lz = fixture_logicals("yellow")
    assert lz.z.indices() == (1, 25)          # Z2 Z26
    lx, lz = fixture_logicals("purple")
    assert lx.x.indices() == tuple(range(16, 32))   # X17..X32
    assert lz.z.indices() == (1, 9, 17, 32)   # Z2 Z10 Z18 Z33


def test_fixture_k_sum_matches_minimal_model(code):
    total = sum(
        logical_qubit_count(sublattice_fixture(name)) for name in FIXTURE_EXPECT
    )
    assert total == logical_qubit_count(code) == 3


def test_fixture_unknown_name():
    with pytest.raises(KeyError):
        sublattice_fixture("red")


def test_green_closure_relation():
    # the eight inner plaquettes multiply to identity
    code = sublattice_fixture("green")
    acc = BitVector(code.n)
    for g in code.z_generators[:8]:
        acc = acc ^ g.z
    assert acc.is_zero()


# --- logical search -----------------------------------------------------------------


def test_find_logical_pairs_minimal_model(model, code):
    pairs = find_logical_pairs(code)
    assert len(pairs) == 3
    for i, p in enumerate(pairs):
        assert is_logical_pair_valid(code, p)
        for j, q in enumerate(pairs):
            expected = 1 if i == j else 0
            assert p.x_logical.x.dot(q.z_logical.z) == expected


def test_membranes_homologous_to_found_logicals(model, code):
    pairs = find_logical_pairs(code)
    n = code.n
    rows = list(code.x_matrix().rows) + [p.x_logical.x for p in pairs]
    full = BitMatrix(n, rows)
    for pair in ("pg", "py", "yg"):
        m = model.membrane_support(frozenset(pair), ("x+", "x-"))
        vec = BitVector.from_indices(n, [model.index[q] for q in m.qubits])
        assert in_span(vec, full)
        assert not in_span(vec, code.x_matrix())


def test_strings_homologous_to_found_logicals(model, code):
    pairs = find_logical_pairs(code)
    n = code.n
    rows = list(code.z_matrix().rows) + [p.z_logical.z for p in pairs]
    full = BitMatrix(n, rows)
    for color in "ygp":
        s = model.string_support(color, ("z+", "z-"))
        vec = BitVector.from_indices(n, [model.index[q] for q in s.qubits])
        assert in_span(vec, full)
        assert not in_span(vec, code.z_matrix())


def test_find_logical_pairs_stabilizer_complete():
    # a code with no logical qubits yields no pairs
    code = StabilizerCode(
        n=1,
        x_generators=(PauliOperator.x_on(1, [0]),),
        z_generators=(),
        x_labels=("A",),
        z_labels=(),
    )
    assert logical_qubit_count(code) == 0
    assert find_logical_pairs(code) == []


# --- serialization -------------------------------------------------------------------


def test_serialize_round_trip(code):
    text = serialize_code(code)
    back = deserialize_code(text)
    assert back.n == code.n
    assert back.x_labels == code.x_labels
    assert [g.x for g in back.x_generators] == [g.x for g in code.x_generators]
    assert [g.z for g in back.z_generators] == [g.z for g in code.z_generators]
    assert serialize_code(back) == text


def test_serialize_rejects_bad_header():
    with pytest.raises(ValueError):
        deserialize_code("bogus\nn 3\n")


# --- gauging ---------------------------------------------------------------------------


def test_gauge_torus_k3():
    code = gauge_z2(cubic_torus(2))
    assert code.n == 24
    assert len(code.x_generators) == 8
    assert len(code.z_generators) == 24
    assert logical_qubit_count(code) == 3


def test_gauge_torus_structure():
    code = gauge_z2(cubic_torus(2))
    # every Z generator is a cycle: even incidence at every vertex
    edges = code.meta["edges"]
    for g in code.z_generators:
        counts: dict = {}
        for i in g.z.indices():
            for end in edges[i]:
                if end is not None:
                    counts[end] = counts.get(end, 0) + 1
        assert all(c % 2 == 0 for c in counts.values())


def test_gauge_single_vertex_trivial():
    matter = MatterGraph(vertices=("v",), edges=(), faces=(), marks={})
    code = gauge_z2(matter)
    assert code.n == 0
    assert logical_qubit_count(code) == 0


def test_gauge_slab_k1_and_condensation():
    from colorcode3d.verify import condenses

    matter = cubic_slab(2, 2, 2)
    code = gauge_z2(matter)
    assert logical_qubit_count(code) == 1
    z_string, x_membrane = slab_logicals(matter, code)
    v_string = condenses(code, z_string, "rough string")
    v_membrane = condenses(code, x_membrane, "smooth membrane")
    assert v_string.condenses
    assert v_membrane.condenses
    assert not commutes(z_string, x_membrane)


def test_gauge_smooth_preserves_global_symmetry():
    # product of all vertex stars hits dangling edges only: identity on a
    # smooth-only complex, nontrivial when rough boundaries exist
    torus = gauge_z2(cubic_torus(2))
    acc = BitVector(torus.n)
    for g in torus.x_generators:
        acc = acc ^ g.x
    assert acc.is_zero()
    slab = gauge_z2(cubic_slab(2, 2, 2))
    acc = BitVector(slab.n)
    for g in slab.x_generators:
        acc = acc ^ g.x
    assert not acc.is_zero()  # the rough boundary breaks the global parity


def test_gauge_rejects_bad_face():
    matter = MatterGraph(
        vertices=("a", "b"), edges=(("a", "b"),), faces=((0,),), marks={}
    )
    with pytest.raises(GaugingError):
        gauge_z2(matter)


def test_gauge_rejects_bad_mark():
    matter = MatterGraph(
        vertices=("a",), edges=(), faces=(), marks={"a": "jagged"}
    )
    with pytest.raises(GaugingError):
        gauge_z2(matter)


def test_matter_graph_serialization_round_trip():
    matter = cubic_slab(1, 1, 1)
    text = serialize_matter_graph(matter)
    back = parse_matter_graph(text)
    assert back.vertices == matter.vertices
    assert back.edges == matter.edges
    assert back.faces == matter.faces
    assert back.marks == matter.marks
    assert serialize_code(gauge_z2(back)) == serialize_code(gauge_z2(matter))


def test_coupled_model_symmetry_breaking():
    from colorcode3d.codes import couple_gauge_qubits

    # smooth boundaries everywhere: the global matter symmetry survives
    torus_model = couple_gauge_qubits(cubic_torus(2))
    assert torus_model.symmetry_breaking_report()["preserved"]
    # rough boundaries introduce single-Z terms that break it
    slab_model = couple_gauge_qubits(cubic_slab(2, 2, 2))
    report = slab_model.symmetry_breaking_report()
    assert not report["preserved"]
    assert len(report["broken_terms"]) == 18  # one per rough vertex


def test_coupled_model_gauge_symmetries_commute_with_constraints():
    from colorcode3d.codes import couple_gauge_qubits

    model = couple_gauge_qubits(cubic_slab(1, 1, 1))
    for s in model.gauge_symmetries:
        for t in model.constraint_terms:
            assert commutes(s, t)


def test_projection_matches_direct_gauging():
    from colorcode3d.codes import couple_gauge_qubits

    matter = cubic_slab(2, 2, 2)
    direct = gauge_z2(matter)
    via_model = couple_gauge_qubits(matter).project_strong_coupling()
    assert serialize_code(direct) == serialize_code(via_model)
