import pytest
from hypothesis import given, settings

from hdelta.cohen import knaster_example_family, product_condition_family
from hdelta.deltasys import RootSystem, derive_roots, infer_witness
from hdelta.errors import InputError
from hdelta.formats import (
    coloring_lines,
    condition_family_lines,
    decode_color,
    encode_color,
    family_lines,
    read_coloring,
    read_condition_family,
    read_family,
    read_records,
    read_roots,
    read_witness,
    dumps_record,
    roots_lines,
    witness_record,
)
from hdelta.generators import (
    Coloring,
    first_difference_coloring,
    gen_product_family,
    gen_shift_family,
    lift_polarized,
    parity_coloring,
)

from helpers import small_families


def text(lines):
    return "\n".join(lines) + "\n"


class TestFamily:
    def test_shift_file(self):
        lines = list(family_lines(gen_shift_family(8)))
        assert lines[0] == '{"n":2,"ground":[0,1,2,3,4,5,6,7]}'
        assert len(lines) == 1 + 28
        assert lines[1] == '{"index":[0,1],"set":[0,2]}'

    @settings(max_examples=60)
    @given(small_families())
    def test_round_trip_is_bit_exact(self, f):
        t = text(family_lines(f))
        g = read_family(t)
        assert g == f
        assert text(family_lines(g)) == t

    @pytest.mark.parametrize(
        "body, where",
        [
            ('{"ground":[0,1]}\n{"index":[0],"set":[]}', "line 1"),
            ('{"n":1,"ground":[0,1]}\n{"index":[0],"set":[]}', "total"),
            ('{"n":1,"ground":[0,1]}\n{"index":[0],"set":[3,2]}\n{"index":[1],"set":[]}', "line 2"),
            ('{"n":1,"ground":[0,1]}\n{"index":[0],"set":[-1]}\n{"index":[1],"set":[]}', "line 2"),
            ('{"n":1,"ground":[0,1]}\n{"index":[0],"set":[]}\n{oops', "line 3"),
            ('{"n":1,"ground":[0,1]}\n{"index":[0],"set":[]}\n{"index":[0],"set":[]}', "duplicate"),
            ('{"n":1,"ground":[0,1]}\n{"index":[0,1],"set":[]}', "line 2"),
            ('{"n":1,"ground":[0,1]}\n{"set":[]}', "missing"),
            ("", "empty"),
        ],
    )
    def test_malformed(self, body, where):
        with pytest.raises(InputError, match=where):
            read_family(body)


class TestColoring:
    @pytest.mark.parametrize(
        "c",
        [
            parity_coloring(5, 2),
            parity_coloring(3, 2, product=True),
            first_difference_coloring(3, None),
            lift_polarized(Coloring(1, range(3), lambda x: x[0], product=True), 4),
        ],
    )
    def test_round_trip(self, c):
        t = text(coloring_lines(c))
        d = read_coloring(t, product=c.product)
        assert d == c
        assert text(coloring_lines(d)) == t

    def test_headerless_inference(self):
        d = read_coloring('{"index":[0,2],"color":1}\n{"index":[0,3],"color":0}\n{"index":[2,3],"color":1}')
        assert d.n == 2 and d.ground == (0, 2, 3) and d((0, 3)) == 0

    def test_tuple_colors(self):
        assert decode_color(encode_color((1, (0, 2)))) == (1, (0, 2))
        with pytest.raises(InputError):
            decode_color(1.5)

    def test_partial(self):
        with pytest.raises(InputError):
            read_coloring('{"n":2,"ground":[0,1,2]}\n{"index":[0,1],"color":0}')


class TestConditions:
    @pytest.mark.parametrize("cf", [knaster_example_family(5), product_condition_family(4, 2, (4, 8), "10")])
    def test_round_trip(self, cf):
        t = text(condition_family_lines(cf))
        back = read_condition_family(t)
        assert back == cf
        assert text(condition_family_lines(back)) == t

    @pytest.mark.parametrize(
        "cond",
        ['[[1,0],[0,1]]', '[[0,2]]', '[[0]]', '{"0":1}'],
    )
    def test_malformed(self, cond):
        body = '{"n":1,"ground":[0]}\n{"index":[0],"cond":' + cond + "}"
        with pytest.raises(InputError):
            read_condition_family(body)


class TestWitnessAndRoots:
    def test_witness_round_trip(self):
        w = infer_witness(gen_product_family(4, 2, (10, 20)))
        t = dumps_record(witness_record(w))
        assert read_witness(t) == w

    def test_witness_errors(self):
        with pytest.raises(InputError):
            read_witness('{"rho":2}')
        with pytest.raises(InputError):
            read_witness('{"rho":1,"rmap":[]}\n{"rho":1,"rmap":[]}')

    def test_roots_round_trip(self):
        f = gen_product_family(4, 2, (10, 20))
        rs = derive_roots(f, infer_witness(f))
        t = text(roots_lines(rs))
        back = read_roots(t)
        assert back == rs
        assert text(roots_lines(back)) == t

    def test_flat_roots_file(self):
        f = gen_shift_family(3)
        back = read_roots(text(roots_lines(RootSystem.flat(f))))
        assert back == RootSystem.flat(f)

    def test_roots_size_mismatch(self):
        with pytest.raises(InputError):
            read_roots('{"n":1,"ground":[0]}\n{"mask":[0],"index":[],"root":[]}')


def test_records_skip_blank_lines_and_need_objects():
    assert [no for no, _ in read_records('{"a":1}\n\n{"b":2}\n')] == [1, 3]
    with pytest.raises(InputError, match="line 1"):
        read_records("[1,2]")
