import trsc


def test_encode_roundtrip():
    sn = trsc.encode_sn(5, 3)
    assert sn == "10111010"
    assert sn.count("1") == 5
    assert trsc.encode_un(3, 3) == "11100000"
    assert [trsc.sn_bit(5, 3, j) for j in range(8)] == [int(c) for c in sn]


def test_mul_reference_and_engine_agree():
    for a, b in [(45, 200), (255, 255), (0, 7), (171, 213)]:
        ref = trsc.mul_reference(a, b, 8)
        assert trsc.multiply(a, b)["count"] == ref
        assert trsc.multiply(a, b, seed_compressed=True)["count"] == ref


def test_worst_case_costs():
    res = trsc.multiply(255, 255)
    assert res["cycles"] == 32
    assert abs(res["energy_pj"] - 44.3) / 44.3 < 0.10


def test_compress():
    code = trsc.compress(200, 8, 2)
    assert code["seed"] == "111"
    assert code["low_bits"] == 8
    assert code["stored_bits"] == 9
    assert code["decompressed"] == trsc.encode_sn(200, 8)


def test_dot():
    terms = [(17, 18, 1), (13, 14, -1)]
    res = trsc.dot(terms, width=5, parallelism=4)
    expect = trsc.mul_reference(17, 18, 5) - trsc.mul_reference(13, 14, 5)
    assert res["value"] == expect


def test_storage_parts():
    assert trsc.storage_parts(4, 10, True) == 4
    assert trsc.storage_parts(4, 10, False) == 8


def test_sweep_and_workload():
    pairs = trsc.synth_workload("network", 8, 300, 5)
    assert pairs == trsc.synth_workload("network", 8, 300, 5)
    points = trsc.sweep([8], [4, 64], pairs)
    assert len(points) == 2
    assert points[0]["cycles"] > points[1]["cycles"]
    assert set(points[0]) >= {"n", "P", "cycles", "opj", "edp", "storage_parts"}
