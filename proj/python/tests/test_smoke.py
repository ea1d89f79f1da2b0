import polyclone


def test_detect_and_classify():
    assert polyclone.detect_polymorphisms("0001") == ["and"]
    assert polyclone.detect_polymorphisms("0110") == ["aff"]
    assert polyclone.classify("0011") == "projection(1)"


def test_majority_selection_for_and():
    sel = polyclone.polymorphism_witnesses("0001", "maj")
    assert sel == [(["010", "100", "111"], "110")]
    assert len(polyclone.polymorphism_witnesses("1001", "maj")) == 4


def test_synthesis_and_optimal():
    prog = polyclone.synthesize("0111", "or")
    assert polyclone.computes(prog, "0111")
    best = polyclone.optimal_circuit("0110")
    assert best.count(" = ") == 4
    assert polyclone.computes(best, "0110")


def test_cover_round_trip():
    best = polyclone.optimal_circuit("1001")
    cover = polyclone.cover_from_circuit(best, "1001")
    valid, witness = polyclone.verify_cover(cover)
    assert valid and witness is None
    again = polyclone.circuit_from_cover(cover)
    assert polyclone.computes(again, "1001")


def test_short_cover_has_counterexample():
    cover = "n=2 flavor=pol table=0001\n"
    valid, witness = polyclone.verify_cover(cover)
    assert not valid
    assert witness.startswith("witness mode=total")


def test_tsvnd_round_trip():
    best = polyclone.optimal_circuit("0110")
    cover = polyclone.cover_from_circuit(best, "0110", "pol")
    circuit = polyclone.tsvnd_from_pol_cover(cover)
    assert polyclone.validate_tsvnd(circuit, "0110") == {
        "total": True, "single_valued": True, "computes_f": True}
    nd, cond = polyclone.split_tsvnd(circuit)
    assert polyclone.decided_function(polyclone.merge_nd_cond(nd, cond)) == "0110"
    back = polyclone.pol_cover_from_tsvnd(circuit, "0110")
    assert polyclone.verify_cover(back)[0]


def test_sweep_report():
    report = polyclone.run_theorem_sweep(2, ["s3", "s4", "s5"])
    assert report["schema_version"] == 1
    assert len(report["records"]) == 16
    assert report["summary"]["s3"] == {"pass": 10, "fail": 0, "n/a": 6}
    assert report["summary"]["s4"]["pass"] == 16
    assert report["summary"]["s5"]["pass"] == 16


def test_parse_errors_are_value_errors():
    try:
        polyclone.computes("n=2\ng3 = XOR g1 g2\n", "0110")
    except ValueError as e:
        assert "line 2" in str(e)
    else:
        raise AssertionError("expected a parse error")


def test_anchored_cover_is_valid():
    # valid = not y, value = y and (y or x): decides constant 0.
    circuit = "n=1 m=1\ng3 = OR g2 g1\ng4 = OR g3 g1\ng5 = AND g2 g3\ng6 = NOT g2\noutputs g6 g5\n"
    assert polyclone.decided_function(circuit) == "00"
    assert not polyclone.verify_cover(polyclone.pol_cover_from_tsvnd(circuit, "00"))[0]
    assert polyclone.verify_cover(polyclone.anchored_pol_cover_from_tsvnd(circuit, "00"))[0]
