"""Smoke test for the uarg extension module."""

import uarg


def main():
    iaf = uarg.fixture("example1")
    completions = iaf.completions()
    assert len(completions) == 4, completions

    rul, witness = iaf.to_rul_isaf()
    assert uarg.check_witness(completions, rul.completions(), witness)

    imp, w2 = rul.to_imp_arg_iaf()
    assert imp.is_implicative
    ok, found = uarg.equivalent(completions, imp.completions())
    assert ok and found is not None

    left, right = uarg.fixture("remark_weak_equiv")
    ok, found = uarg.equivalent(left, right)
    assert not ok and found is None

    af = uarg.AF(["a", "b"], [("a", "b")])
    assert af.extensions("grounded") == [["a"]]
    assert uarg.AF.parse(af.to_text()) == af

    try:
        uarg.fixture("missing")
    except uarg.UargError as e:
        assert e.code == "UNKNOWN_FIXTURE"
    else:
        raise AssertionError("expected UargError")

    tight = uarg.Bounds(max_uncertain=1)
    try:
        iaf.completions(tight)
    except uarg.UargError as e:
        assert e.code == "UNCERTAINTY_BOUND_EXCEEDED"
    else:
        raise AssertionError("expected a bound error")

    prem = uarg.fixture("example5")
    assert len(prem.completions()) == 2
    rul5, w5 = prem.to_rul_isaf()
    assert uarg.check_witness(prem.completions(), rul5.completions(), w5)

    print("smoke test passed:", sorted(uarg.fixture_names()))


if __name__ == "__main__":
    main()
