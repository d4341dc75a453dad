import pytest

from libinvest.lexicon import tokenize
from libinvest.linkage import VolumeTriple
from libinvest.metrics import (
    ControlCounts,
    InvalidGraphError,
    ReuseFigures,
    UndefinedMetricError,
    cc_from_decisions,
    cc_from_graph,
    investment,
    lil,
    lir,
    ps,
    reuse_density,
    reuse_frequency,
    reuse_level,
    reuse_percent,
    threshold_flag,
)

EXAMPLE = VolumeTriple(67.63, 43.63)


def test_lir():
    assert lir(EXAMPLE) == pytest.approx(0.392, abs=5e-4)
    assert lir(VolumeTriple(50.0, 0.0)) == 0
    assert lir(VolumeTriple(10.0, 10.0)) == 0.5


def test_lil():
    assert lil(EXAMPLE) == pytest.approx(0.645, abs=5e-4)
    assert lil(VolumeTriple(50.0, 0.0)) == 0
    assert lil(VolumeTriple(67.63, 135.26)) == pytest.approx(2.0, rel=1e-12)


def test_ps():
    assert ps(EXAMPLE) == pytest.approx(0.392, abs=5e-4)
    assert ps(VolumeTriple(20.0, 0.0)) == 0
    assert ps(EXAMPLE) == pytest.approx(lir(EXAMPLE), abs=1e-12)


@pytest.mark.parametrize("fn, denominator", [(lir, "v_nr"), (ps, "v_nr"), (lil, "v_org")])
def test_undefined_metrics(fn, denominator):
    with pytest.raises(UndefinedMetricError) as info:
        fn(VolumeTriple(0.0, 0.0))
    assert info.value.denominator == denominator


def test_lil_undefined_with_reuse_but_no_program():
    with pytest.raises(UndefinedMetricError):
        lil(VolumeTriple(0.0, 5.0))


def test_investment_report():
    rep = investment(EXAMPLE, rp=0.22, cc=3)
    assert (rep.lir, rep.lil, rep.ps) == (lir(EXAMPLE), lil(EXAMPLE), ps(EXAMPLE))
    assert rep.to_dict()["v_nr"] == EXAMPLE.v_nr


def test_reuse_percent():
    assert reuse_percent(190, 265) == pytest.approx(190 / 455, rel=1e-12)
    assert reuse_percent(190, 265) == pytest.approx(0.4176, abs=5e-4)
    assert reuse_percent(0, 14) == 0
    # the worked example's 4/14 is rsi/ssi; the formula gives 4/18
    assert reuse_percent(4, 14) == pytest.approx(0.2222, abs=1e-4)
    with pytest.raises(UndefinedMetricError):
        reuse_percent(0, 0)


def test_reuse_level():
    assert reuse_level(2, 3, 8) == (0.25, 0.375, 0.625)
    assert reuse_level(0, 0, 5) == (0, 0, 0)
    with pytest.raises(UndefinedMetricError):
        reuse_level(0, 0, 0)
    with pytest.raises(ValueError):
        reuse_level(5, 5, 8)


def test_reuse_frequency():
    assert reuse_frequency(3, 3, 8) == (0.375, 0.375, 0.75)
    assert reuse_frequency(0, 0, 4) == (0, 0, 0)
    with pytest.raises(UndefinedMetricError):
        reuse_frequency(0, 0, 0)


def test_reuse_density():
    ird, erd, trd = reuse_density(2, 3, 455)
    assert (ird, erd, trd) == pytest.approx((0.0044, 0.0066, 0.0110), abs=1e-4)
    assert reuse_density(0, 0, 100) == (0, 0, 0)
    assert reuse_density(1, 1, 2) == (0.5, 0.5, 1.0)
    with pytest.raises(UndefinedMetricError):
        reuse_density(1, 1, 0)


def test_reuse_figures():
    figs = ReuseFigures(rsi=190, ssi=265, iu=2, eu=3, t=8, iuf=3, euf=3, tf=8, total_loc=455,
                        fresh=100)
    assert figs.reuse_level() == (0.25, 0.375, 0.625)
    assert figs.reuse_frequency() == (0.375, 0.375, 0.75)
    assert figs.reuse_percent() == reuse_percent(190, 265)
    assert figs.release_reuse_percent() == pytest.approx(190 / 290)
    with pytest.raises(ValueError):
        ReuseFigures(rsi=1, ssi=1, iu=3, eu=0, t=2)
    with pytest.raises(UndefinedMetricError):
        ReuseFigures(rsi=1, ssi=1).release_reuse_percent()


def test_reuse_figures_from_usage_thresholds():
    figs = ReuseFigures.from_usage(10, 100, internal={"A": 2, "B": 1, "C": 0},
                                   external={"F": 1, "G": 3}, total_components=5,
                                   total_loc=110, itl=2, etl=1)
    assert (figs.iu, figs.eu, figs.iuf, figs.euf, figs.tf) == (1, 2, 2, 4, 7)


FIGURE1_EDGES = [("A", "B"), ("A", "F"), ("B", "C"), ("B", "D"), ("B", "E"), ("C", "E"),
                 ("C", "H"), ("D", "E"), ("D", "G"), ("E", "F"), ("E", "G"), ("F", "H"),
                 ("F", "E"), ("G", "H"), ("G", "G")]


def test_cc_from_graph():
    assert cc_from_graph(ControlCounts(15, 8, 1)) == 9
    assert cc_from_graph(ControlCounts(1, 2, 1)) == 1
    assert cc_from_graph(ControlCounts(2, 4, 2)) == 2


def test_control_counts_from_figure1_edges():
    counts = ControlCounts.from_edges(FIGURE1_EDGES)
    assert counts == ControlCounts(15, 8, 1)
    assert cc_from_graph(counts) == 9


def test_control_counts_validation():
    with pytest.raises(ValueError):
        ControlCounts(1, 4, 1)
    with pytest.raises(ValueError):
        ControlCounts(0, 0, 1)


def test_valid_counts_never_give_cc_below_one():
    # e >= n - p makes e - n + 2p >= p >= 1, so the graph error needs unvalidated input
    for n in range(1, 8):
        for p in range(1, n + 1):
            for e in range(n - p, n + 4):
                assert cc_from_graph(ControlCounts(e, n, p)) >= 1
    bogus = object.__new__(ControlCounts)
    for name, value in (("e", 0), ("n", 5), ("p", 1)):
        object.__setattr__(bogus, name, value)
    with pytest.raises(InvalidGraphError):
        cc_from_graph(bogus)


def test_cc_from_decisions(cpp):
    assert cc_from_decisions(tokenize("if(a){} else if(b){} while(c){}", cpp), cpp) == 4
    assert cc_from_decisions(tokenize("x = 1; y = 2;", cpp), cpp) == 1
    assert cc_from_decisions(tokenize("if (a) {} else {}", cpp), cpp) == 2
    src = "switch (k) { case 1: break; case 2: break; default: break; }"
    assert cc_from_decisions(tokenize(src, cpp), cpp) == 3


def test_cc_eight_decision_points(cpp):
    src = ("if(a){} for(;;){} while(b){} if(c){} else if(d){} "
           "switch(e){ case 1: break; case 2: break; } while(f){}")
    assert cc_from_decisions(tokenize(src, cpp), cpp) == 9


def test_threshold_flag():
    assert threshold_flag(9) is True
    assert threshold_flag(10) is False
    assert threshold_flag(1) is True
    with pytest.raises(ValueError):
        threshold_flag(0)
