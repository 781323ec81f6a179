from datetime import date

import pytest

from conftest import ex, wop
from core import competency as cq
from core.errors import NoAnchorError, UnknownFactorError
from core.reasoner import materialized
from core.series import build_series_view
from core.temporal import TimePeriod, TimeUnit

MEMBERS = [wop("wop2009"), wop("wop2010"), wop("wop2012")]


def test_cq1_members(wop_view):
    assert cq.cq1_members(wop_view) == MEMBERS


def test_cq2_time_period(wop_view):
    answer = cq.cq2_time_period(wop_view)
    assert answer.estimated == TimePeriod(1, TimeUnit.YEAR)
    assert answer.measured.measured_finer == TimePeriod(18, TimeUnit.MONTH)
    assert answer.measured.within_band is False


def test_cq2_unanchored_series(ttl):
    g = ttl("""
        ex:s a rss:RecurrentSituationSeries ; rss:hasMemberSituation ex:a ; rss:hasEstimatedTimePeriod ex:p .
        ex:p tp:hasTimePeriodMeasurementUnit ex:year ; tp:timePeriodValue 1 .
    """)
    answer = cq.cq2_time_period(build_series_view(g, ex("s")))
    assert answer.estimated == TimePeriod(1, TimeUnit.YEAR)
    assert answer.measured is None
    assert not cq.is_empty(answer)


def test_cq3_next_scheduled(wop_view):
    assert cq.cq3_next_scheduled(wop_view, date(2013, 1, 1)) == date(2013, 11, 12)


def test_cq3_without_anchors(ttl):
    g = ttl("ex:s a rss:RecurrentSituationSeries ; rss:hasMemberSituation ex:a .")
    with pytest.raises(NoAnchorError):
        cq.cq3_next_scheduled(build_series_view(g, ex("s")), date(2013, 1, 1))


def test_cq4_unifying_factors(wop_view):
    expected = {wop("pattern-based-design"), wop("wop-organisation"), wop("co-location-iswc"), wop("current-name")}
    assert expected <= cq.cq4_unifying_factors(wop_view)


def test_cq4_palio(ttl):
    g = ttl("""
        ex:palio a rss:RecurrentSituationSeries ;
            rss:hasUnifyingFactor ex:palio-name, ex:horse-race-in-piazza-del-campo .
    """)
    factors = cq.cq4_unifying_factors(build_series_view(g, ex("palio")))
    assert factors == {ex("palio-name"), ex("horse-race-in-piazza-del-campo")}


def test_cq4_no_factors(ttl):
    g = ttl("ex:s a rss:RecurrentSituationSeries .")
    assert cq.cq4_unifying_factors(build_series_view(g, ex("s"))) == set()


def test_cq5_limited_validity(wop_view):
    (validity,) = cq.cq5_factor_validity(wop_view, wop("current-name"))
    assert validity.interval == wop("2017-present")
    assert validity.start == date(2017, 1, 1)
    assert cq.to_json(validity) == {"interval": "http://example.org/wop/2017-present",
                                    "start": "2017-01-01", "end": None}


def test_cq5_unbounded(wop_view):
    assert cq.cq5_factor_validity(wop_view, wop("pattern-based-design")) == cq.UNBOUNDED


def test_cq5_unknown_factor(wop_view):
    with pytest.raises(UnknownFactorError):
        cq.cq5_factor_validity(wop_view, wop("no-such-factor"))


def test_cq6_description(wop_view):
    assert cq.cq6_unifying_description(wop_view) == {wop("wop-description")}


def test_cq6_two_descriptions(ttl):
    g = ttl("""
        ex:s a rss:RecurrentSituationSeries ; rss:hasUnifyingFactor ex:d1, ex:d2, ex:f .
        ex:d1 a dul:Description . ex:d2 a dul:Description .
    """)
    assert cq.cq6_unifying_description(build_series_view(g, ex("s"))) == {ex("d1"), ex("d2")}


def test_cq7_next(wop_graph):
    assert cq.cq7_next(wop_graph, wop("wop2010"), immediate_only=True) == {wop("wop2012")}
    assert cq.cq7_next(wop_graph, wop("wop2009")) == {wop("wop2010"), wop("wop2012")}
    assert cq.cq7_next(wop_graph, wop("wop2012")) == set()


def test_cq8_previous(wop_graph):
    assert cq.cq8_previous(wop_graph, wop("wop2012"), immediate_only=True) == {wop("wop2010")}
    assert cq.cq8_previous(wop_graph, wop("wop2009")) == set()
    assert cq.cq8_previous(wop_graph, wop("wop2012")) == {wop("wop2009"), wop("wop2010")}


def test_cq8_answers_from_inferred_inverse(ttl):
    g = ttl("ex:a rss:hasNextSituation ex:b .")
    assert cq.cq8_previous(g, ex("b")) == set()
    assert cq.cq8_previous(materialized(g), ex("b")) == {ex("a")}


@pytest.mark.parametrize("immediate", [False, True])
def test_next_previous_duality(wop_graph, immediate):
    for x in MEMBERS:
        for y in MEMBERS:
            assert (y in cq.cq7_next(wop_graph, x, immediate)) == (x in cq.cq8_previous(wop_graph, y, immediate))


def test_envelope(wop_view):
    data = cq.envelope(1, wop_view.series, cq.cq1_members(wop_view))
    assert data == {"cq": 1, "series": "http://example.org/wop/wop-series", "answer": [m.value for m in MEMBERS]}


def test_time_period_json(wop_view):
    data = cq.to_json(cq.cq2_time_period(wop_view))
    assert data["estimated"] == {"value": 1, "unit": "year"}
    assert data["measured"]["measuredDays"] == 557
    assert data["measured"]["measuredFiner"] == {"value": 18, "unit": "month"}
    assert data["measured"]["gaps"] == [379, 735]
    assert data["measured"]["band"] == [335, 396]
    assert data["measured"]["withinBand"] is False


def test_is_empty():
    assert cq.is_empty(set())
    assert cq.is_empty([])
    assert cq.is_empty(None)
    assert not cq.is_empty(cq.UNBOUNDED)
    assert not cq.is_empty(date(2020, 1, 1))
    assert cq.is_empty(cq.TimePeriodAnswer(None, None))


def test_every_question_is_listed():
    assert sorted(cq.QUESTIONS) == list(range(1, 9))
