from datetime import date

import pytest

from conftest import ex, wop
from core.errors import NotASeriesError
from core.fixtures import load_fixture
from core.reasoner import materialized
from core.series import AnchorConfig, build_all_views, build_series_view, find_series, order_members
from core.temporal import TimePeriod, TimeUnit
from core.vocabulary import RSS


def test_wop_view(wop_view):
    assert wop_view.members == (wop("wop2009"), wop("wop2010"), wop("wop2012"))
    assert {wop("pattern-based-design"), wop("wop-organisation"), wop("co-location-iswc")} <= wop_view.unifying_factors
    assert wop("current-name") in wop_view.unifying_factors
    assert wop("current-name") not in wop_view.direct_factors
    (situation,) = wop_view.unifying_situations
    assert situation.situation == wop("wop-name-since-2017")
    assert situation.interval == wop("2017-present")
    assert situation.start == date(2017, 1, 1)
    assert situation.end is None
    assert wop_view.estimated == TimePeriod(1, TimeUnit.YEAR)
    assert wop_view.last_flagged == wop("wop2012")
    assert wop_view.anchors[wop("wop2010")] == date(2010, 11, 8)
    assert wop_view.descriptions == {wop("wop-description")}


def test_zero_member_series():
    g = materialized(load_fixture("zero-members"))
    view = build_series_view(g, ex("zero/never-held-series"))
    assert view.members == ()
    assert view.anchors == {}
    assert view.last_flagged is None


def test_untyped_series_is_rejected(wop_graph):
    with pytest.raises(NotASeriesError):
        build_series_view(wop_graph, ex("not-a-series"))


def test_members_from_either_membership_direction(ttl):
    g = ttl("""
        ex:s a rss:RecurrentSituationSeries ; rss:hasMemberSituation ex:a .
        ex:b rss:isSituationMemberOf ex:s .
        ex:a rss:hasImmediateNextSituation ex:b .
    """)
    assert build_series_view(g, ex("s")).members == (ex("a"), ex("b"))


def test_order_follows_immediate_links_over_numbers(ttl):
    g = ttl("""
        ex:s a rss:RecurrentSituationSeries ; rss:hasMemberSituation ex:x, ex:y, ex:z .
        ex:z rss:hasImmediatePreviousSituation ex:y .
        ex:y rss:hasImmediatePreviousSituation ex:x .
        ex:x rss:situationNumber 9 .
        ex:z rss:situationNumber 1 .
    """)
    assert build_series_view(g, ex("s")).members == (ex("x"), ex("y"), ex("z"))


def test_order_falls_back_to_number_then_date_then_iri():
    members = [ex("d"), ex("c"), ex("b"), ex("a")]
    numbers = {ex("c"): 1, ex("d"): 2}
    anchors = {ex("b"): date(2001, 1, 1), ex("a"): date(2002, 1, 1)}
    assert order_members(members, {}, numbers, anchors) == (ex("c"), ex("d"), ex("b"), ex("a"))
    assert order_members(members, {}, {}, {}) == (ex("a"), ex("b"), ex("c"), ex("d"))


def test_order_terminates_on_cycles():
    a, b = ex("a"), ex("b")
    ordered = order_members([a, b], {a: {b}, b: {a}}, {}, {})
    assert sorted(ordered) == [a, b]


def test_anchor_through_time_interval(ttl):
    g = ttl("""
        ex:s a rss:RecurrentSituationSeries ; rss:hasMemberSituation ex:m .
        ex:m dul:hasTimeInterval ex:i .
        ex:i rss:hasStartDate "2019-03-15"^^xsd:date .
    """)
    assert build_series_view(g, ex("s")).anchors == {ex("m"): date(2019, 3, 15)}


def test_custom_anchor_predicate(ttl):
    g = ttl('ex:s a rss:RecurrentSituationSeries ; rss:hasMemberSituation ex:m .\n'
            'ex:m ex:heldOn "2019-03-15"^^xsd:date .')
    assert build_series_view(g, ex("s")).anchors == {}
    view = build_series_view(g, ex("s"), AnchorConfig(predicate=ex("heldOn")))
    assert view.anchors == {ex("m"): date(2019, 3, 15)}


def test_generic_time_period_is_the_estimate_fallback(ttl):
    g = ttl("""
        ex:s a rss:RecurrentSituationSeries ; rss:hasTimePeriod ex:p .
        ex:p tp:hasTimePeriodMeasurementUnit ex:months ; tp:timePeriodValue 6 .
    """)
    assert build_series_view(g, ex("s")).estimated == TimePeriod(6, TimeUnit.MONTH)


def test_per_member_periods(ttl):
    g = ttl("""
        ex:s a rss:RecurrentSituationSeries ; rss:hasMemberSituation ex:m .
        ex:m rss:hasTimePeriodBeforeNextSituation ex:p .
        ex:p tp:hasTimePeriodMeasurementUnit ex:week ; tp:timePeriodValue 2 .
    """)
    assert build_series_view(g, ex("s")).per_member_periods == ((ex("m"), TimePeriod(2, TimeUnit.WEEK)),)


def test_unusable_period_is_ignored(ttl):
    g = ttl("""
        ex:s a rss:RecurrentSituationSeries ; rss:hasEstimatedTimePeriod ex:p .
        ex:p tp:hasTimePeriodMeasurementUnit ex:fortnight ; tp:timePeriodValue 1 .
    """)
    assert build_series_view(g, ex("s")).estimated is None


def test_arctic_tern_sub_series():
    g = materialized(load_fixture("arctic-tern"))
    base = "arctic-tern/"
    views = {v.series: v for v in build_all_views(g)}
    main = views[ex(base + "arctic-tern-migration")]
    assert ex(base + "arctic-tern-migration-2019") in main.members
    assert main.parts == {ex(base + "arctic-tern-ns-migration"), ex(base + "arctic-tern-sn-migration")}
    assert find_series(g) == sorted(views)
    assert views[ex(base + "arctic-tern-ns-migration")].members == (ex(base + "arctic-tern-migration-ns-2019"),)


def test_view_reads_materialized_inverses(ttl):
    g = materialized(ttl("""
        ex:s a rss:RecurrentSituationSeries ; rss:hasMemberSituation ex:a, ex:b .
        ex:b rss:hasPreviousSituation ex:a .
    """))
    view = build_series_view(g, ex("s"))
    assert view.next_links[ex("a")] == {ex("b")}
    assert g.has(ex("a"), RSS.hasNextSituation, ex("b"))
