"""
Answers to the pattern's eight competency questions, plus the JSON
envelopes the CLI prints them in.
"""
import logging
from dataclasses import dataclass
from datetime import date
from typing import Optional

from core.errors import FewerThanTwoAnchorsError, UnknownFactorError
from core.graph import Term
from core.temporal import BandMode, PeriodAssessment, TimePeriod, compute_measured_period, next_scheduled
from core.vocabulary import RSS

logger = logging.getLogger(__name__)

QUESTIONS = {
    1: "Which are the situations of a recurrent situation series?",
    2: "Which is the time period elapsing between two situations of a recurrent situation series?",
    3: "When is the next situation of a recurrent situation series scheduled?",
    4: "What are the unifying criteria of a recurrent situation series?",
    5: "Which is the temporal validity of a unifying factor of a recurrent situation series?",
    6: "Which is the description satisfied by all the situations of a recurrent situation series?",
    7: "Which is the (immediate) next situation in a recurrent situation series?",
    8: "Which is the (immediate) previous situation in a recurrent situation series?",
}

# CQ5 answer for a factor that holds for the whole life of the series
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class ValidityInterval:
    interval: Optional[Term]
    start: Optional[date]
    end: Optional[date]


@dataclass(frozen=True)
class TimePeriodAnswer:
    estimated: Optional[TimePeriod]
    measured: Optional[PeriodAssessment]


def cq1_members(view):
    return list(view.members)


def cq2_time_period(view, mode=BandMode.TOLERANT):
    try:
        measured = compute_measured_period(view, mode)
    except FewerThanTwoAnchorsError:
        measured = None
    return TimePeriodAnswer(view.estimated, measured)


def cq3_next_scheduled(view, today):
    return next_scheduled(view, today)


def cq4_unifying_factors(view):
    return set(view.unifying_factors)


def cq5_factor_validity(view, factor):
    """
    Intervals in which a unifying factor holds, or UNBOUNDED when the factor
    is attached to the series directly and no unifying situation limits it.

    Raises:
        UnknownFactorError: the factor does not unify this series.
    """
    if factor not in view.unifying_factors:
        raise UnknownFactorError(f"{factor.value} is not a unifying factor of {view.series.value}")
    intervals = [ValidityInterval(u.interval, u.start, u.end)
                 for u in view.unifying_situations if u.factor == factor]
    if not intervals:
        return UNBOUNDED
    return sorted(set(intervals), key=lambda v: (v.start or date.min, v.interval.sort_key() if v.interval else ()))


def cq6_unifying_description(view):
    return set(view.descriptions)


def cq7_next(graph, situation, immediate_only=False):
    predicate = RSS.hasImmediateNextSituation if immediate_only else RSS.hasNextSituation
    return set(graph.objects(situation, predicate))


def cq8_previous(graph, situation, immediate_only=False):
    predicate = RSS.hasImmediatePreviousSituation if immediate_only else RSS.hasPreviousSituation
    return set(graph.objects(situation, predicate))


# --- JSON rendering ---

def period_to_json(period):
    if period is None:
        return None
    return {"value": period.value, "unit": period.unit.value}


def assessment_to_json(assessment):
    if assessment is None:
        return None
    return {
        "measuredDays": assessment.measured_days,
        "measured": period_to_json(assessment.measured),
        "measuredFiner": period_to_json(assessment.measured_finer),
        "gaps": list(assessment.gaps),
        "band": list(assessment.band) if assessment.band else None,
        "withinBand": assessment.within_band,
    }


def to_json(answer):
    """Render a CQ answer as JSON-ready data with a stable order."""
    if isinstance(answer, Term):
        return answer.value
    if isinstance(answer, date):
        return answer.isoformat()
    if isinstance(answer, (set, frozenset)):
        return [to_json(a) for a in sorted(answer)]
    if isinstance(answer, (list, tuple)):
        return [to_json(a) for a in answer]
    if isinstance(answer, ValidityInterval):
        return {
            "interval": answer.interval.value if answer.interval else None,
            "start": answer.start.isoformat() if answer.start else None,
            "end": answer.end.isoformat() if answer.end else None,
        }
    if isinstance(answer, TimePeriodAnswer):
        return {"estimated": period_to_json(answer.estimated), "measured": assessment_to_json(answer.measured)}
    return answer


def is_empty(answer):
    if answer is None:
        return True
    if isinstance(answer, (set, frozenset, list, tuple)):
        return len(answer) == 0
    if isinstance(answer, TimePeriodAnswer):
        return answer.estimated is None and answer.measured is None
    return False


def envelope(cq_id, series, answer):
    return {"cq": cq_id, "series": series.value, "answer": to_json(answer)}
