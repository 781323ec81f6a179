"""
Date arithmetic for recurrent series: day counts, the measured (observed)
period, the tolerance band of an estimated period and the next expected
occurrence.
"""
import logging
import re
from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from typing import Optional, Tuple

from dateutil.relativedelta import relativedelta

from core.errors import DateOutOfRangeError, FewerThanTwoAnchorsError, NoAnchorError, NoEstimatedPeriodError
from core.graph import Graph, Term, Triple
from core.vocabulary import RDF, RSS, TP, XSD
from utils.stats import mean_gap, round_half_up

logger = logging.getLogger(__name__)

_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")


class TimeUnit(Enum):
    DAY = "day"
    WEEK = "week"
    MONTH = "month"
    YEAR = "year"

    @property
    def days(self):
        return UNIT_DAYS[self]

    @property
    def finer(self):
        return FINER_UNIT[self]


# Average lengths used to convert between units
UNIT_DAYS = {TimeUnit.DAY: 1.0, TimeUnit.WEEK: 7.0, TimeUnit.MONTH: 30.44, TimeUnit.YEAR: 365.25}
FINER_UNIT = {TimeUnit.YEAR: TimeUnit.MONTH, TimeUnit.MONTH: TimeUnit.WEEK, TimeUnit.WEEK: TimeUnit.DAY,
              TimeUnit.DAY: None}


class BandMode(str, Enum):
    TOLERANT = "tolerant"
    STRICT = "strict"

    @classmethod
    def _missing_(cls, value):
        return BAND_MODE_ALIASES.get(value)


# Older name of the tolerant band, still accepted on input
BAND_MODE_ALIASES = {"paper-band": BandMode.TOLERANT}


def unit_from_term(term):
    """Recognize a measurement unit from the local name of its IRI (year, Years, month ...)."""
    if term is None or not term.is_iri:
        return None
    name = term.local_name.lower()
    if name.endswith("s"):
        name = name[:-1]
    try:
        return TimeUnit(name)
    except ValueError:
        return None


@dataclass(frozen=True)
class TimePeriod:
    value: int
    unit: TimeUnit
    # IRI the unit was read from, reused when writing periods back
    unit_term: Optional[Term] = field(default=None, compare=False)

    def __post_init__(self):
        if self.value < 0:
            raise ValueError(f"Time period value must be >= 0, got {self.value}")

    @property
    def days(self):
        return self.value * self.unit.days

    def offset(self, times=1):
        """Calendar offset of `times` periods (month/year steps clamp the day of month)."""
        n = self.value * times
        if self.unit is TimeUnit.YEAR:
            return relativedelta(years=n)
        if self.unit is TimeUnit.MONTH:
            return relativedelta(months=n)
        if self.unit is TimeUnit.WEEK:
            return relativedelta(weeks=n)
        return relativedelta(days=n)

    def __str__(self):
        plural = "" if self.value == 1 else "s"
        return f"{self.value} {self.unit.value}{plural}"


@dataclass(frozen=True)
class PeriodAssessment:
    measured_days: int
    measured: TimePeriod
    within_band: Optional[bool]
    band: Optional[Tuple[int, int]]
    gaps: Tuple[int, ...]
    estimated: Optional[TimePeriod] = None

    def in_unit(self, unit):
        """Mean gap expressed in another unit, rounded half-up."""
        return TimePeriod(max(0, round_half_up(self.measured_days / unit.days)), unit)

    @property
    def measured_finer(self):
        """Mean gap in the next finer unit (a yearly series is read in months)."""
        return self.in_unit(self.measured.unit.finer or self.measured.unit)


def parse_date(term):
    """xsd:date (or plain string) literal in YYYY-MM-DD form -> date, else None."""
    if term is None or not term.is_literal or term.datatype not in (XSD.date.value, XSD.string.value):
        return None
    if not _DATE_RE.match(term.value):
        return None
    try:
        return date.fromisoformat(term.value)
    except ValueError:
        return None


def days_between(a, b):
    """Signed number of days from a to b."""
    return (b - a).days


def period_band(estimated, mode=BandMode.TOLERANT):
    """
    Range of day counts an estimated period accepts.

    In tolerant mode one unit is widened by one unit of the next finer
    kind (a year accepts 11 to 13 months, a month +-1 week, a week +-1 day),
    each end rounded half-up, and the result scaled by the value.
    Strict mode accepts only the exact length.
    """
    if estimated.value < 1:
        raise ValueError("A band needs a period of at least 1 unit")
    if BandMode(mode) is BandMode.STRICT:
        exact = round_half_up(estimated.days)
        return exact, exact
    finer_days = estimated.unit.finer.days if estimated.unit.finer else 0.0
    low = round_half_up(estimated.unit.days - finer_days)
    high = round_half_up(estimated.unit.days + finer_days)
    return estimated.value * low, estimated.value * high


def compute_measured_period(view, mode=BandMode.TOLERANT):
    """
    Average the gaps between consecutive anchored members of a series.

    Members are taken in the view's sequence order; skipped editions simply
    widen a gap.

    Raises:
        FewerThanTwoAnchorsError: fewer than two members carry a date.
    """
    anchored = [m for m in view.members if m in view.anchors]
    if len(anchored) < 2:
        raise FewerThanTwoAnchorsError(
            f"{view.series.value}: {len(anchored)} dated member(s), at least 2 are needed")

    gaps, mean_days = mean_gap([view.anchors[m] for m in anchored])
    measured_days = round_half_up(mean_days)

    estimated = view.estimated
    unit = estimated.unit if estimated else TimeUnit.DAY
    unit_term = estimated.unit_term if estimated else None
    measured = TimePeriod(max(0, round_half_up(mean_days / unit.days)), unit, unit_term)

    band, within = None, None
    if estimated is not None and estimated.value >= 1:
        band = period_band(estimated, mode)
        within = band[0] <= measured_days <= band[1]

    logger.debug("%s: gaps %s, mean %d days (%s)", view.series.value, gaps, measured_days, measured)
    return PeriodAssessment(measured_days, measured, within, band, gaps, estimated)


def next_scheduled(view, today):
    """
    Date the next member is expected: last dated member plus the estimated
    period, stepped forward by whole periods until it is not before today.

    The last member is the one flagged isTheLastSituation when it is dated,
    otherwise the latest dated member.
    """
    if not view.anchors:
        raise NoAnchorError(f"{view.series.value}: no member carries a start date")
    estimated = view.estimated
    if estimated is None or estimated.value < 1:
        raise NoEstimatedPeriodError(f"{view.series.value}: no usable estimated time period")

    if view.last_flagged is not None and view.last_flagged in view.anchors:
        last = view.anchors[view.last_flagged]
    else:
        last = max(view.anchors.values())

    # Always step from the anchor, so Feb 29 comes back in leap years.
    # Start from the whole periods that fit before today, then settle on the
    # smallest count that reaches it.
    try:
        times = max(1, int(days_between(last, today) // estimated.days))
        while times > 1 and last + estimated.offset(times - 1) >= today:
            times -= 1
        candidate = last + estimated.offset(times)
        while candidate < today:
            times += 1
            candidate = last + estimated.offset(times)
    except (OverflowError, ValueError) as e:
        raise DateOutOfRangeError(f"{view.series.value}: next date after {last} is out of range ({e})") from e
    return candidate


def measured_period_graph(series, assessment):
    """Triples asserting a measured period on the series (rss:hasMeasuredTimePeriod)."""
    period = Term.iri(f"{series.value}-measured-period")
    triples = [
        Triple(series, RSS.hasMeasuredTimePeriod, period),
        Triple(period, RDF.type, TP.TimePeriod),
        Triple(period, TP.timePeriodValue, Term.literal(assessment.measured.value, XSD.integer)),
    ]
    if assessment.measured.unit_term is not None:
        triples.append(Triple(period, TP.hasTimePeriodMeasurementUnit, assessment.measured.unit_term))
    return Graph(triples)
