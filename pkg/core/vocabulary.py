"""
Every IRI the Recurrent Situation Series pattern defines or reuses.

Other modules reference terms only through the classes below
(e.g. RSS.hasMemberSituation), never through raw IRI strings.
"""
from core.errors import UnknownPrefixError
from core.graph import XSD_STRING, Term

NAMESPACES = {
    "rss": "http://www.ontologydesignpatterns.org/cp/owl/recurrentsituationseries.owl#",
    "dul": "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#",
    "d0": "http://www.ontologydesignpatterns.org/ont/d0.owl#",
    "tp": "http://www.ontologydesignpatterns.org/cp/owl/timeperiod.owl#",
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "owl": "http://www.w3.org/2002/07/owl#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
}


def _ns(prefix):
    base = NAMESPACES[prefix]
    return lambda name: Term.iri(base + name)


_rss, _dul, _d0, _tp = _ns("rss"), _ns("dul"), _ns("d0"), _ns("tp")
_rdf, _rdfs, _owl, _xsd = _ns("rdf"), _ns("rdfs"), _ns("owl"), _ns("xsd")


class RSS:
    # classes
    RecurrentSituationSeries = _rss("RecurrentSituationSeries")
    Situation = _rss("Situation")
    UnifyingFactor = _rss("UnifyingFactor")
    UnifyingSituation = _rss("UnifyingSituation")
    TimePeriod = _rss("TimePeriod")

    # object properties
    hasMemberSituation = _rss("hasMemberSituation")
    isSituationMemberOf = _rss("isSituationMemberOf")
    hasUnifyingFactor = _rss("hasUnifyingFactor")
    involvesUnifyingFactor = _rss("involvesUnifyingFactor")
    isValidIn = _rss("isValidIn")
    hasNextSituation = _rss("hasNextSituation")
    hasPreviousSituation = _rss("hasPreviousSituation")
    hasImmediateNextSituation = _rss("hasImmediateNextSituation")
    hasImmediatePreviousSituation = _rss("hasImmediatePreviousSituation")
    hasTimePeriod = _rss("hasTimePeriod")
    hasEstimatedTimePeriod = _rss("hasEstimatedTimePeriod")
    hasMeasuredTimePeriod = _rss("hasMeasuredTimePeriod")
    hasTimePeriodBeforeNextSituation = _rss("hasTimePeriodBeforeNextSituation")
    isLocallyInconsistentWith = _rss("isLocallyInconsistentWith")

    # datatype properties
    isTheLastSituation = _rss("isTheLastSituation")
    situationNumber = _rss("situationNumber")

    # plumbing: series -> unifying situation, date anchors of members and intervals
    hasUnifyingSituation = _rss("hasUnifyingSituation")
    hasStartDate = _rss("hasStartDate")
    hasEndDate = _rss("hasEndDate")


class DUL:
    Collection = _dul("Collection")
    Concept = _dul("Concept")
    Description = _dul("Description")
    TimeInterval = _dul("TimeInterval")
    defines = _dul("defines")
    isSatisfiedBy = _dul("isSatisfiedBy")
    satisfies = _dul("satisfies")
    classifies = _dul("classifies")
    hasPart = _dul("hasPart")
    hasTimeInterval = _dul("hasTimeInterval")


class D0:
    Eventuality = _d0("Eventuality")


class TP:
    TimePeriod = _tp("TimePeriod")
    TimePeriodMeasurementUnit = _tp("TimePeriodMeasurementUnit")
    hasTimePeriodMeasurementUnit = _tp("hasTimePeriodMeasurementUnit")
    timePeriodValue = _tp("timePeriodValue")


class RDF:
    type = _rdf("type")


class RDFS:
    subClassOf = _rdfs("subClassOf")


class OWL:
    sameAs = _owl("sameAs")


class XSD:
    string = Term.iri(XSD_STRING)
    boolean = _xsd("boolean")
    integer = _xsd("integer")
    decimal = _xsd("decimal")
    date = _xsd("date")


def all_terms():
    """Every vocabulary constant, as (qualified name, Term) pairs."""
    found = []
    for holder in (RSS, DUL, D0, TP, RDF, RDFS, OWL, XSD):
        for name, value in vars(holder).items():
            if isinstance(value, Term):
                found.append((f"{holder.__name__}.{name}", value))
    return found


def resolve_curie(prefixed):
    """
    Expand a prefixed name ("rss:hasMemberSituation") to an IRI term.

    Raises:
        UnknownPrefixError: the prefix is not a registered namespace.
    """
    prefix, sep, local = prefixed.partition(":")
    if not sep or prefix not in NAMESPACES:
        raise UnknownPrefixError(f"Unknown prefix in {prefixed!r}")
    return Term.iri(NAMESPACES[prefix] + local)
