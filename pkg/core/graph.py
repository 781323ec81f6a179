import logging
import re
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional

logger = logging.getLogger(__name__)

# Default datatype of a plain literal
XSD_STRING = "http://www.w3.org/2001/XMLSchema#string"

_ABSOLUTE_IRI = re.compile(r'^[A-Za-z][A-Za-z0-9+.\-]*:[^\s<>"{}|\\^`]*$')
_EMPTY = frozenset()


class TermKind(str, Enum):
    IRI = "iri"
    BLANK = "blank-node"
    LITERAL = "literal"


_KIND_ORDER = {TermKind.IRI: 0, TermKind.BLANK: 1, TermKind.LITERAL: 2}


def is_absolute_iri(value):
    return bool(_ABSOLUTE_IRI.match(value))


@dataclass(frozen=True)
class Term:
    """
    An RDF term: IRI, blank node or literal.

    Literal equality is term equality (lexical form + datatype/language),
    so "01"^^xsd:integer and "1"^^xsd:integer are different terms.
    """
    kind: TermKind
    value: str
    datatype: Optional[str] = None
    language: Optional[str] = None

    def __post_init__(self):
        if self.kind is TermKind.IRI:
            if not is_absolute_iri(self.value):
                raise ValueError(f"Not an absolute IRI: {self.value!r}")
            if self.datatype or self.language:
                raise ValueError("IRIs carry no datatype or language")
        elif self.kind is TermKind.BLANK:
            if not self.value:
                raise ValueError("Blank node label must not be empty")
            if self.datatype or self.language:
                raise ValueError("Blank nodes carry no datatype or language")
        else:
            if self.datatype and self.language:
                raise ValueError("A literal has either a datatype or a language tag, not both")
            if self.language:
                object.__setattr__(self, "language", self.language.lower())
            elif not self.datatype:
                object.__setattr__(self, "datatype", XSD_STRING)

    @classmethod
    def iri(cls, value):
        return cls(TermKind.IRI, value)

    @classmethod
    def blank(cls, label):
        return cls(TermKind.BLANK, label)

    @classmethod
    def literal(cls, value, datatype=None, language=None):
        if isinstance(datatype, Term):
            datatype = datatype.value
        return cls(TermKind.LITERAL, str(value), datatype, language)

    @property
    def is_iri(self):
        return self.kind is TermKind.IRI

    @property
    def is_blank(self):
        return self.kind is TermKind.BLANK

    @property
    def is_literal(self):
        return self.kind is TermKind.LITERAL

    @property
    def local_name(self):
        """Part of an IRI after the last '#' or '/'."""
        return re.split(r"[#/]", self.value)[-1]

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.value, self.datatype or "", self.language or "")

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if self.is_iri:
            return f"<{self.value}>"
        if self.is_blank:
            return f"_:{self.value}"
        if self.language:
            return f'"{self.value}"@{self.language}'
        if self.datatype == XSD_STRING:
            return f'"{self.value}"'
        return f'"{self.value}"^^<{self.datatype}>'


@dataclass(frozen=True)
class Triple:
    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self):
        if self.subject.is_literal:
            raise ValueError(f"Literal in subject position: {self.subject}")
        if not self.predicate.is_iri:
            raise ValueError(f"Predicate must be an IRI: {self.predicate}")

    def __iter__(self):
        yield self.subject
        yield self.predicate
        yield self.object

    def sort_key(self):
        return (self.subject.sort_key(), self.predicate.sort_key(), self.object.sort_key())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return f"{self.subject} {self.predicate} {self.object} ."


class Graph:
    def __init__(self, triples: Iterable[Triple] = (), prefixes: Optional[Mapping[str, str]] = None):
        """
        Build an immutable, indexed set of triples.

        Args:
            triples: Triples to store. Duplicates collapse (set semantics).
            prefixes (dict): prefix -> namespace IRI, kept for serialization.
        """
        self._triples = frozenset(triples)
        self.prefixes = MappingProxyType(dict(prefixes or {}))
        self._build_indexes()

    def _build_indexes(self):
        by_s, by_p, by_o = defaultdict(set), defaultdict(set), defaultdict(set)
        by_sp, by_po = defaultdict(set), defaultdict(set)
        for t in self._triples:
            s, p, o = t
            by_s[s].add(t)
            by_p[p].add(t)
            by_o[o].add(t)
            by_sp[(s, p)].add(t)
            by_po[(p, o)].add(t)

        freeze = lambda index: {key: frozenset(value) for key, value in index.items()}
        self._by_s = freeze(by_s)
        self._by_p = freeze(by_p)
        self._by_o = freeze(by_o)
        self._by_sp = freeze(by_sp)
        self._by_po = freeze(by_po)

    # --- set protocol ---

    def __len__(self):
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, triple):
        return triple in self._triples

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __hash__(self):
        return hash(self._triples)

    def __repr__(self):
        return f"<Graph: {len(self)} triples, {len(self.prefixes)} prefixes>"

    @property
    def triples(self):
        return self._triples

    def sorted_triples(self):
        return sorted(self._triples, key=Triple.sort_key)

    # --- lookups ---

    def match(self, s: Optional[Term] = None, p: Optional[Term] = None, o: Optional[Term] = None):
        """
        Return the triples matching every bound position (None is a wildcard).
        The narrowest available index is used.
        """
        if s is not None and p is not None:
            candidates = self._by_sp.get((s, p), _EMPTY)
            if o is None:
                return candidates
            return frozenset(t for t in candidates if t.object == o)
        if p is not None and o is not None:
            return self._by_po.get((p, o), _EMPTY)
        if s is not None and o is not None:
            by_s = self._by_s.get(s, _EMPTY)
            by_o = self._by_o.get(o, _EMPTY)
            return by_s & by_o
        if s is not None:
            return self._by_s.get(s, _EMPTY)
        if p is not None:
            return self._by_p.get(p, _EMPTY)
        if o is not None:
            return self._by_o.get(o, _EMPTY)
        return self._triples

    def has(self, s, p, o):
        return bool(self.match(s, p, o))

    def objects(self, s, p):
        return frozenset(t.object for t in self.match(s, p, None))

    def subjects(self, p, o):
        return frozenset(t.subject for t in self.match(None, p, o))

    def value(self, s, p):
        """First object of (s, p) in term order, or None."""
        found = self.objects(s, p)
        return min(found, key=Term.sort_key) if found else None

    def terms(self):
        """Every term in subject or object position."""
        return frozenset(self._by_s) | frozenset(self._by_o)

    # --- construction ---

    def union(self, triples: Iterable[Triple]):
        return Graph(self._triples.union(triples), self.prefixes)

    def with_prefixes(self, prefixes: Mapping[str, str]):
        merged = dict(prefixes)
        merged.update(self.prefixes)
        return Graph(self._triples, merged)


def merge_graphs(a: Graph, b: Graph) -> Graph:
    """
    Set union of two graphs. Prefixes of `a` win on conflict.

    Blank nodes from different documents never collide: the Turtle reader
    scopes every label to its source document.
    """
    prefixes = dict(b.prefixes)
    prefixes.update(a.prefixes)
    merged = Graph(a.triples | b.triples, prefixes)
    logger.debug("Merged %d + %d triples into %d", len(a), len(b), len(merged))
    return merged
