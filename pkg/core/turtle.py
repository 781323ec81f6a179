"""
Reader and writer for the Turtle subset used by the pattern datasets.

Supported: @prefix, prefixed names, absolute <IRIs>, the `a` keyword,
typed and language-tagged literals, numeric/boolean shorthand literals,
_:labels, predicate lists (;), object lists (,) and # comments.
Not supported: @base, collections, [ ] blank nodes, long strings.
"""
import hashlib
import logging
import os
import re
from collections import namedtuple
from itertools import groupby

from core.errors import RelativeIRIError, TurtleSyntaxError, UnknownPrefixError
from core.graph import XSD_STRING, Graph, Term, Triple, is_absolute_iri
from core.vocabulary import RDF, XSD

logger = logging.getLogger(__name__)

Token = namedtuple("Token", "kind text line column")

_TOKEN_SPEC = [
    ("WS", r"[ \t\r\n]+"),
    ("COMMENT", r"#[^\n]*"),
    ("PREFIX", r"@prefix\b"),
    ("BASE", r"@base\b"),
    ("LANGTAG", r"@[A-Za-z]+(?:-[A-Za-z0-9]+)*"),
    ("IRIREF", r"<[^<>\"{}|^`\\\x00-\x20]*>"),
    ("STRING", r'"(?:[^"\\\n\r]|\\.)*"' + r"|'(?:[^'\\\n\r]|\\.)*'"),
    ("DTYPE", r"\^\^"),
    ("BLANK", r"_:[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?"),
    ("PNAME", r"(?:[A-Za-z](?:[\w.\-]*[\w\-])?)?:(?:[\w\-:%](?:[\w.\-:%]*[\w\-:%])?)?"),
    ("NUMBER", r"[+-]?(?:\d+\.\d+|\.\d+|\d+)(?:[eE][+-]?\d+)?"),
    ("BOOLEAN", r"(?:true|false)\b"),
    ("A", r"a\b"),
    ("PUNCT", r"[.;,]"),
    ("BAD", r"\S+"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC))

_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_ESCAPE_RE = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8}|.)")

_XSD_DOUBLE = "http://www.w3.org/2001/XMLSchema#double"

# Local names the writer is willing to emit as prefixed names
_SAFE_LOCAL = re.compile(r"^(?:[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?)?$")


def _tokenize(text):
    tokens = []
    line, line_start = 1, 0
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        value = m.group()
        column = m.start() - line_start + 1
        if kind == "BAD":
            raise TurtleSyntaxError("Unexpected token", line, column, value)
        if kind not in ("WS", "COMMENT"):
            tokens.append(Token(kind, value, line, column))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + value.rfind("\n") + 1
    tokens.append(Token("EOF", "", line, len(text) - line_start + 1))
    return tokens


def _unescape(raw, token):
    def replace(m):
        code = m.group(1)
        if code[0] in "uU" and len(code) > 1:
            return chr(int(code[1:], 16))
        if code in _ESCAPES:
            return _ESCAPES[code]
        raise TurtleSyntaxError(f"Invalid escape \\{code}", token.line, token.column, token.text)

    return _ESCAPE_RE.sub(replace, raw)


class TurtleParser:
    def __init__(self, text, scope=None):
        """
        Args:
            text (str): The Turtle document.
            scope (str): Blank node label scope. Defaults to a digest of the
                document, so separate documents never share blank nodes while
                the same document always yields the same labels.
        """
        self.text = text
        self.scope = scope if scope is not None else hashlib.sha1(text.encode("utf-8")).hexdigest()[:8]
        self.tokens = _tokenize(text)
        self.pos = 0
        self.prefixes = {}
        self.triples = []

    def parse(self):
        while self._peek().kind != "EOF":
            if self._peek().kind == "PREFIX":
                self._directive()
            elif self._peek().kind == "BASE":
                self._fail("Base IRIs are not supported")
            else:
                self._triples_statement()
        logger.debug("Parsed %d triples, %d prefixes", len(self.triples), len(self.prefixes))
        return Graph(self.triples, self.prefixes)

    # --- token helpers ---

    def _peek(self):
        return self.tokens[self.pos]

    def _next(self):
        token = self.tokens[self.pos]
        if token.kind != "EOF":
            self.pos += 1
        return token

    def _fail(self, message, token=None, error=TurtleSyntaxError):
        token = token or self._peek()
        raise error(message, token.line, token.column, token.text or "<end of input>")

    def _expect_punct(self, char):
        token = self._next()
        if token.kind != "PUNCT" or token.text != char:
            self._fail(f"Expected '{char}'", token)
        return token

    # --- grammar ---

    def _directive(self):
        self._next()
        name = self._next()
        if name.kind != "PNAME" or not name.text.endswith(":") or name.text.count(":") != 1:
            self._fail("Expected a prefix name such as 'ex:'", name)
        namespace = self._iriref(self._next())
        self.prefixes[name.text[:-1]] = namespace.value
        self._expect_punct(".")

    def _triples_statement(self):
        subject = self._subject()
        self._predicate_object_list(subject)
        self._expect_punct(".")

    def _predicate_object_list(self, subject):
        while True:
            predicate = self._verb()
            self._object_list(subject, predicate)
            if self._peek().kind == "PUNCT" and self._peek().text == ";":
                # Repeated or trailing semicolons are allowed
                while self._peek().kind == "PUNCT" and self._peek().text == ";":
                    self._next()
                if self._peek().kind == "PUNCT" and self._peek().text == ".":
                    return
                continue
            return

    def _object_list(self, subject, predicate):
        self.triples.append(Triple(subject, predicate, self._object()))
        while self._peek().kind == "PUNCT" and self._peek().text == ",":
            self._next()
            self.triples.append(Triple(subject, predicate, self._object()))

    def _subject(self):
        token = self._next()
        if token.kind in ("IRIREF", "PNAME"):
            return self._iri(token)
        if token.kind == "BLANK":
            return self._blank(token)
        self._fail("Expected a subject (IRI or blank node)", token)

    def _verb(self):
        token = self._next()
        if token.kind == "A":
            return RDF.type
        if token.kind in ("IRIREF", "PNAME"):
            return self._iri(token)
        self._fail("Expected a predicate IRI or 'a'", token)

    def _object(self):
        token = self._next()
        if token.kind in ("IRIREF", "PNAME"):
            return self._iri(token)
        if token.kind == "BLANK":
            return self._blank(token)
        if token.kind == "STRING":
            return self._literal(token)
        if token.kind == "NUMBER":
            if re.search(r"[eE]", token.text):
                return Term.literal(token.text, _XSD_DOUBLE)
            if "." in token.text:
                return Term.literal(token.text, XSD.decimal)
            return Term.literal(token.text, XSD.integer)
        if token.kind == "BOOLEAN":
            return Term.literal(token.text, XSD.boolean)
        self._fail("Expected an object (IRI, blank node or literal)", token)

    def _literal(self, token):
        lexical = _unescape(token.text[1:-1], token)
        following = self._peek()
        if following.kind == "LANGTAG":
            self._next()
            return Term.literal(lexical, language=following.text[1:])
        if following.kind == "DTYPE":
            self._next()
            datatype_token = self._next()
            if datatype_token.kind not in ("IRIREF", "PNAME"):
                self._fail("Expected a datatype IRI after '^^'", datatype_token)
            return Term.literal(lexical, self._iri(datatype_token))
        return Term.literal(lexical)

    def _iri(self, token):
        if token.kind == "IRIREF":
            return self._iriref(token)
        prefix, _, local = token.text.partition(":")
        if prefix not in self.prefixes:
            self._fail(f"Unknown prefix '{prefix}:'", token, UnknownPrefixError)
        return Term.iri(self.prefixes[prefix] + local)

    def _iriref(self, token):
        if token.kind != "IRIREF":
            self._fail("Expected an IRI in angle brackets", token)
        value = _unescape(token.text[1:-1], token)
        if not is_absolute_iri(value):
            self._fail("Relative IRIs are not supported", token, RelativeIRIError)
        return Term.iri(value)

    def _blank(self, token):
        return Term.blank(f"{self.scope}_{token.text[2:]}")


def parse_turtle(text, scope=None):
    """Parse a Turtle (or N-Triples) document into a Graph."""
    return TurtleParser(text, scope).parse()


def load_turtle(path):
    """
    Parse a Turtle file. Blank nodes are scoped by the absolute path and the
    content, so two files never share one, while loading a file twice does.
    """
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    source = f"{os.path.abspath(path)}\n{text}"
    return parse_turtle(text, hashlib.sha1(source.encode("utf-8")).hexdigest()[:8])


# --- writer ---

def _escape(lexical):
    return (lexical.replace("\\", "\\\\").replace('"', '\\"')
            .replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t"))


class TurtleWriter:
    def __init__(self, graph, prefixes=None):
        self.graph = graph
        self.prefixes = dict(graph.prefixes)
        self.prefixes.update(prefixes or {})
        # Longest namespace first, so nested namespaces compact correctly
        self._by_length = sorted(self.prefixes.items(), key=lambda item: (-len(item[1]), item[0]))
        self._blank_labels = {}

    def write(self):
        lines = [f"@prefix {prefix}: <{namespace}> ." for prefix, namespace in sorted(self.prefixes.items())]
        triples = self.graph.sorted_triples()
        self._label_blank_nodes(triples)
        if lines and triples:
            lines.append("")

        for subject, group in groupby(triples, key=lambda t: t.subject):
            statements = []
            for predicate, same_predicate in groupby(group, key=lambda t: t.predicate):
                objects = ", ".join(self._term(t.object) for t in same_predicate)
                verb = "a" if predicate == RDF.type else self._term(predicate)
                statements.append(f"    {verb} {objects}")
            lines.append(self._term(subject))
            lines.append(" ;\n".join(statements) + " .")
            lines.append("")

        if not lines:
            return ""
        return "\n".join(lines).rstrip("\n") + "\n"

    def _label_blank_nodes(self, triples):
        for t in triples:
            for term in (t.subject, t.object):
                if term.is_blank and term not in self._blank_labels:
                    self._blank_labels[term] = f"b{len(self._blank_labels)}"

    def _compact(self, iri):
        for prefix, namespace in self._by_length:
            if iri.startswith(namespace) and _SAFE_LOCAL.match(iri[len(namespace):]):
                return f"{prefix}:{iri[len(namespace):]}"
        return f"<{iri}>"

    def _term(self, term):
        if term.is_iri:
            return self._compact(term.value)
        if term.is_blank:
            return f"_:{self._blank_labels[term]}"
        text = f'"{_escape(term.value)}"'
        if term.language:
            return f"{text}@{term.language}"
        if term.datatype == XSD_STRING:
            return text
        return f"{text}^^{self._compact(term.datatype)}"


def serialize_turtle(graph, prefixes=None):
    """
    Write a graph as Turtle, deterministically: subjects, predicates and
    objects sorted in term order, blank nodes relabelled b0, b1, ...
    """
    return TurtleWriter(graph, prefixes).write()
