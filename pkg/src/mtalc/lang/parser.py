"""Concrete syntax for problem files.

A file is a sequence of ';'-terminated statements: declarations first,
then axioms, then check directives. ``#`` starts a line comment.

    trole R;  tfeature f;  arole S;  afeature h;
    sfeature g;  cfeature v;
    primitive A temporal;  primitive B atemporal;
    define C temporal [eventuality] := <concept>;
    check sat <concept>;
    check subsume <concept> <concept>;

Concept syntax: ``top``, ``bot``, ``not C``, ``C and D``, ``C or D``
(``and`` binds tighter than ``or``), ``some R . C``, ``all R . C``, and
predicate restrictions ``some (f g)(g).{TPP,NTPP}`` (spatial, brace list
of atoms) or ``some (h v)(v).lt`` (aspatial, named domain predicate).
Chains are whitespace-separated feature names, tipped by a concrete
feature. Spatial predicates are binary under RCC8 and ternary under
CYC_t; the calculus is fixed per run.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from mtalc.algebra import cyct, rcc8
from mtalc.lang.ast import (
    Absent,
    AbsentValue,
    And,
    Axiom,
    Bot,
    Concept,
    DomainPredicate,
    Exists,
    FeatureChain,
    Forall,
    Name,
    Not,
    Or,
    Pred,
    Role,
    Signature,
    Sort,
    SpatialPredicate,
    TBox,
    Top,
    join_sorts,
    sort_of,
)

KEYWORDS = {
    "trole",
    "tfeature",
    "arole",
    "afeature",
    "sfeature",
    "cfeature",
    "primitive",
    "define",
    "check",
    "sat",
    "subsume",
    "temporal",
    "atemporal",
    "eventuality",
    "top",
    "bot",
    "not",
    "and",
    "or",
    "some",
    "all",
}

_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*|:=|[(){}.,;]|\S")


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class Directive:
    kind: str  # "sat" | "subsume"
    concepts: tuple[Concept, ...]
    line: int


@dataclass
class ParsedFile:
    signature: Signature
    tbox: TBox
    directives: list[Directive]


class LangError(Exception):
    """One or more positioned syntax/sort/arity errors."""

    def __init__(self, errors: list[tuple[int, int, str]]):
        self.errors = errors
        super().__init__("; ".join(f"{ln}:{col}: {msg}" for ln, col, msg in errors))


# Aspatial domain predicates known to the parser; the rational order domain.
RATIONAL_PREDICATES = {
    "top1": 1,
    "bot1": 1,
    "lt": 2,
    "le": 2,
    "eq": 2,
    "neq": 2,
    "ge": 2,
    "gt": 2,
}


def tokenize(text: str) -> list[Token]:
    tokens = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        for m in _TOKEN_RE.finditer(body):
            tokens.append(Token(m.group(), lineno, m.start() + 1))
    return tokens


class _Statement:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Optional[Token]:
        tok = self.peek()
        if tok is not None:
            self.pos += 1
        return tok

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)


class Parser:
    """Two-pass parser: headers collect the name environment, then bodies."""

    def __init__(self, text: str, calculus: str = "rcc8",
                 domain_predicates: Optional[dict[str, int]] = None):
        if calculus not in ("rcc8", "cyct"):
            raise ValueError(f"unknown calculus: {calculus!r}")
        self.calculus = calculus
        self.domain_predicates = (
            dict(RATIONAL_PREDICATES) if domain_predicates is None else dict(domain_predicates)
        )
        self.errors: list[tuple[int, int, str]] = []
        self.signature = Signature()
        # concept name -> (sort, defined)
        self.concepts: dict[str, tuple[Sort, bool]] = {}
        self.statements = self._split(tokenize(text))

    def _split(self, tokens: list[Token]) -> list[_Statement]:
        out, cur = [], []
        for tok in tokens:
            if tok.text == ";":
                if cur:
                    out.append(_Statement(cur))
                    cur = []
            else:
                cur.append(tok)
        if cur:
            self._error(cur[-1], "missing ';' after statement")
            out.append(_Statement(cur))
        return out

    def _error(self, tok: Optional[Token], msg: str) -> None:
        if tok is None:
            self.errors.append((0, 0, msg))
        else:
            self.errors.append((tok.line, tok.col, msg))

    def parse(self) -> ParsedFile:
        self._collect_headers()
        tbox_axioms: list[Axiom] = []
        directives: list[Directive] = []
        for stmt in self.statements:
            head = stmt.peek()
            if head is None:
                continue
            try:
                if head.text == "define":
                    ax = self._parse_axiom(stmt)
                    if ax is not None:
                        tbox_axioms.append(ax)
                elif head.text == "check":
                    d = self._parse_directive(stmt)
                    if d is not None:
                        directives.append(d)
                else:
                    self._parse_declaration(stmt)
            except _Abort:
                continue
        if self.errors:
            raise LangError(self.errors)
        return ParsedFile(self.signature, TBox(tbox_axioms), directives)

    # -- pass 1 -------------------------------------------------------

    def _collect_headers(self) -> None:
        for stmt in self.statements:
            toks = stmt.tokens
            if not toks:
                continue
            kind = toks[0].text
            if kind in ("primitive", "define") and len(toks) >= 3:
                name_tok, sort_tok = toks[1], toks[2]
                if name_tok.text in KEYWORDS or not name_tok.text[0].isalpha():
                    continue  # reported during the full parse
                if sort_tok.text not in ("temporal", "atemporal"):
                    continue
                sort = Sort.TEMPORAL if sort_tok.text == "temporal" else Sort.ATEMPORAL
                if name_tok.text in self.concepts or name_tok.text in self.signature.all_names():
                    self._error(name_tok, f"name declared twice: {name_tok.text!r}")
                    continue
                self.concepts[name_tok.text] = (sort, kind == "define")
                if sort is Sort.TEMPORAL:
                    self.signature.temporal_concepts.add(name_tok.text)
                else:
                    self.signature.atemporal_concepts.add(name_tok.text)
            elif kind in ("trole", "tfeature", "arole", "afeature", "sfeature", "cfeature"):
                if len(toks) < 2:
                    continue
                name_tok = toks[1]
                if name_tok.text in self.signature.all_names() or name_tok.text in self.concepts:
                    self._error(name_tok, f"name declared twice: {name_tok.text!r}")
                    continue
                target = {
                    "trole": self.signature.temporal_roles,
                    "tfeature": self.signature.temporal_features,
                    "arole": self.signature.atemporal_roles,
                    "afeature": self.signature.atemporal_features,
                    "sfeature": self.signature.spatial_features,
                    "cfeature": self.signature.aspatial_features,
                }[kind]
                target.add(name_tok.text)

    # -- pass 2 -------------------------------------------------------

    def _expect(self, stmt: _Statement, text: str) -> Token:
        tok = stmt.next()
        if tok is None or tok.text != text:
            self._error(tok or (stmt.tokens[-1] if stmt.tokens else None),
                        f"expected {text!r}" + (f", found {tok.text!r}" if tok else ""))
            raise _Abort()
        return tok

    def _expect_name(self, stmt: _Statement, what: str) -> Token:
        tok = stmt.next()
        if tok is None or tok.text in KEYWORDS or not tok.text[0].isalpha():
            self._error(tok, f"expected {what}")
            raise _Abort()
        return tok

    def _parse_declaration(self, stmt: _Statement) -> None:
        head = stmt.next()
        assert head is not None
        if head.text in ("trole", "tfeature", "arole", "afeature", "sfeature", "cfeature"):
            self._expect_name(stmt, "a name to declare")
        elif head.text == "primitive":
            self._expect_name(stmt, "a concept name")
            tok = stmt.next()
            if tok is None or tok.text not in ("temporal", "atemporal"):
                self._error(tok, "expected 'temporal' or 'atemporal'")
                raise _Abort()
        else:
            self._error(head, f"unknown statement: {head.text!r}")
            raise _Abort()
        if not stmt.at_end():
            self._error(stmt.peek(), "trailing tokens after declaration")

    def _parse_axiom(self, stmt: _Statement) -> Optional[Axiom]:
        self._expect(stmt, "define")
        name_tok = self._expect_name(stmt, "a defined concept name")
        sort_tok = stmt.next()
        if sort_tok is None or sort_tok.text not in ("temporal", "atemporal"):
            self._error(sort_tok, "expected 'temporal' or 'atemporal'")
            raise _Abort()
        sort = Sort.TEMPORAL if sort_tok.text == "temporal" else Sort.ATEMPORAL
        eventuality = False
        if stmt.peek() is not None and stmt.peek().text == "eventuality":
            stmt.next()
            eventuality = True
            if sort is not Sort.TEMPORAL:
                self._error(sort_tok, "eventuality flags apply to temporal concepts only")
        self._expect(stmt, ":=")
        body = self._parse_concept(stmt)
        if not stmt.at_end():
            self._error(stmt.peek(), "trailing tokens after axiom")
        if join_sorts(sort, sort_of(body)) is None:
            self._error(name_tok,
                        f"axiom sort mismatch: {name_tok.text} is {sort.value}, "
                        f"body is {sort_of(body).value}")
            return None
        return Axiom(name_tok.text, sort, eventuality, body)

    def _parse_directive(self, stmt: _Statement) -> Optional[Directive]:
        head = self._expect(stmt, "check")
        kind_tok = stmt.next()
        if kind_tok is None or kind_tok.text not in ("sat", "subsume"):
            self._error(kind_tok, "expected 'sat' or 'subsume'")
            raise _Abort()
        first = self._parse_concept(stmt)
        if kind_tok.text == "sat":
            concepts = (first,)
        else:
            second = self._parse_concept(stmt)
            if join_sorts(sort_of(first), sort_of(second)) is None:
                self._error(kind_tok, "subsumption needs concepts of one sort")
                raise _Abort()
            concepts = (first, second)
        if not stmt.at_end():
            self._error(stmt.peek(), "trailing tokens after directive")
        return Directive(kind_tok.text, concepts, head.line)

    # -- concepts -----------------------------------------------------

    def _parse_concept(self, stmt: _Statement) -> Concept:
        return self._parse_or(stmt)

    def _parse_or(self, stmt: _Statement) -> Concept:
        left = self._parse_and(stmt)
        while stmt.peek() is not None and stmt.peek().text == "or":
            op = stmt.next()
            right = self._parse_and(stmt)
            if join_sorts(sort_of(left), sort_of(right)) is None:
                self._error(op, "disjunction mixes atemporal and temporal concepts")
                raise _Abort()
            left = Or(left, right)
        return left

    def _parse_and(self, stmt: _Statement) -> Concept:
        left = self._parse_unary(stmt)
        while stmt.peek() is not None and stmt.peek().text == "and":
            op = stmt.next()
            right = self._parse_unary(stmt)
            if join_sorts(sort_of(left), sort_of(right)) is None:
                self._error(op, "conjunction mixes atemporal and temporal concepts")
                raise _Abort()
            left = And(left, right)
        return left

    def _parse_unary(self, stmt: _Statement) -> Concept:
        tok = stmt.peek()
        if tok is None:
            self._error(None, "unexpected end of statement in concept")
            raise _Abort()
        if tok.text == "not":
            stmt.next()
            return Not(self._parse_unary(stmt))
        if tok.text == "some":
            stmt.next()
            return self._parse_some(stmt, tok)
        if tok.text == "all":
            stmt.next()
            role = self._parse_role(stmt)
            self._expect(stmt, ".")
            arg = self._parse_unary(stmt)
            self._check_quantified(tok, role, arg)
            return Forall(role, arg)
        return self._parse_atom(stmt)

    def _parse_atom(self, stmt: _Statement) -> Concept:
        tok = stmt.next()
        assert tok is not None
        if tok.text == "top":
            return Top()
        if tok.text == "bot":
            return Bot()
        if tok.text == "(":
            inner = self._parse_concept(stmt)
            self._expect(stmt, ")")
            return inner
        if tok.text in KEYWORDS or not tok.text[0].isalpha():
            self._error(tok, f"expected a concept, found {tok.text!r}")
            raise _Abort()
        entry = self.concepts.get(tok.text)
        if entry is None:
            self._error(tok, f"unknown concept name: {tok.text!r}")
            raise _Abort()
        return Name(tok.text, entry[0])

    def _parse_role(self, stmt: _Statement) -> Role:
        tok = self._expect_name(stmt, "a role name")
        sig = self.signature
        if tok.text in sig.temporal_features:
            sig.used_temporal_features.add(tok.text)
            return Role(tok.text, temporal=True, feature=True)
        if tok.text in sig.temporal_roles:
            sig.used_temporal_roles.add(tok.text)
            return Role(tok.text, temporal=True, feature=False)
        if tok.text in sig.atemporal_features:
            return Role(tok.text, temporal=False, feature=True)
        if tok.text in sig.atemporal_roles:
            return Role(tok.text, temporal=False, feature=False)
        self._error(tok, f"unknown role name: {tok.text!r}")
        raise _Abort()

    def _check_quantified(self, tok: Token, role: Role, arg: Concept) -> None:
        arg_sort = sort_of(arg)
        if role.temporal:
            return  # temporal role over either sort (the mixed form is legal)
        if arg_sort is Sort.TEMPORAL:
            self._error(tok, "an atemporal role cannot quantify a temporal concept")
            raise _Abort()

    def _parse_some(self, stmt: _Statement, some_tok: Token) -> Concept:
        tok = stmt.peek()
        if tok is not None and tok.text == "(":
            return self._parse_pred(stmt, some_tok)
        role = self._parse_role(stmt)
        self._expect(stmt, ".")
        arg = self._parse_unary(stmt)
        self._check_quantified(some_tok, role, arg)
        return Exists(role, arg)

    def _parse_chain(self, stmt: _Statement) -> tuple[tuple[str, ...], str, bool, Token]:
        open_tok = self._expect(stmt, "(")
        names: list[Token] = []
        while stmt.peek() is not None and stmt.peek().text != ")":
            names.append(self._expect_name(stmt, "a feature name"))
        self._expect(stmt, ")")
        if not names:
            self._error(open_tok, "empty feature chain")
            raise _Abort()
        sig = self.signature
        tip = names[-1]
        if tip.text in sig.spatial_features:
            spatial = True
        elif tip.text in sig.aspatial_features:
            spatial = False
        else:
            self._error(tip, f"chain must end in a concrete feature: {tip.text!r}")
            raise _Abort()
        prefix = []
        for nt in names[:-1]:
            if spatial:
                if nt.text not in sig.temporal_features:
                    self._error(nt, f"spatial chains take temporal abstract features: {nt.text!r}")
                    raise _Abort()
                sig.used_temporal_features.add(nt.text)
            else:
                if nt.text not in sig.atemporal_features:
                    self._error(nt, f"aspatial chains take atemporal abstract features: {nt.text!r}")
                    raise _Abort()
            prefix.append(nt.text)
        return tuple(prefix), tip.text, spatial, open_tok

    def _parse_pred(self, stmt: _Statement, some_tok: Token) -> Concept:
        chains: list[FeatureChain] = []
        spatial: Optional[bool] = None
        while stmt.peek() is not None and stmt.peek().text == "(":
            prefix, tip, is_spatial, where = self._parse_chain(stmt)
            if spatial is None:
                spatial = is_spatial
            elif spatial != is_spatial:
                self._error(where, "cannot mix spatial and aspatial chains in one predicate")
                raise _Abort()
            chains.append(FeatureChain(prefix, tip, is_spatial))
        self._expect(stmt, ".")
        assert spatial is not None
        if spatial:
            brace = stmt.peek()
            if brace is None or brace.text != "{":
                self._error(brace, "spatial predicates are written as atom brace lists")
                raise _Abort()
            mask = self._parse_brace_list(stmt)
            arity = 2 if self.calculus == "rcc8" else 3
            if len(chains) != arity:
                self._error(some_tok,
                            f"{self.calculus} predicates take {arity} chains, got {len(chains)}")
                raise _Abort()
            if arity == 3 and len(set(chains)) != len(chains):
                self._error(some_tok, "duplicate feature chains in a ternary predicate")
                raise _Abort()
            return Pred(tuple(chains), SpatialPredicate(self.calculus, mask))
        pred_tok = self._expect_name(stmt, "an aspatial predicate name")
        arity = self.domain_predicates.get(pred_tok.text)
        if arity is None:
            self._error(pred_tok, f"unknown aspatial predicate: {pred_tok.text!r}")
            raise _Abort()
        if len(chains) != arity:
            self._error(pred_tok,
                        f"predicate {pred_tok.text!r} takes {arity} chains, got {len(chains)}")
            raise _Abort()
        return Pred(tuple(chains), DomainPredicate(pred_tok.text, arity))

    def _parse_brace_list(self, stmt: _Statement) -> int:
        self._expect(stmt, "{")
        mod = rcc8 if self.calculus == "rcc8" else cyct
        mask = 0
        first = True
        while True:
            tok = stmt.peek()
            if tok is None:
                self._error(tok, "unterminated atom list")
                raise _Abort()
            if tok.text == "}":
                stmt.next()
                return mask
            if not first:
                self._expect(stmt, ",")
            tok = self._expect_name(stmt, "an atom name")
            try:
                mask |= mod.relation(tok.text)
            except ValueError as exc:
                self._error(tok, str(exc))
                raise _Abort() from None
            first = False


class _Abort(Exception):
    """Statement-local bail-out; recovery continues at the next ';'."""


def parse(text: str, calculus: str = "rcc8",
          domain_predicates: Optional[dict[str, int]] = None) -> ParsedFile:
    """Parse a problem file into a signature, TBox and directives.

    Raises LangError carrying every positioned error found.
    """
    return Parser(text, calculus, domain_predicates).parse()
