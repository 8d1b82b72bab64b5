"""Word-spec parser.

Grammar (whitespace separates factors)::

    word    := term*
    term    := atom ('^' int)?
    atom    := SIDE ':' literal | 't' | '(' word ')' | 'identity'
    SIDE    := 'G' | 'H' | 'A'

``literal`` is an element name or index as accepted by the factor's parser;
it runs to the next whitespace or unmatched ``)``, so ``H:(13)`` and
``G:(5,1)`` are single letters.  ``A:x`` names an element of the
amalgamated subgroup by its image in G.  In an HNN extension every element
literal lives in the base group and the side tag may be omitted.
"""

from __future__ import annotations

from . import amalgam as am
from . import hnn as hn
from .errors import ConfigError


class WordSpecError(ConfigError):
    pass


class _Parser:
    def __init__(self, text: str, group):
        self.text = text
        self.pos = 0
        self.group = group
        self.is_hnn = isinstance(group, hn.HnnGroup)
        self.identity = group.word([])

    def error(self, msg):
        raise WordSpecError(f"word spec {self.text!r}, column {self.pos + 1}: {msg}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def word(self, closing: bool):
        out = self.identity
        while True:
            self.skip()
            c = self.peek()
            if not c:
                if closing:
                    self.error("missing ')'")
                return out
            if c == ")":
                if not closing:
                    self.error("unmatched ')'")
                return out
            out = out * self.term()

    def term(self):
        atom = self.atom()
        if self.peek() == "^":
            self.pos += 1
            start = self.pos
            if self.peek() in "+-":
                self.pos += 1
            while self.peek().isdigit():
                self.pos += 1
            try:
                k = int(self.text[start:self.pos])
            except ValueError:
                self.error("expected an integer exponent")
            atom = atom ** k
        return atom

    def literal(self) -> str:
        start, depth = self.pos, 0
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c.isspace() and depth == 0:
                break
            if c == "(":
                depth += 1
            elif c == ")":
                if depth == 0:
                    break
                depth -= 1
            self.pos += 1
        if depth:
            self.error("unbalanced parentheses in element literal")
        tok = self.text[start:self.pos]
        if not tok:
            self.error("empty element literal")
        return tok

    def atom(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.word(closing=True)
            self.pos += 1
            return inner
        if self.text.startswith("identity", self.pos):
            self.pos += len("identity")
            return self.identity
        if c == "t" and (self.pos + 1 >= len(self.text) or self.text[self.pos + 1] in " \t\n^)"):
            if not self.is_hnn:
                self.error("'t' only exists in an HNN extension")
            self.pos += 1
            return self.group.t
        if len(self.text) > self.pos + 1 and c in "GHA" and self.text[self.pos + 1] == ":":
            self.pos += 2
            return self.tagged(c, self.literal())
        if self.is_hnn:
            return self.tagged("G", self.literal())
        self.error("expected G:x, H:x, A:x, t or '('")

    def tagged(self, side: str, tok: str):
        P = self.group
        try:
            if self.is_hnn:
                if side != "G":
                    self.error(f"{side}: is not a letter of an HNN extension")
                return P.word([("G", P.base.parse(tok))])
            if side == "A":
                return P.a_element(P.factors[0].parse(tok))
            s = am.side_index(side)
            return P.word([(s, P.factors[s].parse(tok))])
        except WordSpecError:
            raise
        except ConfigError as exc:
            self.error(str(exc))


def parse_word(text: str, group):
    """Parse a word spec into a normal-form element of ``group``."""
    return _Parser(text.strip(), group).word(closing=False)
