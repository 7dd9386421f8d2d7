"""
The plain-text bivector format read by the command line.

One directive per line, "#" starts a comment:

    dim 3
    param R
    theta 1 2 R*x3
    theta 1 3 -R*x2
    theta 2 3 R*x1

Indices are 1-based. Only pairs that are listed are nonzero and the (j, i)
entry is the negation of the (i, j) entry. Declarations may come in any
order, but every identifier an expression uses must be x<k> with
1 <= k <= dim or a declared parameter.

Expressions follow

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := rational | ident | '(' expr ')' | '-' atom
    rational := int ('/' uint)?
"""
import re
from dataclasses import dataclass

from sympy import Rational

from poly import Poly, StructuralError, VarSet, render
from realization import Bivector

__all__ = ["BivectorFileError", "parse_bivector_file", "render_bivector_file"]

TOKEN_PATTERN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<symbol>[-+*/^()]))")
COORDINATE_PATTERN = re.compile(r"x(\d+)")


class BivectorFileError(ValueError):
    """ A bivector file could not be read.

    Attributes:
        line (int): 1-based line of the error.
        column (int): 1-based column, 1 when the whole line is at fault.
    """

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    column: int


def _tokenize(text: str, line: int, offset: int) -> list[_Token]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = TOKEN_PATTERN.match(text, position)
        if match is None:
            bad = len(text) - len(text[position:].lstrip())
            raise BivectorFileError(f"unexpected character {text[bad]!r}", line, offset + bad + 1)
        kind = match.lastgroup
        tokens.append(_Token(kind, match.group(kind), offset + match.start(kind) + 1))
        position = match.end()
    tokens.append(_Token("end", "", offset + len(text) + 1))
    return tokens


class _ExpressionParser:
    """ Recursive descent over the tokens of one theta expression. """

    def __init__(self, tokens: list[_Token], varset: VarSet, line: int):
        self.tokens = tokens
        self.varset = varset
        self.line = line
        self.position = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.position]

    def fail(self, message: str, token: _Token | None = None):
        token = token or self.current
        raise BivectorFileError(message, self.line, token.column)

    def advance(self) -> _Token:
        token = self.current
        self.position += 1
        return token

    def accept(self, symbol: str) -> bool:
        if self.current.kind == "symbol" and self.current.text == symbol:
            self.advance()
            return True
        return False

    def expect_uint(self, after: str) -> int:
        if self.current.kind != "number":
            self.fail(f"expected an unsigned integer after {after!r}")
        return int(self.advance().text)

    def parse(self) -> Poly:
        if self.current.kind == "end":
            self.fail("missing expression")
        value = self.expr()
        if self.current.kind != "end":
            self.fail(f"unexpected {self.current.text!r}")
        return value

    def expr(self) -> Poly:
        value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> Poly:
        value = self.factor()
        while self.accept("*"):
            value = value * self.factor()
        return value

    def factor(self) -> Poly:
        value = self.atom()
        if self.accept("^"):
            value = value ** self.expect_uint("^")
        return value

    def atom(self) -> Poly:
        token = self.current
        if self.accept("-"):
            return -self.atom()
        if self.accept("("):
            value = self.expr()
            if not self.accept(")"):
                self.fail("expected ')'")
            return value
        if token.kind == "number":
            self.advance()
            numerator = int(token.text)
            if self.accept("/"):
                denominator = self.expect_uint("/")
                if denominator == 0:
                    self.fail("division by zero", token)
                return self.varset.constant(Rational(numerator, denominator))
            return self.varset.constant(numerator)
        if token.kind == "ident":
            self.advance()
            return self.identifier(token)
        if token.kind == "end":
            self.fail("unexpected end of expression")
        self.fail(f"unexpected {token.text!r}")

    def identifier(self, token: _Token) -> Poly:
        match = COORDINATE_PATTERN.fullmatch(token.text)
        if match:
            k = int(match.group(1))
            if not 1 <= k <= self.varset.dim:
                self.fail(f"coordinate {token.text} is out of range 1..{self.varset.dim}", token)
            return self.varset.y(k - 1)
        if token.text in self.varset.params:
            return self.varset.param(token.text)
        self.fail(f"undeclared identifier {token.text!r}", token)


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def parse_bivector_file(text: str) -> Bivector:
    """ Reads a bivector from its file form.

    Args:
        text (str): The file contents.

    Returns:
        Bivector: Theta with the listed entries, zero elsewhere.

    Raises:
        BivectorFileError: On a syntax error, an unknown directive, a missing
            or repeated dim, an undeclared identifier, an index out of range,
            a diagonal entry or a pair given twice.

    Examples:
        >>> theta = parse_bivector_file("dim 2\\ntheta 1 2 x1")
        >>> theta.render()
        [{'lead': [1, 2], 'poly': 'x1'}]
    """
    dim = None
    params = []
    entries = []
    seen = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        words = line.split(None, 1)
        directive = words[0]
        column = len(line) - len(line.lstrip()) + 1
        rest = words[1] if len(words) > 1 else ""
        if directive == "dim":
            if dim is not None:
                raise BivectorFileError("dim is declared twice", number, column)
            if not re.fullmatch(r"\s*[1-9]\d*\s*", rest):
                raise BivectorFileError("dim needs a positive integer", number, column)
            dim = int(rest)
        elif directive == "param":
            name = rest.strip()
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise BivectorFileError(f"invalid parameter name {name!r}", number, column)
            if name in params:
                raise BivectorFileError(f"parameter {name!r} is declared twice", number, column)
            try:
                VarSet(1, (name,))
            except StructuralError as error:
                raise BivectorFileError(str(error), number, column) from error
            params.append(name)
        elif directive == "theta":
            match = re.match(r"(\s*)(\d+)\s+(\d+)\s+", rest)
            if match is None:
                raise BivectorFileError("expected 'theta i j <expr>'", number, column)
            i, j = int(match.group(2)), int(match.group(3))
            if i == j:
                raise BivectorFileError(f"diagonal entry ({i}, {j}) is not allowed", number, column)
            pair = (min(i, j), max(i, j))
            if pair in seen:
                raise BivectorFileError(
                    f"pair ({pair[0]}, {pair[1]}) already given on line {seen[pair]}", number, column)
            seen[pair] = number
            offset = line.index(rest) + match.end()
            entries.append((number, column, i, j, line[offset:], offset))
        else:
            raise BivectorFileError(f"unknown directive {directive!r}", number, column)

    if dim is None:
        raise BivectorFileError("missing 'dim' declaration", 1)
    varset = VarSet(dim, tuple(params))

    values = {}
    for number, column, i, j, expression, offset in entries:
        for index in (i, j):
            if not 1 <= index <= dim:
                raise BivectorFileError(f"index {index} is out of range 1..{dim}", number, column)
        parser = _ExpressionParser(_tokenize(expression, number, offset), varset, number)
        values[(i - 1, j - 1)] = parser.parse()
    return Bivector.from_entries(varset, values)


def render_bivector_file(theta: Bivector) -> str:
    """ Writes a bivector in the file form read by parse_bivector_file.

    Args:
        theta (Bivector): The bivector.

    Returns:
        str: The file text, one theta line per nonzero entry above the diagonal.
    """
    varset = theta.varset
    lines = [f"dim {varset.dim}"]
    lines += [f"param {name}" for name in varset.params]
    for i in range(varset.dim):
        for j in range(i + 1, varset.dim):
            if theta(i, j):
                lines.append(f"theta {i + 1} {j + 1} {render(theta(i, j), varset, 'doubled')}")
    return "\n".join(lines) + "\n"
