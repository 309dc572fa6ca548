"""Expression grammar shared by the CLI and the report printers.

Element syntax, whitespace-insensitive:

    crossed monomials   [f]U^n          e.g.  [delta(0)]U^1 + [one]U^-1
    root generators     X[n](f)         e.g.  X[1](delta(0)) + 2*X[0](one)
    basis symbols       Y[k,n]          cyclic index k, any integer
                        Y[(k1,k2),n]    torus frequency vector
    central generator   c
    functions           delta(k), chi(k), one, z^k, z1^a*z2^b
    scalars             3/2, z4^2 (a root of unity), q^-1, q1^2

    sums with + and -, scalar prefixes with *, parentheses, and the bracket
    operation [a, b] (nesting allowed).

Name resolution is space-aware: on torus:d the names z, z1..zd are coordinate
functions and q, q1..qd the rotation parameters, while zM with M > d is the
root of unity of order M; on finite spaces zM is always the root of unity.

The parser is a single-pass typed recursive descent: every subexpression
carries one of the kinds scalar / fn / crossed / root / char / central, and
kind conflicts (mixing presentations, bracketing a function, multiplying two
elements) surface as positioned diagnostics.  render() produces the canonical
form: grades ascending, indices ascending, frequencies lexicographic, the
central term last; parsing a canonical rendering reproduces the element
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .crossed import LieElem, bracket_extended
from .errors import LiedynError, ParseError
from .funcspace import FnElem, Space, fn_mul
from .rootform import RootElem, bracket_root
from .scalars import Cyclotomic, LaurentScalar, demote, euler_phi, is_zero
from .spectrum import CharBasisElem, bracket_y

_ELEMS = ("crossed", "root", "char")


@dataclass
class Token:
    kind: str  # NUM, IDENT, SYM, EOF
    value: object
    line: int
    col: int


def _describe(tok: "Token") -> str:
    return "end of input" if tok.kind == "EOF" else repr(tok.value)


def _lex(text: str):
    tokens = []
    line, col, i = 1, 1, 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("NUM", int(text[i:j]), line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and text[j].isalnum():
                j += 1
            tokens.append(Token("IDENT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in "+-*/^()[],":
            tokens.append(Token("SYM", ch, line, col))
            col += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", None, line, col))
    return tokens


@dataclass
class Expr:
    """A parsed expression: the tree plus its inferred kind."""

    tree: tuple
    kind: str
    space: Space


class _Parser:
    def __init__(self, text: str, space: Space):
        self.tokens = _lex(text)
        self.pos = 0
        self.space = space

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message, tok=None, expected=()):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col, expected)

    def expect_sym(self, ch):
        tok = self.next()
        if tok.kind != "SYM" or tok.value != ch:
            self.error(f"found {_describe(tok)}", tok, (repr(ch),))
        return tok

    def signed_int(self) -> int:
        sign = 1
        if self.peek().kind == "SYM" and self.peek().value == "-":
            self.next()
            sign = -1
        tok = self.next()
        if tok.kind != "NUM":
            self.error("expected an integer", tok, ("integer",))
        return sign * tok.value

    # -- kind unification --------------------------------------------------

    def unify_add(self, k1, k2, tok):
        if k1 == k2:
            return k1
        if k1 == "central" and k2 in _ELEMS:
            return k2
        if k2 == "central" and k1 in _ELEMS:
            return k1
        self.error(f"cannot combine {k1} and {k2} terms", tok, ())

    def unify_mul(self, k1, k2, tok):
        if k1 == "scalar":
            return k2
        if k2 == "scalar":
            return k1
        if k1 == k2 == "fn":
            return "fn"
        self.error(f"cannot multiply {k1} by {k2}", tok, ("scalar factor",))

    def unify_bracket(self, k1, k2, tok):
        for k in (k1, k2):
            if k not in _ELEMS and k != "central":
                self.error(f"cannot bracket a {k}", tok, ())
        if k1 == k2 == "central":
            return "central"
        return self.unify_add(k1, k2, tok)

    # -- grammar -----------------------------------------------------------

    def parse(self):
        tree, kind = self.expr()
        tok = self.peek()
        if tok.kind != "EOF":
            self.error("trailing input", tok, ("end of expression",))
        return tree, kind

    def expr(self):
        tok = self.peek()
        if tok.kind == "SYM" and tok.value == "-":
            self.next()
            node, kind = self.term()
            node = ("neg", node)
        else:
            node, kind = self.term()
        while self.peek().kind == "SYM" and self.peek().value in "+-":
            op = self.next()
            rhs, rkind = self.term()
            kind = self.unify_add(kind, rkind, op)
            node = ("add" if op.value == "+" else "sub", node, rhs)
        return node, kind

    def term(self):
        node, kind = self.factor()
        while self.peek().kind == "SYM" and self.peek().value == "*":
            op = self.next()
            rhs, rkind = self.factor()
            kind = self.unify_mul(kind, rkind, op)
            node = ("mul", node, rhs)
        return node, kind

    def factor(self):
        node, kind = self.primary()
        if self.peek().kind == "SYM" and self.peek().value == "^":
            op = self.next()
            power = self.signed_int()
            if kind not in ("scalar", "fn"):
                self.error(f"cannot raise a {kind} to a power", op, ())
            node = ("pow", node, power)
        return node, kind

    def primary(self):
        tok = self.peek()
        if tok.kind == "NUM":
            self.next()
            value = Fraction(tok.value)
            if self.peek().kind == "SYM" and self.peek().value == "/":
                self.next()
                den = self.next()
                if den.kind != "NUM":
                    self.error("expected a denominator", den, ("integer",))
                if den.value == 0:
                    self.error("division by zero", den, ())
                value = Fraction(tok.value, den.value)
            return ("num", value), "scalar"
        if tok.kind == "SYM" and tok.value == "(":
            self.next()
            node, kind = self.expr()
            self.expect_sym(")")
            return node, kind
        if tok.kind == "SYM" and tok.value == "[":
            return self.bracket_or_crossed()
        if tok.kind == "IDENT":
            return self.ident_form()
        self.error(f"found {_describe(tok)}", tok, ("expression",))

    def bracket_or_crossed(self):
        self.expect_sym("[")
        first, fkind = self.expr()
        tok = self.next()
        if tok.kind == "SYM" and tok.value == ",":
            second, skind = self.expr()
            self.expect_sym("]")
            kind = self.unify_bracket(fkind, skind, tok)
            return ("bracket", first, second), kind
        if tok.kind == "SYM" and tok.value == "]":
            u = self.next()
            if u.kind != "IDENT" or u.value != "U":
                self.error("a crossed monomial needs U^n here", u, ("'U'",))
            self.expect_sym("^")
            power = self.signed_int()
            if fkind != "fn":
                self.error(
                    f"a crossed monomial needs a function, not a {fkind}", u, ()
                )
            return ("crossed", first, power), "crossed"
        self.error(f"found {_describe(tok)}", tok, ("','", "']'"))

    def fn_argument(self):
        self.expect_sym("(")
        node, kind = self.expr()
        if kind != "fn":
            self.error(f"expected a function argument, found {kind}", self.peek(), ())
        self.expect_sym(")")
        return node

    def int_argument(self):
        self.expect_sym("(")
        value = self.signed_int()
        self.expect_sym(")")
        return value

    def char_index(self):
        if self.peek().kind == "SYM" and self.peek().value == "(":
            self.next()
            parts = [self.signed_int()]
            while self.peek().kind == "SYM" and self.peek().value == ",":
                self.next()
                parts.append(self.signed_int())
            self.expect_sym(")")
            return tuple(parts)
        return self.signed_int()

    def ident_form(self):
        tok = self.next()
        name = tok.value
        space = self.space
        if name == "delta":
            k = self.int_argument()
            if not space.is_finite:
                self.error("delta needs a finite space", tok, ())
            if not 0 <= k < space.size:
                self.error(f"point index {k} out of range", tok, ())
            return ("delta", k), "fn"
        if name == "chi":
            k = self.int_argument()
            if not space.is_finite:
                self.error("chi needs a finite space; use z^k on the torus", tok, ())
            if not 0 <= k < space.size:
                self.error(f"character index {k} out of range", tok, ())
            return ("chi", k), "fn"
        if name == "one":
            return ("one",), "fn"
        if name == "c":
            return ("central",), "central"
        if name == "X":
            self.expect_sym("[")
            n = self.signed_int()
            self.expect_sym("]")
            sub = self.fn_argument()
            return ("x", n, sub), "root"
        if name == "Y":
            self.expect_sym("[")
            index = self.char_index()
            self.expect_sym(",")
            n = self.signed_int()
            self.expect_sym("]")
            if space.is_finite:
                if not isinstance(index, int):
                    self.error("this space indexes characters by one integer", tok, ())
            else:
                if isinstance(index, int):
                    index = (index,)
                if len(index) != space.dim:
                    self.error(
                        f"character index needs {space.dim} components", tok, ()
                    )
            return ("y", index, n), "char"
        if name == "U":
            self.error("U is only valid in a crossed monomial [f]U^n", tok, ())
        return self.variable_form(tok)

    def variable_form(self, tok):
        name = tok.value
        space = self.space
        head, digits = name[0], name[1:]
        if head not in ("z", "q") or (digits and not digits.isdigit()):
            self.error(f"unknown name {name!r}", tok, ())
        index = int(digits) if digits else None
        if head == "q":
            if space.is_finite:
                self.error("q only exists on the torus", tok, ())
            if index is None:
                if space.dim != 1:
                    self.error("use q1..qd on a multidimensional torus", tok, ())
                return ("qvar", 0), "scalar"
            if 1 <= index <= space.dim:
                return ("qvar", index - 1), "scalar"
            self.error(f"rotation index {index} out of range", tok, ())
        if index is None:
            if space.is_finite:
                self.error("z alone only exists on the torus; zN is a root of unity", tok, ())
            if space.dim != 1:
                self.error("use z1..zd on a multidimensional torus", tok, ())
            return ("coord", 0), "fn"
        if not space.is_finite and 1 <= index <= space.dim:
            return ("coord", index - 1), "fn"
        if index < 1:
            self.error("a root of unity needs a positive order", tok, ())
        return ("zeta", index), "scalar"


def parse(text: str, space: Space, presentation: str = None) -> Expr:
    """Parse and kind-check an expression for the given space.

    When a presentation tag (crossed / root / char) is supplied, the result
    must be an element of that presentation or a pure central term.
    """
    tree, kind = _Parser(text, space).parse()
    if presentation is not None:
        if presentation not in _ELEMS:
            raise LiedynError(f"unknown presentation {presentation!r}")
        if kind not in (presentation, "central"):
            raise ParseError(
                f"expression is {kind}, not {presentation}", 1, 1, (presentation,)
            )
    return Expr(tree, kind, space)


# -- evaluation ---------------------------------------------------------------


def _as_elem(kind, value, target, space):
    if kind == target:
        return value
    if kind == "central":
        if target == "crossed":
            return LieElem(space, {}, value)
        if target == "root":
            return RootElem(space, {}, value)
        if target == "char":
            return CharBasisElem(space, {}, value)
    raise LiedynError(f"cannot view a {kind} as {target}")


def _fn_power(fn: FnElem, power: int, space: Space) -> FnElem:
    if power >= 0:
        out = FnElem.one(space)
        for _ in range(power):
            out = fn_mul(out, fn)
        return out
    if space.is_finite or len(fn.terms) != 1:
        raise LiedynError("negative powers need a single torus monomial")
    ((freq, coeff),) = fn.terms.items()
    inv = _invert_unit(coeff)
    base = FnElem(space, {tuple(-x for x in freq): inv})
    return _fn_power(base, -power, space)


def _invert_unit(s):
    s = demote(s)
    if isinstance(s, Fraction):
        if s == 0:
            raise LiedynError("cannot invert zero")
        return Fraction(1) / s
    if isinstance(s, Cyclotomic):
        r = s.as_root_of_unity()
        if r is None:
            raise LiedynError("can only invert unit coefficients")
        return Cyclotomic.zeta(s.order, -r)
    if len(s.terms) != 1:
        raise LiedynError("can only invert monomial coefficients")
    ((exp, coeff),) = s.terms.items()
    return LaurentScalar.monomial(s.nvars, tuple(-x for x in exp), _invert_unit(coeff))


def evaluate(expr: Expr):
    """Evaluate a parsed expression to (kind, value)."""
    return _eval(expr.tree, expr.space)


def _eval(node, space: Space):
    op = node[0]
    if op == "num":
        return "scalar", node[1]
    if op == "zeta":
        return "scalar", Cyclotomic.zeta(node[1], 1)
    if op == "qvar":
        return "scalar", LaurentScalar.variable(space.dim, node[1])
    if op == "coord":
        freq = tuple(1 if i == node[1] else 0 for i in range(space.dim))
        return "fn", FnElem(space, {freq: Fraction(1)})
    if op == "delta":
        return "fn", FnElem.delta(space, node[1])
    if op == "chi":
        return "fn", FnElem.character(space, node[1])
    if op == "one":
        return "fn", FnElem.one(space)
    if op == "central":
        return "central", Fraction(1)
    if op == "x":
        _, fn = _eval(node[2], space)
        return "root", RootElem.generator(space, node[1], fn)
    if op == "y":
        return "char", CharBasisElem.symbol(space, node[1], node[2])
    if op == "crossed":
        _, fn = _eval(node[1], space)
        return "crossed", LieElem.monomial(space, fn, node[2])
    if op == "neg":
        kind, v = _eval(node[1], space)
        return kind, (-v if kind in ("scalar", "central") else v.scale(Fraction(-1)))
    if op in ("add", "sub"):
        k1, a = _eval(node[1], space)
        k2, b = _eval(node[2], space)
        kind = k1 if k1 != "central" else k2
        if kind in _ELEMS:
            a = _as_elem(k1, a, kind, space)
            b = _as_elem(k2, b, kind, space)
        return kind, (a + b if op == "add" else a - b)
    if op == "mul":
        k1, a = _eval(node[1], space)
        k2, b = _eval(node[2], space)
        if k1 == "scalar" and k2 == "scalar":
            return "scalar", a * b
        if k1 == "scalar":
            return k2, (a * b if k2 == "central" else b.scale(a))
        if k2 == "scalar":
            return k1, (a * b if k1 == "central" else a.scale(b))
        return "fn", fn_mul(a, b)
    if op == "pow":
        kind, base = _eval(node[1], space)
        if kind == "scalar":
            return "scalar", base ** node[2]
        return "fn", _fn_power(base, node[2], space)
    if op == "bracket":
        k1, a = _eval(node[1], space)
        k2, b = _eval(node[2], space)
        kind = k1 if k1 != "central" else k2
        if kind == "central":
            return "central", Fraction(0)
        a = _as_elem(k1, a, kind, space)
        b = _as_elem(k2, b, kind, space)
        fns = {"crossed": bracket_extended, "root": bracket_root, "char": bracket_y}
        return kind, fns[kind](a, b)
    raise LiedynError(f"unknown node {op!r}")


def evaluate_text(text: str, space: Space, presentation: str = None):
    return evaluate(parse(text, space, presentation))


# -- canonical rendering ------------------------------------------------------


def render_scalar(s) -> str:
    s = demote(s)
    if isinstance(s, Fraction):
        return str(s)
    if isinstance(s, Cyclotomic):
        return _render_cyclotomic(s)
    return _render_laurent(s)


def _render_cyclotomic(c: Cyclotomic) -> str:
    parts = []
    for power in range(len(c.coeffs) - 1, -1, -1):
        coeff = c.coeffs[power]
        if coeff == 0:
            continue
        body = str(abs(coeff))
        if power > 0:
            body += f"*z{c.order}^{power}"
        parts.append(("-" if coeff < 0 else "+", body))
    return _join_signed(parts)


def _render_laurent(l: LaurentScalar) -> str:
    parts = []
    for exp in sorted(l.terms):
        coeff = demote(l.terms[exp])
        qbits = []
        for i, e in enumerate(exp):
            if e != 0:
                name = "q" if l.nvars == 1 else f"q{i + 1}"
                qbits.append(f"{name}^{e}")
        qpart = "*".join(qbits)
        if isinstance(coeff, Fraction):
            body = str(abs(coeff))
            sign = "-" if coeff < 0 else "+"
            if qpart:
                body += "*" + qpart
        else:
            sign = "+"
            body = f"({_render_cyclotomic(coeff)})"
            if qpart:
                body += "*" + qpart
        parts.append((sign, body))
    return _join_signed(parts)


def _join_signed(parts) -> str:
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _coeff_prefix(s) -> tuple:
    """Render a coefficient for use before '*': (sign, prefix-string)."""
    s = demote(s)
    if isinstance(s, Fraction):
        return ("-" if s < 0 else "+", str(abs(s)))
    text = render_scalar(s)
    if " " in text or text.startswith("-"):
        return ("+", f"({text})")
    return ("+", text)


def render_fn(f: FnElem) -> str:
    parts = []
    if f.space.is_finite:
        for j, v in enumerate(f.values):
            if is_zero(v):
                continue
            sign, prefix = _coeff_prefix(v)
            parts.append((sign, f"{prefix}*delta({j})"))
    else:
        d = f.space.dim
        for freq in sorted(f.terms):
            sign, prefix = _coeff_prefix(f.terms[freq])
            zbits = []
            for i, e in enumerate(freq):
                if e != 0:
                    name = "z" if d == 1 else f"z{i + 1}"
                    zbits.append(f"{name}^{e}")
            body = "*".join(zbits) if zbits else "one"
            parts.append((sign, f"{prefix}*{body}"))
    return _join_signed(parts)


def _render_char_index(index) -> str:
    if isinstance(index, tuple):
        return "(" + ",".join(str(x) for x in index) + ")"
    return str(index)


def render_element(kind, value) -> str:
    """Canonical text form; parsing it reproduces the element."""
    if kind == "scalar":
        return render_scalar(value)
    if kind == "fn":
        return render_fn(value)
    if kind == "central":
        if is_zero(value):
            return "0"
        sign, prefix = _coeff_prefix(value)
        return _join_signed([(sign, f"{prefix}*c")])
    parts = []
    if kind == "crossed":
        for n in value.grades():
            parts.append(("+", f"[{render_fn(value.terms[n])}]U^{n}"))
    elif kind == "root":
        for n in value.grades():
            parts.append(("+", f"X[{n}]({render_fn(value.terms[n])})"))
    elif kind == "char":
        def key(item):
            (index, n) = item
            return (n, index if isinstance(index, tuple) else (index,))

        for index, n in sorted(value.terms, key=key):
            sign, prefix = _coeff_prefix(value.terms[(index, n)])
            parts.append((sign, f"{prefix}*Y[{_render_char_index(index)},{n}]"))
    else:
        raise LiedynError(f"unknown kind {kind!r}")
    if not is_zero(value.central):
        sign, prefix = _coeff_prefix(value.central)
        parts.append((sign, f"{prefix}*c"))
    return _join_signed(parts)


def element_record(kind, value) -> dict:
    """Machine-readable form with canonically rendered scalars."""
    if kind == "scalar":
        return {"kind": "scalar", "value": render_scalar(value)}
    if kind == "fn":
        return {"kind": "function", "terms": _fn_record(value)}
    if kind == "central":
        return {"kind": "central", "central": render_scalar(value)}
    record = {"kind": kind, "central": render_scalar(value.central)}
    if kind == "crossed":
        record["terms"] = [
            {"grade": n, "fn": _fn_record(value.terms[n])} for n in value.grades()
        ]
    elif kind == "root":
        record["terms"] = [
            {"grade": n, "fn": _fn_record(value.terms[n])} for n in value.grades()
        ]
    elif kind == "char":
        def key(item):
            (index, n) = item
            return (n, index if isinstance(index, tuple) else (index,))

        record["terms"] = [
            {
                "char": list(index) if isinstance(index, tuple) else index,
                "grade": n,
                "coeff": render_scalar(value.terms[(index, n)]),
            }
            for index, n in sorted(value.terms, key=key)
        ]
    else:
        raise LiedynError(f"unknown kind {kind!r}")
    return record


def _fn_record(f: FnElem) -> list:
    if f.space.is_finite:
        return [
            {"point": j, "coeff": render_scalar(v)}
            for j, v in enumerate(f.values)
            if not is_zero(v)
        ]
    return [
        {"freq": list(freq), "coeff": render_scalar(f.terms[freq])}
        for freq in sorted(f.terms)
    ]
