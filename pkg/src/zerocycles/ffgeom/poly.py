"""Multivariate polynomials with integer coefficients.

Polynomials are immutable and carry their own ordered variable list;
arithmetic between polynomials over different variable lists works in the
union (first operand's order, then new names).  Evaluation happens over a
:class:`FieldSpec`, vectorized over numpy arrays of encoded elements.
"""

from __future__ import annotations

import ast
from typing import Mapping, Sequence

import numpy as np

Exponent = tuple[int, ...]


class MultiPoly:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, int] | None = None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated variable in {self.variables}")
        n = len(self.variables)
        clean: dict[Exponent, int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(x) for x in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match {n} variables")
            if any(x < 0 for x in exp):
                raise ValueError("negative exponent")
            c = int(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean
        self._hash = None

    # -- construction --------------------------------------------------

    @classmethod
    def var(cls, name: str, variables: Sequence[str] | None = None) -> "MultiPoly":
        variables = tuple(variables) if variables is not None else (name,)
        exp = tuple(int(v == name) for v in variables)
        if name not in variables:
            raise ValueError(f"unknown variable {name!r}")
        return cls(variables, {exp: 1})

    @classmethod
    def const(cls, c: int, variables: Sequence[str] = ()) -> "MultiPoly":
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> list["MultiPoly"]:
        return [cls.var(v, variables) for v in variables]

    def over(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express in a larger (or reordered) variable list."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        idx = []
        for v in self.variables:
            if v not in variables:
                if any(e[self.variables.index(v)] for e in self.terms):
                    raise ValueError(f"variable {v!r} missing from target list")
                idx.append(None)
            else:
                idx.append(variables.index(v))
        out = {}
        for exp, c in self.terms.items():
            new = [0] * len(variables)
            for k, i in enumerate(idx):
                if i is not None:
                    new[i] = exp[k]
            out[tuple(new)] = c
        return MultiPoly(variables, out)

    def _align(self, other):
        if isinstance(other, int):
            return self, MultiPoly.const(other, self.variables)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if other.variables == self.variables:
            return self, other
        names = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.over(names), other.over(names)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        al = self._align(other)
        if al is NotImplemented:
            return al
        a, b = al
        out = dict(a.terms)
        for e, c in b.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(a.variables, out)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        al = self._align(other)
        if al is NotImplemented:
            return al
        a, b = al
        out: dict[Exponent, int] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(a.variables, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(1, self.variables)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.const(other, self.variables)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(
                (frozenset((v, k) for v, k in zip(self.variables, e) if k), c)
                for e, c in self.terms.items()
            ))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, reverse=True):
            c = self.terms[exp]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, exp) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- structure -----------------------------------------------------

    def used_variables(self) -> tuple[str, ...]:
        return tuple(
            v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms)
        )

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self._index(var)
        return max(e[i] for e in self.terms)

    def degree_in(self, names: Sequence[str]) -> set[int]:
        """The set of total degrees of the monomials in the given variables."""
        idx = [self._index(v) for v in names]
        return {sum(e[i] for i in idx) for e in self.terms}

    def _index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise ValueError(f"unknown variable {var!r}") from None

    def partial(self, var: str) -> "MultiPoly":
        """Formal partial derivative."""
        i = self._index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly(self.variables, out)

    def coefficients_in(self, var: str) -> dict[int, "MultiPoly"]:
        """Write ``self = sum_k c_k * var^k``; returns ``{k: c_k}``."""
        i = self._index(var)
        groups: dict[int, dict] = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            groups.setdefault(k, {})[tuple(ne)] = c
        return {k: MultiPoly(self.variables, t) for k, t in groups.items()}

    def substitute(self, values: Mapping[str, "MultiPoly | int"]) -> "MultiPoly":
        """Replace variables by polynomials or integers."""
        out = MultiPoly.const(0, self.variables)
        cache: dict[tuple[str, int], MultiPoly] = {}
        for e, c in self.terms.items():
            term = MultiPoly.const(c, self.variables)
            rest = [0] * len(self.variables)
            for v, k in zip(self.variables, e):
                if not k:
                    continue
                if v in values:
                    key = (v, k)
                    if key not in cache:
                        val = values[v]
                        if isinstance(val, int):
                            val = MultiPoly.const(val, self.variables)
                        cache[key] = val ** k
                    term = term * cache[key]
                else:
                    rest[self.variables.index(v)] = k
            term = term * MultiPoly(self.variables, {tuple(rest): 1})
            out = out + term
        return out

    def reduce_mod(self, p: int) -> "MultiPoly":
        return MultiPoly(self.variables, {e: c % p for e, c in self.terms.items()})

    def is_zero_mod(self, p: int) -> bool:
        return not self.reduce_mod(p).terms

    # -- evaluation ----------------------------------------------------

    def evaluate(self, field, values: Mapping[str, "np.ndarray | int"]) -> np.ndarray | int:
        """Evaluate over ``field`` at encoded element(s).

        ``values`` maps each used variable to an int or an array; arrays are
        broadcast together.  Returns an int when all inputs are ints.
        """
        used = self.used_variables()
        missing = [v for v in used if v not in values]
        if missing:
            raise ValueError(f"no value for variable(s) {missing}")
        scalar = all(np.ndim(values[v]) == 0 for v in used)
        maxdeg = max((max(e) for e in self.terms), default=0)
        pw = field.pow_table(max(maxdeg, 1))
        arrs = {v: np.asarray(values[v], dtype=np.int64) for v in used}
        shape = np.broadcast_shapes(*(a.shape for a in arrs.values())) if arrs else ()
        acc = np.zeros(shape, dtype=np.int64)
        idx = {v: self.variables.index(v) for v in used}
        for e, c in self.terms.items():
            term = np.full(shape, field.from_int(c), dtype=np.int64)
            for v in used:
                k = e[idx[v]]
                if k:
                    term = field.mul_t[term, pw[arrs[v], k]]
            acc = field.add_t[acc, term]
        return int(acc) if scalar else acc


def poly_eval(f: MultiPoly, pt, field) -> int:
    """Value of ``f`` at a point (a ``PointRec`` or a name -> value mapping)."""
    values = pt.as_dict() if hasattr(pt, "as_dict") else dict(pt)
    return int(f.reduce_mod(field.p).evaluate(field, values))


def poly_partial(f: MultiPoly, var: str) -> MultiPoly:
    return f.partial(var)


def _ast_to_poly(node, variables, constants):
    if isinstance(node, ast.Expression):
        return _ast_to_poly(node.body, variables, constants)
    if isinstance(node, ast.BinOp):
        a = _ast_to_poly(node.left, variables, constants)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError("exponents must be nonnegative integer literals")
            return a ** node.right.value
        b = _ast_to_poly(node.right, variables, constants)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        raise ValueError(f"unsupported operator {type(node.op).__name__}")
    if isinstance(node, ast.UnaryOp):
        a = _ast_to_poly(node.operand, variables, constants)
        if isinstance(node.op, ast.USub):
            return -a
        if isinstance(node.op, ast.UAdd):
            return a
        raise ValueError("unsupported unary operator")
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return MultiPoly.const(node.value, variables)
    if isinstance(node, ast.Name):
        if node.id in variables:
            return MultiPoly.var(node.id, variables)
        if node.id in constants:
            return MultiPoly.const(int(constants[node.id]), variables)
        raise ValueError(f"unknown name {node.id!r}")
    raise ValueError(f"unsupported syntax: {ast.dump(node)}")


def parse_poly(text: str, variables: Sequence[str], constants: Mapping[str, int] | None = None) -> MultiPoly:
    """Parse ``integers, variables, + - * ^, parentheses``.

    Named constants (e.g. ``d``, ``beta``, ``gamma``) are replaced by the
    given integers.
    """
    variables = tuple(variables)
    constants = dict(constants or {})
    if any(ch in text for ch in "/%@&|"):
        raise ValueError(f"unsupported character in {text!r}")
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {text!r}: {exc.msg}") from None
    return _ast_to_poly(tree, variables, constants)
