"""Arithmetic circuits over free noncommuting variables.

A circuit is an immutable DAG: a tuple of fan-in <= 2 nodes with dense
ids 0..len-1, children strictly below parents, and one designated
output.  Multiplication children are ordered; nothing ever commutes
them.  Gate counts (add/mul) are reported separately from leaf counts
(input/const) so size bounds can be asserted against gates alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import BudgetError, FormatError
from .matrices import SquareMatrix
from .polynomials import (Alphabet, NCPolynomial, add_maps, check_name,
                          length_lex_key, mul_maps)
from .scalars import Scalar, require_prime_modulus

DEFAULT_MAX_DEGREE = 64
DEFAULT_MAX_TERMS = 200_000

# Cost guard for a single convolution inside expand(); the result budget
# alone can't stop a product whose intermediate pair count explodes.
_MAX_PRODUCT_PAIRS = 5_000_000


@dataclass(frozen=True)
class InputNode:
    var: int


@dataclass(frozen=True)
class ConstNode:
    value: int


@dataclass(frozen=True)
class AddNode:
    lhs: int
    rhs: int


@dataclass(frozen=True)
class MulNode:
    lhs: int
    rhs: int


Node = InputNode | ConstNode | AddNode | MulNode


@dataclass(frozen=True)
class SizeReport:
    adds: int
    muls: int
    inputs: int
    consts: int

    @property
    def gates(self) -> int:
        return self.adds + self.muls

    @property
    def total(self) -> int:
        return self.adds + self.muls + self.inputs + self.consts

    def astuple(self) -> tuple[int, int, int, int, int]:
        return (self.adds, self.muls, self.inputs, self.consts, self.total)


@dataclass(frozen=True)
class Circuit:
    name: str
    alphabet: Alphabet
    modulus: int
    nodes: tuple[Node, ...]
    output: int

    def __post_init__(self) -> None:
        check_name(self.name)
        require_prime_modulus(self.modulus)
        object.__setattr__(self, "nodes", tuple(self.nodes))

    def validate(self) -> None:
        """Raise ValueError naming the first offending node."""
        n = self.alphabet.size
        p = self.modulus
        if not self.nodes:
            raise ValueError("circuit has no nodes")
        for i, node in enumerate(self.nodes):
            if isinstance(node, InputNode):
                if not 0 <= node.var < n:
                    raise ValueError(f"node {i}: variable x{node.var} "
                                     f"outside alphabet of size {n}")
            elif isinstance(node, ConstNode):
                if not 0 <= node.value < p:
                    raise ValueError(f"node {i}: constant {node.value} "
                                     f"not a reduced residue mod {p}")
            elif isinstance(node, (AddNode, MulNode)):
                for child in (node.lhs, node.rhs):
                    if not 0 <= child < i:
                        raise ValueError(f"node {i}: child {child} is not "
                                         f"strictly below its parent")
            else:
                raise ValueError(f"node {i}: unknown node kind {node!r}")
        if not 0 <= self.output < len(self.nodes):
            raise ValueError(f"output {self.output} is not a node id")

    def size_report(self) -> SizeReport:
        adds = muls = inputs = consts = 0
        for node in self.nodes:
            if isinstance(node, AddNode):
                adds += 1
            elif isinstance(node, MulNode):
                muls += 1
            elif isinstance(node, InputNode):
                inputs += 1
            else:
                consts += 1
        return SizeReport(adds, muls, inputs, consts)

    def degree_bound(self) -> int:
        """Syntactic degree: input 1, const 0, add max, mul sum."""
        degs: list[int] = []
        for node in self.nodes:
            if isinstance(node, InputNode):
                degs.append(1)
            elif isinstance(node, ConstNode):
                degs.append(0)
            elif isinstance(node, AddNode):
                degs.append(max(degs[node.lhs], degs[node.rhs]))
            else:
                degs.append(degs[node.lhs] + degs[node.rhs])
        return degs[self.output]

    def used_vars(self) -> set[int]:
        return {node.var for node in self.nodes
                if isinstance(node, InputNode)}

    def pruned(self, name: str | None = None) -> "Circuit":
        """Drop nodes unreachable from the output, preserving order."""
        keep = set()
        stack = [self.output]
        while stack:
            i = stack.pop()
            if i in keep:
                continue
            keep.add(i)
            node = self.nodes[i]
            if isinstance(node, (AddNode, MulNode)):
                stack.append(node.lhs)
                stack.append(node.rhs)
        remap: dict[int, int] = {}
        nodes: list[Node] = []
        for i in sorted(keep):
            node = self.nodes[i]
            if isinstance(node, AddNode):
                node = AddNode(remap[node.lhs], remap[node.rhs])
            elif isinstance(node, MulNode):
                node = MulNode(remap[node.lhs], remap[node.rhs])
            remap[i] = len(nodes)
            nodes.append(node)
        return Circuit(name or self.name, self.alphabet, self.modulus,
                       tuple(nodes), remap[self.output])

    def with_name(self, name: str) -> "Circuit":
        return Circuit(name, self.alphabet, self.modulus, self.nodes,
                       self.output)


class CircuitBuilder:
    """Mutable construction buffer; finish() freezes to a Circuit.

    Constants and input nodes are deduplicated so synthesized circuits
    share leaves.  Gate nodes are appended verbatim.
    """

    def __init__(self, alphabet: Alphabet, modulus: int, name: str = "c"):
        require_prime_modulus(modulus)
        self.alphabet = alphabet
        self.modulus = modulus
        self.name = name
        self.nodes: list[Node] = []
        self._const_ids: dict[int, int] = {}
        self._var_ids: dict[int, int] = {}
        self._const_vals: dict[int, int] = {}

    def _push(self, node: Node) -> int:
        self.nodes.append(node)
        return len(self.nodes) - 1

    def const(self, value) -> int:
        if isinstance(value, Scalar):
            value = value.value
        value %= self.modulus
        nid = self._const_ids.get(value)
        if nid is None:
            nid = self._push(ConstNode(value))
            self._const_ids[value] = nid
            self._const_vals[nid] = value
        return nid

    def var(self, i: int) -> int:
        if not 0 <= i < self.alphabet.size:
            raise ValueError(f"variable x{i} outside alphabet of size "
                             f"{self.alphabet.size}")
        nid = self._var_ids.get(i)
        if nid is None:
            nid = self._push(InputNode(i))
            self._var_ids[i] = nid
        return nid

    def add(self, lhs: int, rhs: int) -> int:
        return self._push(AddNode(lhs, rhs))

    def mul(self, lhs: int, rhs: int) -> int:
        return self._push(MulNode(lhs, rhs))

    def const_value(self, nid: int) -> int | None:
        """The residue a node is a constant for, else None."""
        return self._const_vals.get(nid)

    def finish(self, output: int, *, name: str | None = None,
               prune: bool = False) -> Circuit:
        circuit = Circuit(name or self.name, self.alphabet, self.modulus,
                          tuple(self.nodes), output)
        if prune:
            circuit = circuit.pruned()
        circuit.validate()
        return circuit


# ---------------------------------------------------------------------------
# Evaluation and expansion.

def _assignment_residue(assignment, var: int, p: int) -> int:
    try:
        a = assignment[var]
    except (KeyError, IndexError) as exc:
        raise ValueError(f"variable x{var} has no assigned value") from exc
    if isinstance(a, Scalar):
        if a.modulus != p:
            raise ValueError(f"modulus mismatch: {p} vs {a.modulus}")
        a = a.value
    return a % p


def eval_scalar(circuit: Circuit, assignment) -> Scalar:
    """Evaluate at scalars; assignment is a sequence or map var -> value."""
    p = circuit.modulus
    vals: list[int] = []
    for node in circuit.nodes:
        if isinstance(node, InputNode):
            vals.append(_assignment_residue(assignment, node.var, p))
        elif isinstance(node, ConstNode):
            vals.append(node.value % p)
        elif isinstance(node, AddNode):
            vals.append((vals[node.lhs] + vals[node.rhs]) % p)
        else:
            vals.append(vals[node.lhs] * vals[node.rhs] % p)
    return Scalar(vals[circuit.output], p)


def eval_matrix_residues(circuit: Circuit,
                         mats: Mapping[int, Sequence[Sequence[int]]],
                         dim: int, p: int) -> list[list[int]]:
    """Fast kernel: evaluate at integer matrices mod p, naive cubic muls."""
    rng = range(dim)
    vals: list[list[list[int]]] = []
    for node in circuit.nodes:
        if isinstance(node, InputNode):
            if node.var not in mats:
                raise ValueError(f"variable x{node.var} has no assigned "
                                 f"matrix")
            m = mats[node.var]
            vals.append([[m[i][j] % p for j in rng] for i in rng])
        elif isinstance(node, ConstNode):
            c = node.value % p
            vals.append([[c if i == j else 0 for j in rng] for i in rng])
        elif isinstance(node, AddNode):
            a, b = vals[node.lhs], vals[node.rhs]
            vals.append([[(a[i][j] + b[i][j]) % p for j in rng] for i in rng])
        else:
            a, b = vals[node.lhs], vals[node.rhs]
            out = [[0] * dim for _ in rng]
            for i in rng:
                arow = a[i]
                orow = out[i]
                for k in rng:
                    aik = arow[k]
                    if aik:
                        brow = b[k]
                        for j in rng:
                            orow[j] = (orow[j] + aik * brow[j]) % p
            vals.append(out)
    return vals[circuit.output]


def eval_matrix(circuit: Circuit, point: Mapping[int, SquareMatrix],
                *, dim: int | None = None) -> SquareMatrix:
    """Evaluate at square matrices; products keep the gate's operand order.

    Constants become c * I.  All matrices must share one dimension and
    one entry ring (Scalar or NCPolynomial).  For a circuit with no
    inputs pass dim explicitly; entries then default to Scalar.
    """
    p = circuit.modulus
    mats = dict(point)
    sample = None
    for m in mats.values():
        if dim is None:
            dim = m.dim
        elif m.dim != dim:
            raise ValueError(f"dimension mismatch: {dim} vs {m.dim}")
        e = m.entry(0, 0)
        if sample is None:
            sample = e
        elif type(e) is not type(sample):
            raise ValueError("matrices mix entry rings")
    if dim is None:
        raise ValueError("dim is required when no matrices are given")

    if sample is None or isinstance(sample, Scalar):
        raw = {v: [[m.entry(i, j).value for j in range(dim)]
                   for i in range(dim)] for v, m in mats.items()}
        rows = eval_matrix_residues(circuit, raw, dim, p)
        return SquareMatrix([[Scalar(e, p) for e in row] for row in rows])

    if not isinstance(sample, NCPolynomial):
        raise ValueError(f"unsupported matrix entry ring: {type(sample)!r}")
    if sample.modulus != p:
        raise ValueError(f"modulus mismatch: {p} vs {sample.modulus}")
    zero = NCPolynomial.zero(sample.alphabet, p)

    vals: list[SquareMatrix] = []
    for node in circuit.nodes:
        if isinstance(node, InputNode):
            if node.var not in mats:
                raise ValueError(f"variable x{node.var} has no assigned "
                                 f"matrix")
            vals.append(mats[node.var])
        elif isinstance(node, ConstNode):
            c = NCPolynomial.constant(node.value, sample.alphabet, p)
            vals.append(SquareMatrix.scalar_diag(dim, c, zero))
        elif isinstance(node, AddNode):
            vals.append(vals[node.lhs] + vals[node.rhs])
        else:
            vals.append(vals[node.lhs] * vals[node.rhs])
    return vals[circuit.output]


def expand(circuit: Circuit, max_degree: int = DEFAULT_MAX_DEGREE,
           max_terms: int = DEFAULT_MAX_TERMS) -> NCPolynomial:
    """The exact polynomial a circuit computes.

    Hard budgets, not truncation: any intermediate polynomial whose
    degree exceeds max_degree or support exceeds max_terms aborts with
    BudgetError naming the node.
    """
    circuit.validate()
    p = circuit.modulus
    vals: list[dict] = []
    for i, node in enumerate(circuit.nodes):
        if isinstance(node, InputNode):
            t = {(node.var,): 1}
        elif isinstance(node, ConstNode):
            c = node.value % p
            t = {(): c} if c else {}
        elif isinstance(node, AddNode):
            t = add_maps(vals[node.lhs], vals[node.rhs], p)
        else:
            a, b = vals[node.lhs], vals[node.rhs]
            if len(a) * len(b) > _MAX_PRODUCT_PAIRS:
                raise BudgetError(f"node {i}: product of {len(a)} x {len(b)} "
                                  f"terms exceeds the convolution budget")
            t = mul_maps(a, b, p)
        if t:
            deg = max(map(len, t))
            if deg > max_degree:
                raise BudgetError(f"node {i}: degree {deg} exceeds budget "
                                  f"{max_degree}")
        if len(t) > max_terms:
            raise BudgetError(f"node {i}: {len(t)} terms exceed budget "
                              f"{max_terms}")
        vals.append(t)
    return NCPolynomial(circuit.alphabet, p, vals[circuit.output],
                        _trusted=True)


def substitute_inputs(circuit: Circuit,
                      replacements: Mapping[int, Circuit]) -> Circuit:
    """Splice a replacement circuit over every Input node, in gate order.

    Each Input(x_i) node becomes its own copy of replacements[i]; gate
    nodes are kept with remapped children.  All replacement circuits
    must share one target alphabet and the original modulus.
    """
    circuit.validate()
    target: Alphabet | None = None
    for var, rep in replacements.items():
        if rep.modulus != circuit.modulus:
            raise ValueError(f"replacement for x{var}: modulus "
                             f"{rep.modulus} != {circuit.modulus}")
        if target is None:
            target = rep.alphabet
        elif rep.alphabet.size != target.size:
            raise ValueError("replacement circuits disagree on the target "
                             "alphabet size")
    if target is None:
        raise ValueError("no replacement circuits given")

    nodes: list[Node] = []
    mapped: dict[int, int] = {}
    for i, node in enumerate(circuit.nodes):
        if isinstance(node, InputNode):
            rep = replacements.get(node.var)
            if rep is None:
                raise ValueError(f"node {i}: no replacement for used "
                                 f"variable x{node.var}")
            base = len(nodes)
            for rn in rep.nodes:
                if isinstance(rn, AddNode):
                    rn = AddNode(rn.lhs + base, rn.rhs + base)
                elif isinstance(rn, MulNode):
                    rn = MulNode(rn.lhs + base, rn.rhs + base)
                nodes.append(rn)
            mapped[i] = base + rep.output
        else:
            if isinstance(node, AddNode):
                node = AddNode(mapped[node.lhs], mapped[node.rhs])
            elif isinstance(node, MulNode):
                node = MulNode(mapped[node.lhs], mapped[node.rhs])
            mapped[i] = len(nodes)
            nodes.append(node)
    out = Circuit(circuit.name, target, circuit.modulus, tuple(nodes),
                  mapped[circuit.output])
    out.validate()
    return out


def circuit_from_poly(f: NCPolynomial, name: str = "c") -> Circuit:
    """A straightforward sum-of-term-chains circuit for a polynomial."""
    b = CircuitBuilder(f.alphabet, f.modulus, name=name)
    term_ids = []
    for w in sorted(f.terms, key=length_lex_key):
        c = f.terms[w]
        if not w:
            term_ids.append(b.const(c))
            continue
        chain = b.var(w[0])
        for letter in w[1:]:
            chain = b.mul(chain, b.var(letter))
        term_ids.append(chain if c == 1 else b.mul(b.const(c), chain))
    if not term_ids:
        return b.finish(b.const(0))
    acc = term_ids[0]
    for t in term_ids[1:]:
        acc = b.add(acc, t)
    return b.finish(acc)


# ---------------------------------------------------------------------------
# Text format:
#
#   circuit lhs over X vars 8 modulus 7
#   node 0 var 5
#   node 1 const 3
#   node 2 mul 0 1
#   output 2
#
# The parser accepts blank lines and '#' comments; the canonical printer
# emits neither.  Node ids must be dense and ascending.

def format_circuit(c: Circuit) -> str:
    lines = [f"circuit {c.name} over {c.alphabet.name} "
             f"vars {c.alphabet.size} modulus {c.modulus}"]
    for i, node in enumerate(c.nodes):
        if isinstance(node, InputNode):
            lines.append(f"node {i} var {node.var}")
        elif isinstance(node, ConstNode):
            lines.append(f"node {i} const {node.value}")
        elif isinstance(node, AddNode):
            lines.append(f"node {i} add {node.lhs} {node.rhs}")
        else:
            lines.append(f"node {i} mul {node.lhs} {node.rhs}")
    lines.append(f"output {c.output}")
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty circuit file")
    name, aname, vars_s, mod_s = _split_circuit_header(lines[0])
    try:
        alphabet = Alphabet(aname, int(vars_s))
        modulus = require_prime_modulus(int(mod_s))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc

    nodes: list[Node] = []
    output: int | None = None
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "output":
            if output is not None:
                raise FormatError(f"line {lineno}: duplicate output line")
            if len(toks) != 2 or not toks[1].isdigit():
                raise FormatError(f"line {lineno}: bad output line")
            output = int(toks[1])
            continue
        if toks[0] != "node" or len(toks) < 4 or not toks[1].isdigit():
            raise FormatError(f"line {lineno}: expected a node line")
        nid = int(toks[1])
        if nid != len(nodes):
            raise FormatError(f"line {lineno}: node ids must be dense and "
                              f"ascending (expected {len(nodes)}, got {nid})")
        kind, args = toks[2], toks[3:]
        try:
            if kind == "var" and len(args) == 1:
                nodes.append(InputNode(int(args[0])))
            elif kind == "const" and len(args) == 1:
                nodes.append(ConstNode(int(args[0]) % modulus))
            elif kind == "add" and len(args) == 2:
                nodes.append(AddNode(int(args[0]), int(args[1])))
            elif kind == "mul" and len(args) == 2:
                nodes.append(MulNode(int(args[0]), int(args[1])))
            else:
                raise FormatError(f"line {lineno}: bad node kind {kind!r}")
        except ValueError as exc:
            raise FormatError(f"line {lineno}: bad node arguments") from exc
    if output is None:
        raise FormatError("missing output line")
    try:
        circuit = Circuit(name, alphabet, modulus, tuple(nodes), output)
        circuit.validate()
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return circuit


def _split_circuit_header(line: str) -> tuple[str, str, str, str]:
    toks = line.split()
    if (len(toks) != 8 or toks[0] != "circuit" or toks[2] != "over"
            or toks[4] != "vars" or toks[6] != "modulus"):
        raise FormatError(f"bad circuit header: {line!r}")
    return toks[1], toks[3], toks[5], toks[7]
