"""Symbols in Mackey products of mod-p multiplicative groups.

A :class:`SymbolTerm` is ``c * {x, y}_{L/K}``: two entries over a node ``L``
of a :class:`FieldLattice` and an integer coefficient. The only relation
imposed is the projection formula

    {Res x, y}_L  ==  {x, N y}_K

implemented by :func:`pf_rewrite`. :func:`evaluate_h` sends a term to the
Hilbert exponent over its node, measured against the root of unity of the
lattice base, so it is constant on projection-formula classes.

Nodes are either tower fields (with class coordinates) or degree-p Kummer
quotients created on demand by :func:`zero_witness`; over the latter an
entry is only ever shown to vanish by exhibiting a p-th root.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Sequence, Union

from . import linalg
from .errors import (
    EdgeMismatch,
    NodeMismatch,
    NoMuP,
    NotANorm,
    PatternUnsupported,
    RuleChainNotFound,
)
from .extensions import KummerExtension, TowerEdge, kummer_line, ramified_root_extension, unramified_extension
from .filtration import (
    FULL,
    HAS_UNIFORMIZER,
    TRIVIAL,
    UnitClass,
    basis_data,
    basis_product,
    class_vector,
    subgroup_indices,
    working_field,
)
from .hilbert import exponent, pairing_matrix
from .padic import PadicElement, PadicField, hensel_roots

Block = Union[int, str]
Node = Union[PadicField, KummerExtension]


# -- lattice ---------------------------------------------------------------------------
class FieldLattice:
    """A base field with named tower edges; every node knows its zeta."""

    def __init__(self, K: PadicField):
        if not K.has_integral_e0:
            raise NoMuP(f"mu_p is not contained in {K}")
        self.base = working_field(K)
        self.edges: dict[str, TowerEdge] = {}
        self.parent: dict[tuple, tuple[str, TowerEdge]] = {}
        self._zeta: dict[tuple, PadicElement | None] = {self.base.shape: None}
        self.nodes: dict[tuple, PadicField] = {self.base.shape: self.base}

    def node(self, shape) -> PadicField:
        return self.nodes[shape]

    def _add(self, name: str, edge: TowerEdge) -> TowerEdge:
        if edge.base.shape not in self.nodes:
            raise NodeMismatch(f"edge base {edge.base} is not a lattice node")
        self.edges[name] = edge
        top = edge.top.shape
        self.nodes[top] = edge.top
        self.parent[top] = (name, edge)
        from .filtration import primitive_pth_root

        z = self._zeta[edge.base.shape]
        z_base = primitive_pth_root(edge.base) if z is None else z
        self._zeta[top] = edge.embed(z_base)
        return edge

    def add_unramified(self, name: str, d: int, over: PadicField | None = None) -> TowerEdge:
        return self._add(name, unramified_extension(over or self.base, d))

    def add_ramified_root(self, name: str, d: int, over: PadicField | None = None) -> TowerEdge:
        return self._add(name, ramified_root_extension(over or self.base, d))

    def zeta(self, node: PadicField) -> PadicElement | None:
        """The base zeta as an element of ``node`` (None at the base itself)."""
        return self._zeta[node.shape]

    def __repr__(self):
        return f"FieldLattice({self.base}, edges={sorted(self.edges)})"


# -- terms -----------------------------------------------------------------------------
@dataclass(frozen=True)
class Entry:
    """One slot of a symbol: an element over the node plus its block tag.

    Over Kummer nodes ``value`` is a polynomial in the generator and
    ``root`` may hold an explicit p-th root certifying that it is trivial.
    """

    value: Any
    block: Block
    root: Any = None
    coords: tuple[int, ...] | None = None

    def is_known_trivial(self, node: Node) -> bool:
        if isinstance(node, KummerExtension):
            if self.root is None:
                return False
            return node.equal(node.pow(list(self.root), node.p), list(self.value))
        return not any(self.class_coords())

    def class_coords(self) -> tuple[int, ...]:
        return self.coords if self.coords is not None else class_vector(self.value)


@dataclass(frozen=True)
class SymbolTerm:
    node: Node
    entries: tuple[Entry, Entry]
    coefficient: int = 1
    zeta: PadicElement | None = field(default=None, compare=False)

    @property
    def is_zero(self) -> bool:
        if self.coefficient % _p(self.node) == 0:
            return True
        return any(e.is_known_trivial(self.node) for e in self.entries)

    def describe(self) -> str:
        where = _node_name(self.node)
        return f"{self.coefficient}*{{{self.entries[0].block}, {self.entries[1].block}}}_{where}"


def _p(node: Node) -> int:
    return node.p if isinstance(node, (PadicField, KummerExtension)) else node.base.p


def _node_name(node: Node) -> str:
    if isinstance(node, KummerExtension):
        return f"K({node.level}-class^(1/p))"
    return f"[e={node.e}, f={node.f}]"


def block_of(x: PadicElement, coords: Sequence[int] | None = None) -> Block:
    coords = class_vector(x) if coords is None else tuple(coords)
    if not any(coords):
        return TRIVIAL
    if coords[0] % x.field.p:
        return FULL
    return UnitClass(working_field(x.field), coords).level


def entry_of(x: PadicElement) -> Entry:
    """Entry over a tower node, with class coordinates computed once."""
    coords = class_vector(x)
    return Entry(x, block_of(x, coords), coords=coords)


def make_symbol(node: PadicField, a, b, lattice: FieldLattice | None = None,
                coefficient: int = 1) -> SymbolTerm:
    """{a, b} over ``node``; entries may be elements or classes with representatives."""
    ea, eb = _as_element(node, a), _as_element(node, b)
    zeta = lattice.zeta(node) if lattice is not None else None
    return SymbolTerm(node, (entry_of(ea), entry_of(eb)), coefficient, zeta)


def _as_element(node: PadicField, x) -> PadicElement:
    W = working_field(node)
    if isinstance(x, UnitClass):
        if x.field.shape != node.shape:
            raise NodeMismatch("class lives over a different field")
        x = x.rep if x.rep is not None else basis_product(W, x.coords)
    if isinstance(x, PadicElement):
        if x.field.shape != node.shape:
            raise NodeMismatch(f"{x.field} is not the node {node}")
        return W(x)
    return W(x)


def evaluate_h(t: SymbolTerm) -> int:
    """Hilbert exponent of the entries over the node, times the coefficient."""
    p = _p(t.node)
    if t.is_zero:
        return 0
    if isinstance(t.node, KummerExtension):
        raise PatternUnsupported("evaluation over a Kummer node needs a trivial entry")
    a, b = t.entries
    return t.coefficient * exponent(a.class_coords(), b.class_coords(), t.node, zeta=t.zeta) % p


# -- projection formula -----------------------------------------------------------------
def _edge_ends(edge) -> tuple[PadicField, Node]:
    if isinstance(edge, KummerExtension):
        return edge.base, edge
    return edge.base, edge.top


def _same_node(x: Node, y: Node) -> bool:
    if isinstance(x, KummerExtension) or isinstance(y, KummerExtension):
        return x is y
    return x.shape == y.shape


def _restrict(edge, x: PadicElement):
    if isinstance(edge, KummerExtension):
        return tuple(edge.restrict(x))
    return edge.restrict(x)


def _norm(edge, y) -> PadicElement:
    if isinstance(edge, KummerExtension):
        return edge.norm(list(y))
    return edge.norm(y)


def _entry_over(node: Node, value, root=None) -> Entry:
    if isinstance(node, KummerExtension):
        return Entry(tuple(value), "L", root)
    return entry_of(value)


def pf_rewrite(t: SymbolTerm, edge, direction: str, slot: int, preimage,
               root=None, lattice: FieldLattice | None = None) -> list[SymbolTerm]:
    """Apply {Res x, y}_top == {x, N y}_base to one term.

    ``direction="down"``: ``t`` sits over the top of ``edge`` and its entry in
    ``slot`` is the restriction of ``preimage`` (a base element).
    ``direction="up"``: ``t`` sits over the base and its entry in ``slot`` has
    the same class as ``N(preimage)`` for ``preimage`` over the top; the other
    entry is restricted. ``root`` optionally certifies that the restricted
    entry is a p-th power over a Kummer node.
    """
    base, top = _edge_ends(edge)
    other = 1 - slot
    if direction == "down":
        if not _same_node(t.node, top):
            raise EdgeMismatch("term does not sit over the top of the edge")
        res = _restrict(edge, preimage)
        if isinstance(top, KummerExtension):
            ok = top.equal(list(res), list(t.entries[slot].value))
        else:
            ok = class_vector(res) == t.entries[slot].class_coords()
        if not ok:
            raise EdgeMismatch("designated entry is not the restriction of the preimage")
        new = [None, None]
        new[slot] = entry_of(preimage)
        new[other] = entry_of(_norm(edge, t.entries[other].value))
        zeta = lattice.zeta(base) if lattice is not None else None
        return [SymbolTerm(base, (new[0], new[1]), t.coefficient, zeta)]
    if direction == "up":
        if not _same_node(t.node, base):
            raise EdgeMismatch("term does not sit over the base of the edge")
        if class_vector(_norm(edge, preimage)) != t.entries[slot].class_coords():
            raise EdgeMismatch("designated entry is not the norm of the preimage")
        new = [None, None]
        new[slot] = _entry_over(top, preimage)
        new[other] = _entry_over(top, _restrict(edge, t.entries[other].value), root)
        zeta = None
        if lattice is not None and not isinstance(top, KummerExtension):
            zeta = lattice.zeta(top)
        return [SymbolTerm(top, (new[0], new[1]), t.coefficient, zeta)]
    raise ValueError(f"unknown direction {direction!r}")


def simplify(terms: Sequence[SymbolTerm]) -> list[SymbolTerm]:
    """Drop terms with a certified trivial entry or zero coefficient."""
    return [t for t in terms if not t.is_zero]


# -- zero witnesses ----------------------------------------------------------------------
@dataclass
class WitnessStep:
    kind: str
    detail: str
    data: dict = field(default_factory=dict)


@dataclass
class WitnessTrace:
    """Explicit norm preimage plus the projection-formula steps."""

    term: SymbolTerm
    pattern: str
    steps: list[WitnessStep]
    final: list[SymbolTerm]

    def render(self) -> str:
        lines = [f"pattern: {self.pattern}", f"start:   {self.term.describe()}"]
        for i, s in enumerate(self.steps, 1):
            lines.append(f"  {i}. [{s.kind}] {s.detail}")
        lines.append("result:  0" if not self.final else f"result:  {[t.describe() for t in self.final]}")
        return "\n".join(lines)


def _solve_norm(ext: KummerExtension, target: Sequence[int], min_level: int, units_only: bool):
    """(combination, candidates) with sum lam_i class(N(c_i)) == target, or None."""
    p = ext.p
    rows: list[list[int]] = []
    cands = []
    for cand in ext.candidates(min_level=min_level):
        if units_only and cand.level == HAS_UNIFORMIZER:
            continue
        v = list(class_vector(ext.norm(list(cand.poly))))
        if not linalg.in_span(v, rows, p):
            rows.append(v)
            cands.append(cand)
        combo = linalg.solve_combination(rows, list(target), p)
        if combo is not None:
            return [c % p for c in combo], cands
    return None


def _pth_root(W: PadicField, x: PadicElement) -> PadicElement:
    roots = hensel_roots([-x] + [0] * (W.p - 1) + [1], W)
    if not roots:
        raise NotANorm("expected a p-th power")
    return roots[0]


def zero_witness(t: SymbolTerm) -> WitnessTrace:
    """Reduce a single symbol with trivial pairing to zero by explicit norms.

    Pattern "norm-of-unit": first entry a unit, L = K(b^(1/p)); pick a~ over L
    with N(a~) = a up to p-th powers, then {a, b} = {a~, Res b}_L and Res b is
    a p-th power in L.
    Pattern "unramified": one entry of level p*e0, L = K(a^(1/p)) unramified;
    lift the other entry through the surjective norm on U_L^m.
    """
    node = t.node
    if isinstance(node, KummerExtension):
        raise PatternUnsupported("witnesses start from a tower node")
    W = working_field(node)
    p = W.p
    steps: list[WitnessStep] = []
    if t.is_zero:
        steps.append(WitnessStep("trivial-entry", "an entry is a p-th power; the term is zero"))
        return WitnessTrace(t, "trivial", steps, [])
    if evaluate_h(t) != 0:
        raise NotANorm(f"pairing of {t.describe()} is nontrivial")
    a, b = t.entries
    pe0 = W.pe0
    # choose pattern
    # lift the entry in `slot` to L = K(other^(1/p))
    if b.block == pe0 and a.block != FULL:
        return _witness(t, W, slot=0, pattern="unramified", min_level=_lvl(a.block))
    if a.block == pe0 and b.block != FULL:
        return _witness(t, W, slot=1, pattern="unramified", min_level=_lvl(b.block))
    if a.block != FULL:
        return _witness(t, W, slot=0, pattern="norm-of-unit", min_level=1)
    if b.block != FULL:
        return _witness(t, W, slot=1, pattern="norm-of-unit", min_level=1)
    raise PatternUnsupported("both entries involve the uniformizer")


def _lvl(block: Block) -> int:
    return max(int(block), 1) if block not in (FULL, TRIVIAL) else 1


def _witness(t: SymbolTerm, W: PadicField, slot: int, pattern: str, min_level: int) -> WitnessTrace:
    """Lift entry ``slot`` to L = K(other^(1/p)) and push the symbol up.

    The entry is matched to a product of candidate norms; bilinearity splits
    the symbol into one term per candidate, and each term goes up separately
    (multiplying the candidates first would pile up pi-content).
    """
    p = W.p
    other = 1 - slot
    y = t.entries[other].value
    ext, r = kummer_line(W, t.entries[other].class_coords())
    units_only = pattern == "norm-of-unit"
    level_floor = min_level if pattern == "unramified" else 1
    found = _solve_norm(ext, t.entries[slot].class_coords(), level_floor, units_only)
    if found is None:
        raise NotANorm("no norm preimage found among spanning candidates")
    combo, cands = found
    used = [(c, lam) for c, lam in zip(cands, combo) if lam]
    steps = [
        WitnessStep(
            "norm-preimage",
            f"entry {slot} = prod N_(L/K)(c_i)^lam_i up to p-th powers, L = K(entry {other}^(1/p)) "
            f"[{ext.classification}], {len(used)} candidate(s)",
            {"combination": [lam for _, lam in used], "candidates": [c.label for c, _ in used]},
        )
    ]
    # Res y = (beta^r * kappa)^p with kappa^p = y / b_canon^r
    kappa = _pth_root(W, y / ext.radicand**r if r else y)
    root = ext.mul(ext.pow(ext.beta, r), ext.restrict(kappa))
    split = _split_terms(t, ext, slot, used)
    steps.append(WitnessStep("class-substitution",
                             f"{{entry, y}} = sum lam_i {{N c_i, y}}: same class, bilinearity ({len(split)} terms)"))
    up = [u for term, cand in split for u in pf_rewrite(term, ext, "up", slot, list(cand.poly), root=root)]
    steps.append(WitnessStep("pf-up", "{N c_i, y}_K = {c_i, Res y}_L for each term", {"root_exponent": r}))
    final = simplify(up)
    steps.append(WitnessStep("pth-power", "Res y = (beta^r kappa)^p over L, so every term vanishes"))
    trace = WitnessTrace(t, pattern, steps, final)
    trace.steps[0].data.update({"ext": ext, "used": used, "root": root, "slot": slot})
    return trace


def _split_terms(t: SymbolTerm, ext: KummerExtension, slot: int, used) -> list[tuple[SymbolTerm, Any]]:
    out = []
    for cand, lam in used:
        sub = list(t.entries)
        sub[slot] = entry_of(ext.norm(list(cand.poly)))
        out.append((SymbolTerm(t.node, (sub[0], sub[1]), t.coefficient * lam, t.zeta), cand))
    return out


def replay_witness(trace: WitnessTrace) -> list[SymbolTerm]:
    """Re-run every step of a trace through pf_rewrite; returns the final sum."""
    t = trace.term
    if trace.pattern == "trivial":
        return simplify([t])
    data = trace.steps[0].data
    ext, used, root, slot = data["ext"], data["used"], data["root"], data["slot"]
    p = ext.p
    split = _split_terms(t, ext, slot, used)
    total = [0] * len(t.entries[slot].class_coords())
    for term, _ in split:
        lam = term.coefficient * pow(t.coefficient, -1, p)
        total = [(a + lam * b) % p for a, b in zip(total, term.entries[slot].class_coords())]
    if tuple(total) != tuple(c % p for c in t.entries[slot].class_coords()):
        raise NotANorm("replayed norms do not recombine to the entry's class")
    if not ext.equal(ext.pow(root, p), ext.restrict(t.entries[1 - slot].value)):
        raise NotANorm("replayed root is not a p-th root of the restricted entry")
    return simplify([u for term, cand in split for u in pf_rewrite(term, ext, "up", slot, list(cand.poly), root=root)])


def trivial_symbols(K: PadicField, pattern: str, count: int, seed: int = 0) -> list[SymbolTerm]:
    """Seeded symbols with trivial pairing that ``zero_witness`` routes to ``pattern``.

    "unramified": a unit against an element of level p*e0.
    "norm-of-unit": a unit of level below p*e0 against a random element, kept
    only when the pairing vanishes.
    """
    W = working_field(K)
    pe0 = W.pe0
    rng = random.Random(f"{seed}:{W.shape}:{pattern}")
    out: list[SymbolTerm] = []
    while len(out) < count:
        if pattern == "unramified":
            x = _random_in_block(W, rng.randrange(pe0), rng)
            y = _random_in_block(W, pe0, rng)
            if rng.randrange(2):
                x, y = y, x
        elif pattern == "norm-of-unit":
            x = _random_in_block(W, rng.randrange(pe0), rng)
            y = _random_in_block(W, FULL if rng.randrange(2) else rng.randrange(pe0), rng)
        else:
            raise PatternUnsupported(f"unknown pattern {pattern!r}")
        t = make_symbol(W, x, y)
        if t.is_zero or evaluate_h(t) != 0:
            continue
        if pattern == "norm-of-unit" and pe0 in (t.entries[0].block, t.entries[1].block):
            continue
        out.append(t)
    return out


# -- block classification ---------------------------------------------------------------
@dataclass(frozen=True)
class BlockRule:
    dimension: int
    rule: str


def classify_block(K: PadicField, m: Block, n: Block) -> BlockRule:
    """The dimension of U-bar^m (x)^M U-bar^n mod p from the structure rules."""
    if not K.has_integral_e0:
        raise NoMuP(f"mu_p is not contained in {K}")
    pe0 = K.pe0
    if m == TRIVIAL or n == TRIVIAL:
        return BlockRule(0, "trivial factor")
    if m == FULL and n == FULL:
        return BlockRule(1, "G_m (x) G_m mod p = K_2/p = Z/p")
    if m == FULL or n == FULL:
        lv = int(n if m == FULL else m)
        if lv == 0:
            return BlockRule(1, "U^0 (x) G_m mod p = K_2/p = Z/p")
        if lv > pe0:
            return BlockRule(0, f"U^{lv} = 0 beyond p*e0")
        return BlockRule(1, f"full (x) U^{lv}: nonzero iff {lv} <= p*e0")
    lo, hi = sorted((int(m), int(n)))
    if hi > pe0:
        return BlockRule(0, f"U^{hi} = 0 beyond p*e0")
    if lo == 0:
        if hi < pe0:
            return BlockRule(1, f"U^0 (x) U^{hi}: nonzero iff {hi} < p*e0")
        return BlockRule(0, "U^0 (x) U^(p e0) = 0")
    if hi == pe0:
        return BlockRule(0, f"U^(p e0) (x) U^{lo} = 0")
    raise RuleChainNotFound(f"no structure rule for U^{lo} (x) U^{hi} with 0 < {lo}, {hi} < p*e0")


def product_dimension(K: PadicField, m: Block, n: Block) -> int:
    return classify_block(K, m, n).dimension


def _random_in_block(W: PadicField, block: Block, rng: random.Random) -> PadicElement:
    size = W.e * W.f
    while True:
        u = W.element([rng.randrange(W.modulus) for _ in range(size)])
        if block == FULL:
            if u.is_unit():
                return W.pi ** rng.randrange(0, W.p) * u
            continue
        lv = int(block)
        if lv > 0:
            return W.one + W.pi**lv * u
        if u.is_unit():
            return u


def _basis_pair(K: PadicField, m: Block, n: Block):
    pm = pairing_matrix(K)
    for i in subgroup_indices(pm.field, m):
        for j in subgroup_indices(pm.field, n):
            if pm.matrix[i][j] % K.p:
                return i, j
    return None


@dataclass
class BlockCertificate:
    field: PadicField
    blocks: tuple[Block, Block]
    dimension: int | None
    rule: str
    evidence: str
    samples: int = 0
    witnesses: int = 0
    ok: bool = True
    lower_bound: int | None = None


def certify_block(K: PadicField, m: Block, n: Block, samples: int = 200,
                  witnesses: int = 5, seed: int = 0) -> BlockCertificate:
    """Dimension of a block, certified by a nonzero symbol or by sampling."""
    W = working_field(K)
    try:
        rule = classify_block(W, m, n)
    except RuleChainNotFound as exc:
        pair = _basis_pair(W, m, n)
        return BlockCertificate(W, (m, n), None, "unclassified", str(exc), ok=True,
                                lower_bound=1 if pair else 0)
    if rule.dimension == 1:
        pair = _basis_pair(W, m, n)
        if pair is None:
            return BlockCertificate(W, (m, n), 1, rule.rule, "no nontrivial basis pair", ok=False)
        reps = basis_data(W).reps
        t = make_symbol(W, reps[pair[0]], reps[pair[1]])
        h = evaluate_h(t)
        return BlockCertificate(W, (m, n), 1, rule.rule,
                                f"h(basis_{pair[0]}, basis_{pair[1]}) = {h}", ok=h != 0, lower_bound=1)
    rng = random.Random(f"{seed}:{W.shape}:{m}:{n}")
    ok = True
    built = 0
    for k in range(samples):
        if m == TRIVIAL or n == TRIVIAL:
            break
        x = _random_in_block(W, m, rng)
        y = _random_in_block(W, n, rng)
        t = make_symbol(W, x, y)
        if evaluate_h(t) != 0:
            ok = False
            break
        if built < witnesses:
            try:
                trace = zero_witness(t)
            except PatternUnsupported:
                continue
            if replay_witness(trace):
                ok = False
                break
            built += 1
    return BlockCertificate(W, (m, n), 0, rule.rule, f"{samples} samples vanish, {built} witnesses replayed",
                            samples=samples, witnesses=built, ok=ok, lower_bound=0)


def dims_grid(K: PadicField, max_level: int | None = None, samples: int = 200,
              witnesses: int = 5, seed: int = 0) -> list[BlockCertificate]:
    W = working_field(K)
    top = W.pe0 + 1 if max_level is None else max_level
    blocks: list[Block] = [FULL] + list(range(top + 1))
    return [certify_block(W, m, n, samples, witnesses, seed) for m in blocks for n in blocks]


# -- curves ------------------------------------------------------------------------------------
@dataclass
class CurvePairReport:
    blocks: list[dict]
    total_dimension: int
    injective: bool


def curve_pair_blocks(E1, E2, samples: int = 20, witnesses: int = 2, seed: int = 0) -> CurvePairReport:
    """Split E1/p (x)^M E2/p into four blocks from the two Kummer descriptors."""
    from .elliptic import GOOD_SUPERSINGULAR, classify_reduction, kummer_image
    from .errors import AdditiveRefused, NonsplitUnsupported, SupersingularFirstArgument, UnsupportedReduction

    if E1.field.shape != E2.field.shape:
        raise NodeMismatch("curves over different fields")
    if classify_reduction(E1) == GOOD_SUPERSINGULAR:
        raise SupersingularFirstArgument("the first curve must not be supersingular")
    try:
        d1, d2 = kummer_image(E1), kummer_image(E2)
    except (AdditiveRefused, NonsplitUnsupported) as exc:
        raise UnsupportedReduction(str(exc)) from exc
    K = E1.field
    from .hilbert import image_order

    blocks = []
    total = 0
    injective = True
    for i, l1 in enumerate(d1.levels):
        for j, l2 in enumerate(d2.levels):
            cert = certify_block(K, l1, l2, samples, witnesses, seed)
            dim = cert.dimension or 0
            total += dim
            if dim:
                onto = image_order(K, l1, l2) == K.p
                injective = injective and onto and cert.ok
            blocks.append({"slot": (i, j), "blocks": (l1, l2), "dimension": dim,
                           "rule": cert.rule, "evidence": cert.evidence, "ok": cert.ok})
    return CurvePairReport(blocks, total, injective)


# -- triple products ---------------------------------------------------------------------------
@dataclass
class TripleVerdict:
    vanishes: bool
    rules: list[str]
    certificate: str = ""


def triple_vanishes(K: PadicField, blocks: Sequence[Block], samples: int = 10, seed: int = 0) -> TripleVerdict:
    """Whether U^a (x) U^b (x) U^c vanishes mod p, with the rule chain used."""
    if len(blocks) != 3:
        raise ValueError("need three blocks")
    W = working_field(K)
    pe0 = W.pe0
    for b in blocks:
        if b == TRIVIAL or (b != FULL and int(b) > pe0):
            return TripleVerdict(True, [f"U^{b} = 0: zero factor"])
    pairs = [(0, 1), (0, 2), (1, 2)]
    for i, j in pairs:
        try:
            rule = classify_block(W, blocks[i], blocks[j])
        except RuleChainNotFound:
            continue
        if rule.dimension == 0:
            cert = certify_block(W, blocks[i], blocks[j], samples, min(samples, 3), seed)
            return TripleVerdict(True, [f"{rule.rule}: zero factor"], cert.evidence)
    for i, j in pairs:
        if FULL in (blocks[i], blocks[j]) or 0 in (blocks[i], blocks[j]):
            try:
                rule = classify_block(W, blocks[i], blocks[j])
            except RuleChainNotFound:
                continue
            return TripleVerdict(True, [f"{rule.rule} (a K_2/p quotient)",
                                        "(G_m/p)^(x)3 = 0: the Milnor K_3 part vanishes mod p"])
    raise RuleChainNotFound(f"no rule chain for {tuple(blocks)}")
