"""Transition cocycles over the star cover, the lifting obstruction h_ijk,
and an exhaustive lift-existence search used as an independent oracle.

The search and the cohomological decision are kept strictly separate: the
search multiplies group elements, the decision classifies a cochain. Their
agreement is a theorem-level test, not a shared code path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    CoverTooCoarseError,
    InputError,
    InternalInvariantError,
)
from .groups import (
    CentralExtension,
    DirectProduct,
    FiniteTable,
    IntegerAdditive,
    RationalAdditive,
    UnitQuaternion,
    nearest_lift,
    section_lift,
)
from .simplicial import (
    Cochain,
    SimplicialComplex,
    classify_cocycle,
    cohomology_group,
    coboundary,
    star_nerve,
)

CONSTANT = "constant"
VERTEX_SAMPLED = "vertex_sampled"


class TransitionData:
    """Transition functions g_ij on the star cover.

    Constant mode stores one group element per directed edge; vertex-sampled
    mode stores a map from the vertices of U_ij to group elements. Only one
    direction per edge is required; the other is derived by inversion.
    """

    def __init__(self, complex_: SimplicialComplex, group, mode, g):
        if mode not in (CONSTANT, VERTEX_SAMPLED):
            raise InputError(f"unknown transition mode {mode!r}")
        self.complex = complex_
        self.group = group
        self.mode = mode
        self.g = {}
        for (i, j), value in g.items():
            i, j = int(i), int(j)
            if i == j or tuple(sorted((i, j))) not in complex_:
                raise InputError(f"({i},{j}) is not an edge of the complex")
            if mode == VERTEX_SAMPLED:
                value = {int(v): val for v, val in value.items()}
            self.g[(i, j)] = value
        self.cover = star_nerve(complex_)

    def has_direction(self, i, j):
        return (i, j) in self.g

    def value(self, i, j, vertex=None):
        """g_ij, or g_ij(vertex) in vertex-sampled mode; inverts as needed."""
        if (i, j) in self.g:
            raw = self.g[(i, j)]
            if self.mode == CONSTANT:
                return raw
            return raw[vertex]
        if (j, i) in self.g:
            raw = self.g[(j, i)]
            if self.mode == CONSTANT:
                return self.group.inv(raw)
            return self.group.inv(raw[vertex])
        raise InputError(f"no transition value on edge ({i},{j})")

    def edges(self):
        return self.complex.simplices_of_dim(1)

    def relabel(self, mapping, new_complex=None):
        m = {int(k): int(v) for k, v in mapping.items()}
        X2 = new_complex or self.complex.relabel(m)
        g2 = {}
        for (i, j), value in self.g.items():
            if self.mode == CONSTANT:
                g2[(m[i], m[j])] = value
            else:
                g2[(m[i], m[j])] = {m[v]: val for v, val in value.items()}
        return TransitionData(X2, self.group, self.mode, g2)


@dataclass
class TransitionReport:
    valid: bool
    violations: list

    def violation_simplices(self):
        return [v["simplex"] for v in self.violations]


def validate_transition(t: TransitionData) -> TransitionReport:
    """Check antisymmetry and the triple cocycle condition; list violations."""
    violations = []
    X = t.complex
    G = t.group

    def flag(kind, simplex, detail):
        violations.append({"kind": kind, "simplex": tuple(simplex), "detail": detail})

    for (i, j) in X.simplices_of_dim(1):
        fwd, bwd = t.has_direction(i, j), t.has_direction(j, i)
        if not fwd and not bwd:
            flag("missing-edge", (i, j), "no transition value on this edge")
            continue
        verts = t.cover.intersection_vertices((i, j)) if t.mode == VERTEX_SAMPLED else None
        for (a, b), present in (((i, j), fwd), ((j, i), bwd)):
            if not present:
                continue
            raw = t.g[(a, b)]
            if t.mode == CONSTANT:
                if not G.contains(raw):
                    flag("bad-value", (i, j), f"g_{a}{b} is not a group element")
            else:
                missing = [v for v in verts if v not in raw]
                extra = [v for v in raw if v not in verts]
                if missing:
                    flag("missing-vertex", (i, j), f"g_{a}{b} undefined at vertices {missing}")
                if extra:
                    flag("extra-vertex", (i, j), f"g_{a}{b} defined at non-overlap vertices {extra}")
                for v, val in raw.items():
                    if not G.contains(val):
                        flag("bad-value", (i, j), f"g_{a}{b}({v}) is not a group element")
        if fwd and bwd:
            if t.mode == CONSTANT:
                if not G.eq(t.g[(j, i)], G.inv(t.g[(i, j)])):
                    flag("antisymmetry", (i, j), "g_ji != inverse of g_ij")
            else:
                for v in verts:
                    if v in t.g[(i, j)] and v in t.g[(j, i)]:
                        if not G.eq(t.g[(j, i)][v], G.inv(t.g[(i, j)][v])):
                            flag("antisymmetry", (i, j), f"g_ji({v}) != inverse of g_ij({v})")

    if not any(v["kind"] in ("missing-edge", "missing-vertex", "bad-value") for v in violations):
        for (i, j, k) in X.simplices_of_dim(2):
            if t.mode == CONSTANT:
                prod = G.mul(G.mul(t.value(i, j), t.value(j, k)), t.value(k, i))
                if not G.eq(prod, G.identity()):
                    flag("cocycle", (i, j, k), f"g_ij g_jk g_ki = {G.format(prod)}")
            else:
                for v in t.cover.intersection_vertices((i, j, k)):
                    prod = G.mul(
                        G.mul(t.value(i, j, v), t.value(j, k, v)), t.value(k, i, v)
                    )
                    if not G.eq(prod, G.identity()):
                        flag(
                            "cocycle",
                            (i, j, k),
                            f"pointwise cocycle fails at vertex {v}: {G.format(prod)}",
                        )
    return TransitionReport(valid=not violations, violations=violations)


@dataclass
class ObstructionResult:
    complex: SimplicialComplex
    extension_name: str
    mode: str
    h: Cochain
    lifts: dict
    class2: object
    constancy_report: dict
    conventions: dict = field(default_factory=dict)

    def h_value(self, i, j, k):
        """Totally antisymmetric accessor for any vertex order."""
        return self.h.value_oriented((i, j, k))


def _check_base_matches(t: TransitionData, ext: CentralExtension):
    b = ext.base
    if type(b) is not type(t.group):
        raise InputError("extension base and transition group backends differ")
    if isinstance(b, FiniteTable) and (b.names != t.group.names or b.table != t.group.table):
        raise InputError("extension base and transition group tables differ")


def _bfs_lift(t, ext, edge, root=None, neighbor_key=None):
    """Deterministic nearest-lift propagation over the overlap of one edge."""
    i, j = edge
    verts = t.cover.intersection_vertices(edge)
    graph = {v: [] for v in verts}
    for a in verts:
        for b in verts:
            if a < b and tuple(sorted({i, j, a, b})) in t.complex:
                graph[a].append(b)
                graph[b].append(a)
    key = neighbor_key or (lambda v: v)
    lift = {}
    order = sorted(verts, key=key)
    start = root if root is not None else order[0]
    pending = [v for v in order if v != start]
    queue = [start]
    lift[start] = section_lift(ext, t.value(i, j, start))
    while queue:
        u = queue.pop(0)
        for w in sorted(graph[u], key=key):
            if w in lift:
                continue
            lift[w] = nearest_lift(ext, lift[u], t.value(i, j, w))
            queue.append(w)
    for v in pending:
        if v not in lift:
            # disconnected overlap component; anchor it by the section
            lift[v] = section_lift(ext, t.value(i, j, v))
    return lift


def compute_obstruction(
    t: TransitionData,
    ext: CentralExtension,
    roots=None,
    neighbor_key=None,
) -> ObstructionResult:
    """Lift the transitions and measure their failure to stay a cocycle.

    Constant mode lifts through the stored section. Vertex-sampled mode
    propagates nearest lifts along a breadth-first tree per edge, evaluates
    the triple products at every shared vertex and requires the result to
    be constant. The degree-2 class of the output is lift-choice invariant.
    """
    report = validate_transition(t)
    if not report.valid:
        first = report.violations[0]
        raise InputError(
            f"invalid transition data: {first['kind']} at {first['simplex']}: {first['detail']}"
        )
    _check_base_matches(t, ext)
    X = t.complex
    total = ext.total
    coeff = ext.fiber_coeff
    lifts = {}
    conventions = {
        "spanning_tree": "breadth-first from the minimal vertex" if not roots else "custom roots",
        "orientation": "ascending vertex tuples, signs by omitted position",
        "extension": ext.name,
    }

    if t.mode == CONSTANT:
        for (i, j) in X.simplices_of_dim(1):
            lifts[(i, j)] = section_lift(ext, t.value(i, j))
    else:
        if not (ext.fiber_is_finite() or isinstance(ext.fiber, IntegerAdditive)):
            raise InputError("vertex-sampled mode requires a discrete fiber")
        for (i, j) in X.simplices_of_dim(1):
            lifts[(i, j)] = _bfs_lift(
                t, ext, (i, j),
                root=(roots or {}).get((i, j)),
                neighbor_key=neighbor_key,
            )

    def lifted(i, j, v=None):
        if (i, j) in lifts:
            val = lifts[(i, j)]
            return val if t.mode == CONSTANT else val[v]
        val = lifts[(j, i)]
        return total.inv(val) if t.mode == CONSTANT else total.inv(val[v])

    h_values = {}
    constancy = {}
    for (i, j, k) in X.simplices_of_dim(2):
        if t.mode == CONSTANT:
            prod = total.mul(total.mul(lifted(i, j), lifted(j, k)), lifted(k, i))
            h_values[(i, j, k)] = ext.fiber_value_of(prod)
        else:
            seen = {}
            for v in t.cover.intersection_vertices((i, j, k)):
                prod = total.mul(
                    total.mul(lifted(i, j, v), lifted(j, k, v)), lifted(k, i, v)
                )
                seen[v] = ext.fiber_value_of(prod)
            vals = set(seen.values())
            if len(vals) > 1:
                raise CoverTooCoarseError((i, j, k), seen)
            h_values[(i, j, k)] = vals.pop()
            constancy[(i, j, k)] = seen

    h = Cochain(X, 2, coeff, h_values)
    if not coboundary(h).is_zero():
        raise InternalInvariantError("obstruction cochain is not a cocycle")
    group = cohomology_group(X, coeff, 2)
    class2 = classify_cocycle(h, group)
    return ObstructionResult(
        complex=X,
        extension_name=ext.name,
        mode=t.mode,
        h=h,
        lifts=lifts,
        class2=class2,
        constancy_report=constancy,
        conventions=conventions,
    )


@dataclass
class LiftSearchResult:
    status: str  # "found" | "no_lift" | "truncated"
    twists: dict | None
    assignments_total: int
    nodes_explored: int
    certificate: str

    @property
    def found(self):
        return self.status == "found"


def brute_force_lift_search(
    t: TransitionData, ext: CentralExtension, budget: int = 2 ** 24
) -> LiftSearchResult:
    """Try every fiber twist of the section lifts, in lexicographic order.

    Either returns the first assignment making every triple product the
    identity, or certifies that the whole space was covered. A budget
    overrun is reported explicitly, never treated as nonexistence.
    """
    if t.mode != CONSTANT:
        raise InputError("lift search requires constant-mode transition data")
    if not ext.fiber_is_finite():
        raise InputError("lift search requires a finite fiber")
    _check_base_matches(t, ext)
    report = validate_transition(t)
    if not report.valid:
        first = report.violations[0]
        raise InputError(
            f"invalid transition data: {first['kind']} at {first['simplex']}"
        )

    X = t.complex
    edges = list(X.simplices_of_dim(1))
    nz = len(ext.fiber_elements())
    total_assignments = nz ** len(edges)
    if total_assignments > budget:
        return LiftSearchResult(
            status="truncated",
            twists=None,
            assignments_total=total_assignments,
            nodes_explored=0,
            certificate=f"search truncated: {nz}^{len(edges)} assignments exceed budget {budget}",
        )

    G = ext.total
    base_lift = {e: section_lift(ext, t.value(*e)) for e in edges}
    fiber_elems = [ext.value_to_fiber(v) for v in range(nz)]
    embedded = [ext.embed(z) for z in fiber_elems]

    edge_index = {e: n for n, e in enumerate(edges)}
    triangles_at = [[] for _ in edges]
    for tri in X.simplices_of_dim(2):
        i, j, k = tri
        last = max(edge_index[(i, j)], edge_index[(j, k)], edge_index[(i, k)])
        triangles_at[last].append(tri)

    assign = [0] * len(edges)
    lifted = [None] * len(edges)
    nodes = 0
    ident = G.identity()

    def edge_lift(a, b):
        e = (a, b) if a < b else (b, a)
        val = lifted[edge_index[e]]
        return val if a < b else G.inv(val)

    def ok_after(level):
        for (i, j, k) in triangles_at[level]:
            prod = G.mul(G.mul(edge_lift(i, j), edge_lift(j, k)), edge_lift(k, i))
            if not G.eq(prod, ident):
                return False
        return True

    def search(level):
        nonlocal nodes
        if level == len(edges):
            return True
        for v in range(nz):
            nodes += 1
            assign[level] = v
            lifted[level] = G.mul(embedded[v], base_lift[edges[level]])
            if ok_after(level) and search(level + 1):
                return True
        return False

    if search(0):
        twists = {edges[n]: assign[n] for n in range(len(edges))}
        return LiftSearchResult(
            status="found",
            twists=twists,
            assignments_total=total_assignments,
            nodes_explored=nodes,
            certificate="lexicographically least valid twist assignment",
        )
    return LiftSearchResult(
        status="no_lift",
        twists=None,
        assignments_total=total_assignments,
        nodes_explored=nodes,
        certificate=(
            f"exhausted all {nz}^{len(edges)} twist assignments by backtracking; "
            "no assignment satisfies every triple"
        ),
    )


def verify_lift(t: TransitionData, ext: CentralExtension, twists) -> bool:
    """Recheck a claimed lift by direct multiplication; used by oracles."""
    G = ext.total

    def edge_lift(a, b):
        e = (a, b) if a < b else (b, a)
        val = G.mul(ext.embed(ext.value_to_fiber(twists[e])), section_lift(ext, t.value(*e)))
        return val if a < b else G.inv(val)

    for (i, j, k) in t.complex.simplices_of_dim(2):
        prod = G.mul(G.mul(edge_lift(i, j), edge_lift(j, k)), edge_lift(k, i))
        if not G.eq(prod, G.identity()):
            return False
    return True
