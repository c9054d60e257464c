"""Construction recipes: a JSON DAG of named nodes evaluated through the library.

A recipe is ``{"nodes": {name: node, ...}, "output": name | [names]}``; a
bare node (a dict with ``"kind"``) is accepted as a one-node recipe.  Nodes
refer to each other by name.  See docs/recipes.md for every kind.
"""

from __future__ import annotations

import json

from . import evaluation, matprod, quantum, subfield
from .codes import LinearCode, default_budget
from .errors import ArgumentError, PreconditionError, UndefinedDistanceError
from .evaluation import DefiningSet, EvaluationDomain
from .galois import field_new


class RecipeError(ArgumentError):
    """The recipe does not follow the schema."""


CODE_KINDS = {"rm", "hyperbolic", "affine", "subfield", "dual", "matprod", "f2_triple", "f3_pair"}
QUANTUM_KINDS = {"css", "css_self", "steane", "extend", "subcode"}
KINDS = CODE_KINDS | QUANTUM_KINDS | {"gv_check"}

# required fields and the fields naming other nodes
_REQUIRED = {
    "rm": ("p", "r", "m", "order"),
    "hyperbolic": ("p", "r", "m", "t"),
    "affine": ("p", "r", "delta"),
    "subfield": ("p", "r", "s", "delta"),
    "dual": ("code",),
    "matprod": ("codes", "matrix"),
    "f2_triple": ("codes",),
    "f3_pair": ("codes",),
    "css": ("codes",),
    "css_self": ("code",),
    "steane": ("code", "larger"),
    "extend": ("source",),
    "subcode": ("source", "k"),
    "gv_check": ("source",),
}


def _refs(node):
    out = []
    for key in ("code", "larger", "source"):
        if key in node:
            out.append(node[key])
    out.extend(node.get("codes", ()))
    return out


def normalize(recipe):
    """Validate ``recipe`` and return it in the ``{"nodes", "output"}`` form."""
    if not isinstance(recipe, dict) or not recipe:
        raise RecipeError("a recipe must be a non-empty JSON object")
    if "kind" in recipe:
        recipe = {"nodes": {"main": recipe}, "output": "main"}
    nodes = recipe.get("nodes")
    if not isinstance(nodes, dict) or not nodes:
        raise RecipeError("recipe needs a non-empty 'nodes' object")
    for name, node in nodes.items():
        if not isinstance(node, dict):
            raise RecipeError(f"node {name!r} is not an object")
        kind = node.get("kind")
        if kind not in KINDS:
            raise RecipeError(f"node {name!r}: unknown kind {kind!r}")
        for key in _REQUIRED[kind]:
            if key not in node:
                raise RecipeError(f"node {name!r} ({kind}) lacks {key!r}")
        if "codes" in node and (not isinstance(node["codes"], list) or not node["codes"]):
            raise RecipeError(f"node {name!r}: 'codes' must be a non-empty list")
        for ref in _refs(node):
            if ref not in nodes:
                raise RecipeError(f"node {name!r} refers to unknown node {ref!r}")
    output = recipe.get("output", list(nodes)[-1])
    outs = [output] if isinstance(output, str) else list(output)
    for o in outs:
        if o not in nodes:
            raise RecipeError(f"output {o!r} is not a node")
    _check_acyclic(nodes)
    return {"nodes": nodes, "output": output}


def _check_acyclic(nodes):
    state = {}

    def visit(name):
        if state.get(name) == 1:
            raise RecipeError(f"recipe has a cycle through {name!r}")
        if state.get(name) == 2:
            return
        state[name] = 1
        for ref in _refs(nodes[name]):
            visit(ref)
        state[name] = 2

    for name in nodes:
        visit(name)


def load(path):
    with open(path) as fh:
        try:
            return normalize(json.load(fh))
        except json.JSONDecodeError as exc:
            raise RecipeError(f"{path}: invalid JSON ({exc})") from None


def _domain(node, ctx):
    if "N" in node:
        return EvaluationDomain.torus(ctx, node["N"])
    if "m" in node:
        return EvaluationDomain.grid(ctx, int(node["m"]))
    raise RecipeError("a defining set needs 'N' (torus) or 'm' (grid)")


def _delta(node, ctx):
    dom = _domain(node, ctx)
    els = []
    for a in node["delta"]:
        a = [a] if isinstance(a, int) else list(a)
        if dom.kind == evaluation.GRID:
            a = [evaluation.reduce_grid_exponent(int(x), ctx.q) for x in a]
        els.append(tuple(a))
    return DefiningSet(dom, tuple(els), node.get("s"))


def _matrix(spec, name):
    if isinstance(spec, str):
        return matprod.named_matrix(spec)
    if isinstance(spec, dict) and {"p", "r", "rows"} <= set(spec):
        return matprod.MPMatrix.from_json(spec, name=f"{name}.matrix")
    raise RecipeError(f"node {name!r}: matrix must be a name or {{p, r, rows}}")


class Evaluator:
    """Evaluates the nodes of one recipe, each at most once."""

    def __init__(self, recipe, budget=None, close_orbits=False, jobs=1):
        self.recipe = normalize(recipe)
        self.nodes = self.recipe["nodes"]
        self.budget = default_budget() if budget is None else budget
        self.close_orbits = close_orbits
        self.jobs = jobs
        self._memo = {}

    def __getitem__(self, name):
        if name not in self._memo:
            node = self.nodes[name]
            try:
                value = self._build(name, node)
            except PreconditionError as exc:
                if str(exc).startswith("node "):
                    raise
                raise PreconditionError(f"node {name!r}: {exc}", step=exc.step) from None
            if isinstance(value, LinearCode) and "designed_distance" in node:
                value.designed_distance = int(node["designed_distance"])
                value.designed_source = node.get("designed_source", "recipe")
            self._memo[name] = value
        return self._memo[name]

    def _code(self, name, ref):
        v = self[ref]
        if not isinstance(v, LinearCode):
            raise RecipeError(f"node {name!r}: {ref!r} is not a classical code")
        return v

    def _quantum(self, name, ref):
        v = self[ref]
        if not isinstance(v, quantum.QuantumParams):
            raise RecipeError(f"node {name!r}: {ref!r} is not a quantum code")
        return v

    def _build(self, name, node):
        kind = node["kind"]
        b = self.budget
        if kind in ("rm", "hyperbolic", "affine", "subfield"):
            ctx = field_new(int(node["p"]), int(node["r"]))
        if kind == "rm":
            return evaluation.reed_muller_code(int(node["order"]), int(node["m"]), ctx)
        if kind == "hyperbolic":
            return evaluation.hyperbolic_code(int(node["t"]), int(node["m"]), ctx)
        if kind == "affine":
            return evaluation.affine_variety_code(_delta(node, ctx))
        if kind == "subfield":
            delta = _delta(node, ctx)
            s = int(node["s"])
            close = bool(node.get("close_orbits", self.close_orbits))
            part = node.get("part", "dual")
            if part == "primal":
                return subfield.subfield_code_from_delta(delta, s, close)
            if part == "dual":
                return subfield.dual_subfield_code(delta, s, close)
            raise RecipeError(f"node {name!r}: part must be 'primal' or 'dual'")
        if kind == "dual":
            return self._code(name, node["code"]).dual()
        if kind == "matprod":
            codes = [self._code(name, c) for c in node["codes"]]
            return matprod.mp_code(codes, _matrix(node["matrix"], name), b)
        if kind == "f2_triple":
            C1, C2 = [self._code(name, c) for c in node["codes"]]
            return matprod.mp_f2_triple(C1, C2, b)
        if kind == "f3_pair":
            C1, C2 = [self._code(name, c) for c in node["codes"]]
            return matprod.mp_f3_pair(C1, C2, b)
        if kind == "css":
            C1, C2 = [self._code(name, c) for c in node["codes"]]
            return quantum.css_pair(C1, C2, b)
        if kind == "css_self":
            return quantum.css_self(self._code(name, node["code"]), b)
        if kind == "steane":
            return quantum.steane(self._code(name, node["code"]), self._code(name, node["larger"]), b)
        if kind == "extend":
            return quantum.extend(self._quantum(name, node["source"]))
        if kind == "subcode":
            return quantum.subcode(self._quantum(name, node["source"]), int(node["k"]))
        if kind == "gv_check":
            Q = self._quantum(name, node["source"])
            return {"type": "gv_check", "params": Q.to_json(), "exceeds_gv": quantum.exceeds_gv(Q)}
        raise RecipeError(f"unknown kind {kind!r}")  # unreachable after normalize

    def record(self, name):
        """JSON-ready description of node ``name``."""
        v = self[name]
        if isinstance(v, quantum.QuantumParams):
            return {"type": "quantum", **v.to_json()}
        if isinstance(v, dict):
            return v
        return code_record(v, self.budget, self.jobs)

    def run(self):
        out = self.recipe["output"]
        if isinstance(out, str):
            return self.record(out)
        return {o: self.record(o) for o in out}


def code_record(C, budget=None, jobs=1):
    out = {"type": "code", "q": C.ctx.q, "n": C.n, "k": C.k}
    try:
        d, exact = C.min_weight(budget, jobs=jobs)
    except UndefinedDistanceError:
        d, exact = None, True
    out["d"] = d
    out["d_exact"] = exact
    out["designed_source"] = None if exact else C.designed_source
    out["dual_containing"] = C.is_dual_containing()
    return out


def run_recipe(recipe, budget=None, close_orbits=False, jobs=1):
    return Evaluator(recipe, budget, close_orbits, jobs).run()
