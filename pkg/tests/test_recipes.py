import json

import pytest

from qcf import recipes
from qcf.errors import PreconditionError
from qcf.recipes import RecipeError

RM_CSS = {
    "nodes": {
        "rm2": {"kind": "rm", "p": 2, "r": 1, "m": 4, "order": 2},
        "rm3": {"kind": "rm", "p": 2, "r": 1, "m": 4, "order": 3},
        "q": {"kind": "css_self", "code": "rm2"},
        "se": {"kind": "steane", "code": "rm2", "larger": "rm3"},
        "ext": {"kind": "extend", "source": "se"},
        "sub": {"kind": "subcode", "source": "ext", "k": 8},
        "gv": {"kind": "gv_check", "source": "q"},
    },
    "output": ["rm2", "q", "se", "ext", "sub", "gv"],
}


def test_run_recipe_values():
    out = recipes.run_recipe(RM_CSS)
    assert {k: out["rm2"][k] for k in ("n", "k", "d", "d_exact")} == {"n": 16, "k": 11, "d": 4, "d_exact": True}
    assert (out["q"]["n"], out["q"]["k"], out["q"]["d_bound"]) == (16, 6, 4)
    assert (out["se"]["k"], out["se"]["d_bound"]) == (10, 3)
    assert (out["ext"]["n"], out["sub"]["k"]) == (17, 8)
    assert out["gv"]["type"] == "gv_check"


def test_round_trip_is_byte_identical(tmp_path):
    first = json.dumps(recipes.run_recipe(RM_CSS), sort_keys=True)
    path = tmp_path / "r.json"
    path.write_text(json.dumps(RM_CSS))
    again = json.dumps(recipes.run_recipe(recipes.load(path)), sort_keys=True)
    assert first == again


def test_bare_node():
    out = recipes.run_recipe({"kind": "rm", "p": 3, "r": 1, "m": 2, "order": 2})
    assert (out["n"], out["k"], out["d"]) == (9, 6, 3)


def test_all_code_kinds():
    rec = {
        "nodes": {
            "hyp": {"kind": "hyperbolic", "p": 3, "r": 1, "m": 2, "t": 6},
            "aff": {"kind": "affine", "p": 2, "r": 4, "N": [5, 3], "delta": [[0, 0], [1, 1]]},
            "grid": {"kind": "affine", "p": 3, "r": 2, "m": 1, "delta": [0, 9]},
            "sub": {"kind": "subfield", "p": 2, "r": 4, "s": 1, "N": [15], "delta": [1, 2, 4, 8], "part": "primal"},
            "dual": {"kind": "dual", "code": "sub"},
            "a": {"kind": "rm", "p": 2, "r": 2, "m": 2, "order": 5},
            "mp": {"kind": "matprod", "codes": ["a", "a", "a"], "matrix": "gf4_nsc3_1"},
            "inline": {"kind": "matprod", "codes": ["a", "a"], "matrix": {"p": 2, "r": 2, "rows": [[2, 3], [3, 2]]}},
        },
        "output": ["hyp", "aff", "grid", "sub", "dual", "mp", "inline"],
    }
    out = recipes.run_recipe(rec)
    assert (out["hyp"]["n"], out["hyp"]["d"]) == (9, 3)
    assert (out["aff"]["n"], out["aff"]["k"]) == (15, 2)
    # exponent 9 reduces to 1 on the grid over GF(9)
    assert out["grid"]["k"] == 2
    assert (out["sub"]["k"], out["dual"]["k"]) == (4, 11)
    assert (out["mp"]["n"], out["mp"]["k"]) == (48, 45)
    assert out["inline"]["n"] == 32


def test_designed_distance_override():
    rec = {"nodes": {"c": {"kind": "rm", "p": 2, "r": 1, "m": 4, "order": 2, "designed_distance": 4, "designed_source": "published"}}}
    out = recipes.run_recipe(rec, budget=8)
    assert (out["d"], out["d_exact"], out["designed_source"]) == (4, False, "published")


@pytest.mark.parametrize(
    "bad",
    [
        {},
        [],
        {"nodes": {}},
        {"nodes": {"a": {"kind": "nope"}}},
        {"nodes": {"a": {"kind": "rm", "p": 2}}},
        {"nodes": {"a": {"kind": "dual", "code": "b"}}},
        {"nodes": {"a": {"kind": "dual", "code": "b"}, "b": {"kind": "dual", "code": "a"}}},
        {"nodes": {"a": {"kind": "rm", "p": 2, "r": 1, "m": 2, "order": 1}}, "output": "z"},
        {"nodes": {"a": {"kind": "css", "codes": []}}},
        {"nodes": {"a": 3}},
    ],
)
def test_schema_errors(bad):
    with pytest.raises(RecipeError):
        recipes.normalize(bad)


def test_type_errors_between_nodes():
    rec = {"nodes": {"a": {"kind": "rm", "p": 2, "r": 1, "m": 4, "order": 2}, "e": {"kind": "extend", "source": "a"}}}
    with pytest.raises(RecipeError):
        recipes.run_recipe(rec)


def test_precondition_names_node():
    rec = {"nodes": {"a": {"kind": "rm", "p": 2, "r": 1, "m": 4, "order": 1}, "q": {"kind": "css_self", "code": "a"}}}
    with pytest.raises(PreconditionError, match="node 'q'"):
        recipes.run_recipe(rec)


def test_unclosed_subfield_set():
    node = {"kind": "subfield", "p": 2, "r": 4, "s": 1, "N": [15], "delta": [1]}
    with pytest.raises(RecipeError.__mro__[1]):
        recipes.run_recipe(node)
    assert recipes.run_recipe(node, close_orbits=True)["n"] == 15


def test_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    with pytest.raises(RecipeError):
        recipes.load(path)
