"""Recipe runner, emit formats, golden diffs on the fast recipes."""

import json

import pytest

from skewcode.errors import UnknownRecipe
from skewcode.recipes import RECIPES, ResultTable, emit, run_recipe


def test_unknown_recipe():
    with pytest.raises(UnknownRecipe):
        run_recipe("nope")


def test_emit_formats():
    t = ResultTable("demo", [{"a": 1, "b": "x"}, {"a": 2, "b": "y,z"}], {"budget": 1})
    j = json.loads(emit(t, "json"))
    assert j["recipe"] == "demo" and j["rows"][0]["a"] == 1
    csv = emit(t, "csv")
    assert csv.splitlines()[0] == "a,b"
    assert csv.splitlines()[2] == '2,"y,z"'
    txt = emit(t, "text")
    assert txt.startswith("# recipe: demo")


def test_emit_empty_table():
    t = ResultTable("empty", [], {})
    assert json.loads(emit(t, "json"))["rows"] == []


def test_recipe_determinism(cat):
    a = run_recipe("ex-f2u-images", cat)
    b = run_recipe("ex-f2u-images", cat)
    ta, tb = a.table.to_dict(), b.table.to_dict()
    ta["provenance"] = tb["provenance"] = None
    assert ta == tb


@pytest.mark.parametrize(
    "name",
    ["ex-f2u-images", "ex-m2f2-map", "ex-gr42-bases", "aut-structure", "wood"],
)
def test_fast_recipes_match_goldens(cat, name):
    outcome = run_recipe(name, cat)
    assert outcome.passed, outcome.diffs


def test_golden_files_exist():
    from skewcode.config import GOLDEN_DIR

    for spec in RECIPES.values():
        if spec.golden:
            assert (GOLDEN_DIR / spec.golden).exists(), spec.golden
