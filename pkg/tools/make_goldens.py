#!/usr/bin/env python3
"""Regenerate the golden files under src/skewcode/data/golden.

Expected matrices and table cells are transcribed here from the upstream
reference material; each transcription is asserted against the freshly
computed recipe output before being written, so a drift in either the
library or the transcription fails loudly.  Three table cells (and two
scalar figures) where the upstream print disagrees with direct set-exact
computation carry the verified value plus a notes_* annotation.
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from skewcode.config import GOLDEN_DIR, default_catalog
from skewcode.recipes import RECIPES, ResultTable

TABLE1 = {
    # ring: {n: (theta_id, theta_nonid)}
    "f2xy": {2: (8, 64), 4: (64, 608), 6: (512, 1648), 8: (4096, 30848)},
    "f4u": {2: (4, 20), 4: (16, 122), 6: (88, 680), 8: (256, 3074)},
    "f2xy_s": {2: (4, 28), 4: (32, 256), 6: (64, 528), 8: (1024, 9216)},
    "f2x4": {2: (4, 16), 4: (16, 80), 6: (64, 384), 8: (512, 1536)},
    "m2f2": {2: (4, 14), 4: (16, 50), 6: (76, 380), 8: (256, 770)},
}

# verified by set-exact dual computation; notes carry the upstream print
TABLE2 = {
    "f2xy": {
        2: (8, 64, {"notes_printed_nonid": 34}),
        4: (40, 344, None),
        6: (64, 488, {"notes_printed_id": 60}),
        8: (320, 3328, None),
        10: (512, 668, {"optional": True}),
        12: (2560, 20480, {"optional": True}),
    },
    "f4u": {
        2: (4, 8, None),
        4: (16, 50, None),
        6: (24, 108, None),
        8: (64, 290, None),
        10: (64, 122, {"optional": True}),
        12: (416, 2848, {"optional": True, "notes_printed_nonid": 1920}),
    },
    "f2xy_s": {
        2: (4, 20, None),
        4: (24, 104, None),
        6: (16, 88, None),
        8: (128, 1152, None),
        10: (64, 336, {"optional": True}),
        12: (768, 3584, {"optional": True}),
    },
    "f2x4": {
        2: (4, 12, None),
        4: (16, 64, None),
        6: (16, 64, {"notes_printed_id": 32}),
        8: (96, 288, None),
        10: (64, 256, {"optional": True}),
        12: (256, 1792, {"optional": True}),
    },
    "f2u": {4: (4, None, None), 8: (8, None, None), 12: (16, None, None),
            16: (32, None, None), 20: (64, None, None), 24: (128, None, None)},
    "f2v2": {4: (1, 1, None), 8: (1, 3, None), 12: (1, 3, None),
             16: (1, 11, None), 20: (1, 9, None), 24: (1, 53, None)},
}

TABLE3 = {
    # length: ring: (cell_I, cell_II); lengths beyond 24 are optional
    8: {"f2xy": ("2", "4"), "f4u": ("2", "4"), "f2xy_s": ("2", "4"),
        "f2x4": ("2", "4"), "f2u": ("2", "4"), "f2v2": ("2", "-")},
    16: {"f2xy": ("4", "4"), "f4u": ("4", "4"), "f2xy_s": ("4", "4"),
         "f2x4": ("4", "4"), "f2u": ("4", "4"), "f2v2": ("2", "4_t")},
    24: {"f2xy": ("6_t", "8_t"), "f4u": ("4", "8_t"), "f2xy_s": ("4", "4"),
         "f2x4": ("4", "4"), "f2u": ("4", "4"), "f2v2": ("4_t", "-")},
    32: {"f2xy": ("8", "8"), "f4u": ("8_t", "4"), "f2xy_s": ("4", "4"),
         "f2x4": ("8", "4"), "f2u": ("4", "4"), "f2v2": ("4_t", "4_t")},
    40: {"f2xy": ("8", "8"), "f4u": ("8_t", "8_t"), "f2xy_s": ("4", "4"),
         "f2x4": ("8_t", "8_t"), "f2u": ("4", "4"), "f2v2": ("4_t", "-")},
    48: {"f2xy": ("8", "8"), "f4u": ("8", "8"), "f2xy_s": ("4", "4"),
         "f2x4": ("8", "8"), "f2u": ("4", "4"), "f2v2": ("4_t", "8_t")},
}

M_F2U_1X = """\
1 0 0 1 1 0 0 0
0 1 0 0 0 1 0 0
0 0 1 0 0 1 1 0
0 0 0 1 0 0 0 1"""

M_F2U_1X1 = """\
1 0 1 1 1 0 0 0
0 1 1 1 0 1 0 0
0 0 1 0 1 1 1 0
0 0 0 1 1 1 0 1"""

M_M2F2_BLOCK = """\
[[1,1],[1,0]] [[0,1],[1,1]] [[1,0],[0,1]] [[0,0],[0,0]]
[[0,0],[0,0]] [[0,1],[1,1]] [[1,1],[1,0]] [[1,0],[0,1]]"""

M_M2F2_BIN = """\
1 1 0 0 0 1 0 0 1 0 0 0 0 0 0 0
1 0 0 0 1 1 0 0 0 1 0 0 0 0 0 0
0 0 1 1 0 0 0 1 0 0 1 0 0 0 0 0
0 0 1 0 0 0 1 1 0 0 0 1 0 0 0 0
0 0 0 0 0 1 0 0 1 1 0 0 1 0 0 0
0 0 0 0 1 1 0 0 1 0 0 0 0 1 0 0
0 0 0 0 0 0 0 1 0 0 1 1 0 0 1 0
0 0 0 0 0 0 1 1 0 0 1 0 0 0 0 1"""

M_M2F2_F4 = """\
1 a 0 a 1 0 0 0
a^2 0 a^2 1 0 1 0 0
0 0 0 a 1 a 1 0
0 0 a^2 1 a^2 0 0 1"""

M_F4U_12 = """\
a a^2 0 a 1 a^2 1 0 0 0 0 0
a^2 a a 0 a^2 1 0 1 0 0 0 0
0 0 a a^2 a 1 0 a^2 1 0 0 0
0 0 a^2 a 1 a a^2 0 0 1 0 0
0 0 0 0 a a^2 0 a 1 a^2 1 0
0 0 0 0 a^2 a a 0 a^2 1 0 1"""

M_F4U_16 = """\
1 a^2 a^2 0 a^2 0 0 a^2 1 0 0 0 0 0 0 0
a^2 1 0 a^2 0 a^2 a^2 0 0 1 0 0 0 0 0 0
0 0 0 a^2 a 0 a 0 1 a^2 1 0 0 0 0 0
0 0 a^2 0 0 a 0 a a^2 1 0 1 0 0 0 0
0 0 0 0 1 a^2 a^2 0 a^2 0 0 a^2 1 0 0 0
0 0 0 0 a^2 1 0 a^2 0 a^2 a^2 0 0 1 0 0
0 0 0 0 0 0 0 a^2 a 0 a 0 1 a^2 1 0
0 0 0 0 0 0 a^2 0 0 a 0 a a^2 1 0 1"""

M_Z4_A = """\
1 2 0 2 3 1 0 2 1 0 0 0 0 0 0 0
2 1 2 0 1 1 2 0 0 1 0 0 0 0 0 0
0 0 1 2 0 2 3 1 0 2 1 0 0 0 0 0
0 0 2 1 2 0 1 1 2 0 0 1 0 0 0 0
0 0 0 0 1 2 0 2 3 1 0 2 1 0 0 0
0 0 0 0 2 1 2 0 1 1 2 0 0 1 0 0
0 0 0 0 0 0 1 2 0 2 3 1 0 2 1 0
0 0 0 0 0 0 2 1 2 0 1 1 2 0 0 1"""

M_Z4_B = """\
3 0 2 0 3 3 2 0 1 0 0 0 0 0 0 0
0 3 0 2 3 1 0 2 0 1 0 0 0 0 0 0
0 0 3 0 2 0 3 3 2 0 1 0 0 0 0 0
0 0 0 3 0 2 3 1 0 2 0 1 0 0 0 0
0 0 0 0 3 0 2 0 3 3 2 0 1 0 0 0
0 0 0 0 0 3 0 2 3 1 0 2 0 1 0 0
0 0 0 0 0 0 3 0 2 0 3 3 2 0 1 0
0 0 0 0 0 0 0 3 0 2 3 1 0 2 0 1"""

M_F25 = """\
4 3 2 1 0 1 2 3 1 0 0 0 0 0 0 0
3 0 1 4 1 2 3 3 0 1 0 0 0 0 0 0
0 0 0 2 4 4 2 4 3 2 1 0 0 0 0 0
0 0 2 4 4 2 4 0 2 2 0 1 0 0 0 0
0 0 0 0 4 3 2 1 0 1 2 3 1 0 0 0
0 0 0 0 3 0 1 4 1 2 3 3 0 1 0 0
0 0 0 0 0 0 0 2 4 4 2 4 3 2 1 0
0 0 0 0 0 0 2 4 4 2 4 0 2 2 0 1"""


def run(name, budget=20_000_000):
    from skewcode.recipes import RECIPES

    cat = default_catalog()
    return RECIPES[name].builder(cat, budget)


def check_block(table: ResultTable, key: str, expected: str):
    got = table.text_blocks[key].strip("\n")
    if got != expected.strip("\n"):
        raise SystemExit(
            f"transcription mismatch in {table.recipe}/{key}:\n"
            f"--- computed ---\n{got}\n--- expected ---\n{expected}"
        )


def write(name: str, rows, blocks=None):
    path = GOLDEN_DIR / f"{name}.json"
    payload = {"recipe": name, "rows": rows}
    if blocks:
        payload["text_blocks"] = blocks
    path.write_text(json.dumps(payload, indent=1) + "\n")
    print("wrote", path.name)


def main():
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    only = set(a for a in sys.argv[1:] if not a.startswith("-"))
    missing_only = "--missing-only" in sys.argv
    for name, fn in SECTIONS.items():
        if only and name not in only:
            continue
        if missing_only and (GOLDEN_DIR / f"{name}.json").exists():
            print("skip", name, flush=True)
            continue
        fn()
        print("done", name, flush=True)
    print("all requested goldens written")


def _g_table1():
    t = run("table1")
    rows = []
    for r in t.rows:
        want = TABLE1[r["ring"]][r["n"]]
        assert (r["theta_id"], r["theta_nonid"]) == want, r
        rows.append(r)
    write("table1", rows)


def _g_table2():
    t = run("table2")
    computed = {(r["ring"], r["n"]): r for r in t.rows if not r.get("skipped")}
    rows = []
    for ring, cells in TABLE2.items():
        for n, (cid, cnon, extra) in cells.items():
            row = {"ring": ring, "n": n, "theta_id": cid}
            if cnon is not None:
                row["theta_nonid"] = cnon
            if extra:
                row.update(extra)
            got = computed.get((ring, n))
            if got is not None:
                assert got["theta_id"] == cid, (ring, n, got)
                if cnon is not None:
                    assert got["theta_nonid"] == cnon, (ring, n, got)
            else:
                assert extra and extra.get("optional"), (ring, n)
            rows.append(row)
    write("table2", rows)


def _g_table3():
    t = run("table3")
    computed = {(r["ring"], r["length"]): r for r in t.rows if not r.get("skipped")}
    rows = []
    for L, cells in TABLE3.items():
        for ring, (c1, c2) in cells.items():
            row = {"ring": ring, "length": L, "cell_I": c1, "cell_II": c2}
            if L > 24:
                row["optional"] = True
            got = computed.get((ring, L))
            if got is not None:
                assert (got["cell_I"], got["cell_II"]) == (c1, c2), (ring, L, got)
            else:
                assert L > 24
            rows.append(row)
    write("table3", rows)


def _g_ex_f2u():
    t = run("ex-f2u-images")
    check_block(t, "basis_1_x", M_F2U_1X)
    check_block(t, "basis_1_x1", M_F2U_1X1)
    assert t.rows[0] == {"code_self_dual": True, "codewords": 16}
    assert t.rows[1]["self_dual"] is False
    assert t.rows[2]["self_dual"] is True and t.rows[2]["min_distance"] == 4
    assert t.rows[2]["type"] == "II"
    write("ex-f2u-images", t.rows,
          {"basis_1_x": M_F2U_1X, "basis_1_x1": M_F2U_1X1})


def _g_ex_m2f2():
    t = run("ex-m2f2-map")
    check_block(t, "block_matrix", M_M2F2_BLOCK)
    check_block(t, "binary_16", M_M2F2_BIN)
    check_block(t, "quaternary_8", M_M2F2_F4)
    assert t.rows[0]["divisors_theta"] == 16
    assert t.rows[0]["binary_distance"] == 4
    assert t.rows[0]["f4_distance"] == 4
    write("ex-m2f2-map", t.rows,
          {"block_matrix": M_M2F2_BLOCK, "binary_16": M_M2F2_BIN,
           "quaternary_8": M_M2F2_F4})


def _g_ex_f4u_skew():
    t = run("ex-f4u-skew")
    check_block(t, "f4_12_6", M_F4U_12)
    check_block(t, "f4_16_8", M_F4U_16)
    assert sorted(t.rows[0]["linear_divisors_n2"]) == sorted(
        ["X + a^2", "X + x+1", "X + 1", "X + a*x+a", "X + a^2*x+a^2", "X + a"]
    ), t.rows[0]
    assert t.rows[1]["d_12_6"] == 6 and t.rows[1]["sd_12_6"] is True
    assert t.rows[1]["d_16_8"] == 6 and t.rows[1]["sd_16_8"] is True
    assert t.rows[2]["n6_counts_by_theta_order"] == {"1": 24, "2": 12, "3": 36}
    write("ex-f4u-skew", t.rows, {"f4_12_6": M_F4U_12, "f4_16_8": M_F4U_16})


def _g_ex_gr42_bases():
    t = run("ex-gr42-bases")
    r = t.rows[0]
    assert r["psd_bases_sigma_id"] == 8 and r["gamma"] == "3"
    assert r["self_dual_bases"] == 0 and r["symmetric_bases"] == 24
    assert r["psd_bases_sigma_theta"] == 0
    assert set(r["sets"]) == {
        "w,w+3", "w,3w+1", "w+1,w+2", "w+2,3w+3",
        "w+1,3w+2", "w+3,3w", "3w,3w+1", "3w+2,3w+3",
    }, r["sets"]
    write("ex-gr42-bases", t.rows)


def _g_ex_gr42_selfdual():
    t = run("ex-gr42-selfdual")
    assert t.rows[0] == {
        "len4_id": 0, "len4_theta": 8, "len8_id": 0, "len8_theta": 0,
    }, t.rows[0]
    assert t.rows[1]["self_dual"] is True
    assert t.rows[1]["image_lee_distance"] == 6
    kept = [r for r in t.rows if not r.get("skipped")]
    write("ex-gr42-selfdual", kept + [
        {
            "len10_hermitian_generators": 228,
            "len10_best_image_lee": 8,
            "optional": True,
            "notes": "upstream prints 192 generators and best Lee 10; "
            "exhaustive recomputation over both twists, all norm-one "
            "constants and all eight duality-preserving bases yields "
            "228 hermitian generators with best mapped Lee distance 8",
        }
    ])


def _g_ex_z4sqrt2():
    t = run("ex-z4sqrt2")
    check_block(t, "z4_16_a", M_Z4_A)
    check_block(t, "z4_16_b", M_Z4_B)
    assert t.rows[0]["self_dual"] is True and t.rows[0]["image_lee_distance"] == 6
    assert t.rows[1]["self_dual"] is True and t.rows[1]["image_lee_distance"] == 8
    assert t.rows[1]["lee_terms"] == {"8": 508, "10": 896, "12": 10752}
    assert t.rows[2]["lee_terms"] == {"8": 380, "10": 1920, "12": 7168}
    assert t.rows[3]["len4_generator_counts"] == {"id": 8, "neg": 8}
    write("ex-z4sqrt2", t.rows, {"z4_16_a": M_Z4_A, "z4_16_b": M_Z4_B})


def _g_ex_f25():
    t = run("ex-f25-negacyclic")
    check_block(t, "f5_16_8", M_F25)
    assert t.rows[0]["self_dual"] is True and t.rows[0]["image_distance"] == 7
    assert t.rows[0]["weight_terms"] == {"7": 448, "8": 3360, "9": 4992}
    assert t.rows[1]["self_dual"] is True and t.rows[1]["image_distance"] == 8
    assert t.rows[1]["weight_terms"] == {"8": 1280, "9": 3200, "10": 24848}
    write("ex-f25-negacyclic", t.rows, {"f5_16_8": M_F25})


def _g_ex_f5u():
    t = run("ex-f5u-negacyclic")
    assert t.rows[0]["self_dual"] is True and t.rows[0]["image_distance"] == 8
    assert t.rows[0]["weight_terms"] == {"8": 1380, "9": 2880, "10": 24704}
    write("ex-f5u-negacyclic", t.rows)


def _g_ex_m2f3():
    t = run("ex-m2f3-bases")
    assert t.rows[0] == {"aut_order": 24, "aut_label": "S4", "involutions": 10}
    expect = {
        "f9_1": {"self_dual": 8, "pseudo_only": 56},
        "f9_2": {"self_dual": 48, "pseudo_only": 48},
        "f9_3": {"self_dual": 8, "pseudo_only": 56},
    }
    for row in t.rows[1:]:
        assert row["stabilizer_order"] == 4
        assert row["sigma2"] == expect[row["subfield"]], row
        if row["subfield"] in ("f9_1", "f9_2"):
            assert row["sigma1"] is None
        else:
            assert row["sigma1"] == {"self_dual": 8, "pseudo_only": 56}
    write("ex-m2f3-bases", t.rows)


def _g_ex_f4u_bases():
    t = run("ex-f4u-bases")
    assert t.rows[0] == {
        "bases_over_f4": 90,
        "bases_over_f2": 840,
        "symmetric_over_f4": 18,
        "symmetric_over_f2": 18,
        "symmetric_over_f2u": 24,
    }
    fixed = {r["sigma"]: r["fixed_symmetric_bases"] for r in t.rows[1:]}
    assert fixed["sigma1"] == ["1,a^2*x+1"]
    assert fixed["sigma2"] == ["1,a*x+1"]
    assert fixed["sigma3"] == ["1,x+1"]
    write("ex-f4u-bases", t.rows)


def _g_aut_structure():
    t = run("aut-structure")
    expected = {
        "f2xy": (24, "S4"), "f4u": (6, "S3"), "f2xy_s": (8, "D4"),
        "f2x4": (4, "D2"), "m2f2": (6, "S3"), "gr42": (2, "S2"),
        "z4x_2": (4, "D2"), "f5u": (4, "C4"), "f2u": (1, "C1"),
        "f2v2": (2, "S2"), "f3x3": (6, "S3"), "f3v": (2, "S2"),
        "m2f3": (24, "S4"),
    }
    for row in t.rows:
        if row["ring"] in expected:
            assert (row["aut_order"], row["label"]) == expected[row["ring"]], row
    m2f2 = [r for r in t.rows if r["ring"] == "m2f2"][0]
    assert m2f2["anti_automorphisms"] == 6 and m2f2["involutions"] == 4
    m2f3 = [r for r in t.rows if r["ring"] == "m2f3"][0]
    assert m2f3["involutions"] == 10
    f3xy = [r for r in t.rows if r["ring"] == "f3xy"][0]
    assert f3xy["aut_order"] == 72
    assert f3xy["order_histogram"] == {"1": 1, "2": 21, "3": 8, "4": 18, "6": 24}
    write("aut-structure", t.rows)


def _g_negcert():
    t = run("negcert")
    for row in t.rows:
        if "psd_bases_found" in row:
            assert row["psd_bases_found"] == 0, row
        if "self_dual_bases_found" in row:
            assert row["self_dual_bases_found"] == 0, row
        if "len8_self_dual_generators" in row:
            assert row["len8_self_dual_generators"] == 0, row
    write("negcert", t.rows)


def _g_wood():
    t = run("wood")
    v = t.rows[0]
    assert v["frobenius"] is False
    assert v["code_size"] == v["dual_size"] == 4
    assert v["product"] == 16 > v["alphabet_power"] == 8
    assert v["dual_equals_code"] is True
    for row in t.rows[1:]:
        assert row["frobenius"] is True
        assert row["product"] == row["alphabet_power"], row
    write("wood", t.rows)


SECTIONS = {
    "table1": _g_table1,
    "table2": _g_table2,
    "table3": _g_table3,
    "ex-f2u-images": _g_ex_f2u,
    "ex-m2f2-map": _g_ex_m2f2,
    "ex-f4u-skew": _g_ex_f4u_skew,
    "ex-gr42-bases": _g_ex_gr42_bases,
    "ex-gr42-selfdual": _g_ex_gr42_selfdual,
    "ex-z4sqrt2": _g_ex_z4sqrt2,
    "ex-f25-negacyclic": _g_ex_f25,
    "ex-f5u-negacyclic": _g_ex_f5u,
    "ex-m2f3-bases": _g_ex_m2f3,
    "ex-f4u-bases": _g_ex_f4u_bases,
    "aut-structure": _g_aut_structure,
    "negcert": _g_negcert,
    "wood": _g_wood,
}


if __name__ == "__main__":
    main()
