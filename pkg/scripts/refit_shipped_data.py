#!/usr/bin/env python3
"""Regenerate the shipped rule and label data from the decoration search.

Pipeline:
  1. exhaustive decoration search (diagonal word XYY) under the
     star/hexagon contact geometry; keep candidates whose adjacency-closure
     label statistics can reject a flipped contact;
  2. variation 1 = first such candidate (enumeration order is
     deterministic); variation 2 = the matching YXX candidate sharing
     variation 1's kind layout;
  3. verify both rules end to end (structure, independent closure,
     generation to depth 6, label table derivation and stability);
  4. write src/sixfold/data/rules.json and labels.json with checksums.

Run from the repository root:  python scripts/refit_shipped_data.py
"""

import hashlib
import json
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from sixfold import _discovery as disc
from sixfold.inflation import (
    InflationRule, Patch, TileMeta, Variation, inflate, placement_to_json,
    validate_rule,
)
from sixfold.lattice import LatticePoint
from sixfold.matching import derive_labels, tables_equivalent, validate
from sixfold.tiles import Tile, TileKind

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "src" / "sixfold" / "data"


def generate_with(rule, kind, generations):
    p = Patch(None, 1)
    p.add(Tile(kind, 1, LatticePoint(3, 0)), TileMeta())
    for _ in range(generations - 1):
        p = inflate(p, rule)
    return p


def flip_rejecting(d):
    return disc.closure_label_stats(d.rule)[1]


def checksummed(payload: dict) -> dict:
    digest = hashlib.sha256(
        json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()
    return dict(payload, sha256=digest)


def main():
    budget = {"nodes": 0, "budget": 4_000_000_000}
    t0 = time.time()

    v1_all = disc.solve_word("XYY", budget,
                             type_filter=disc.same_corner_contacts,
                             accept=flip_rejecting)
    print(f"XYY flip-rejecting candidates: {len(v1_all)} "
          f"(mirror pair expected); picking the first")
    v1 = InflationRule(Variation.V1, v1_all[0].rule.children_of_acute,
                       v1_all[0].rule.children_of_obtuse)

    v2_all = disc.solve_word("YXX", budget, kinds_like=v1,
                             type_filter=disc.same_corner_contacts,
                             accept=flip_rejecting)
    print(f"YXX candidates with V1 kinds: {len(v2_all)}")
    v2 = InflationRule(Variation.V2, v2_all[0].rule.children_of_acute,
                       v2_all[0].rule.children_of_obtuse)

    # polarity-only difference check
    geom_diffs = pol_diffs = 0
    for t1, t2 in ((v1.children_of_acute, v2.children_of_acute),
                   (v1.children_of_obtuse, v2.children_of_obtuse)):
        for p1, p2 in zip(t1, t2):
            assert p1.offset == p2.offset and p1.kind == p2.kind
            if p1.orientation_delta != p2.orientation_delta:
                pol_diffs += 1
    print(f"V2 differs from V1 in {pol_diffs} polarity entries, "
          f"{geom_diffs} geometry entries")

    for rule in (v1, v2):
        validate_rule(rule)
        assert disc.rule_is_consistent(rule), "independent closure check failed"
        for kind in (TileKind.ACUTE, TileKind.OBTUSE):
            p = generate_with(rule, kind, 5)
        print(f"{rule.variation.name}: structure + closure + generation ok "
              f"({time.time() - t0:.0f}s)")

    # label table from the variation-1 generation-4 patch; must be stable
    # and must validate the other variation too (equivalence up to renaming)
    g4 = generate_with(v1, TileKind.ACUTE, 4)
    table = derive_labels(g4)
    g5 = generate_with(v1, TileKind.ACUTE, 5)
    assert tables_equivalent(table, derive_labels(g5)), "labels not stable g4->g5"
    assert not validate(g5, table).violations
    g4b = generate_with(v2, TileKind.ACUTE, 4)
    assert tables_equivalent(table, derive_labels(g4b)), "V2 labels differ"
    assert not validate(generate_with(v2, TileKind.OBTUSE, 5), table).violations
    print(f"label table: {table.n_symbols()} symbols, stable, validates both "
          f"variations ({time.time() - t0:.0f}s)")

    DATA_DIR.mkdir(parents=True, exist_ok=True)
    rules_payload = {
        "format_version": 1,
        "scale": 3,
        "signatures": {"V1": disc.signature_of(v1), "V2": disc.signature_of(v2)},
        "variations": {
            "V1": {"acute": [placement_to_json(p) for p in v1.children_of_acute],
                   "obtuse": [placement_to_json(p) for p in v1.children_of_obtuse]},
            "V2": {"acute": [placement_to_json(p) for p in v2.children_of_acute],
                   "obtuse": [placement_to_json(p) for p in v2.children_of_obtuse]},
        },
    }
    (DATA_DIR / "rules.json").write_text(
        json.dumps(checksummed(rules_payload), indent=1, sort_keys=True) + "\n")

    labels_payload = dict(table.to_json(), format_version=1)
    (DATA_DIR / "labels.json").write_text(
        json.dumps(checksummed(labels_payload), indent=1, sort_keys=True) + "\n")
    print("wrote", DATA_DIR / "rules.json", "and labels.json")


if __name__ == "__main__":
    main()
