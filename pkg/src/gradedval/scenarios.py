"""Scenario files and the batch pipeline.

A scenario bundles a monomial extension (or a seeded random family of
them), a residue degree, and optional semigroup and ledger sections.  The
pipeline validates, monomializes, builds the coset system, checks the
graded module rank and invariant part, and reports every check in a
deterministic JSON-ready structure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import GradedValError, ParseError
from .exact_lattice import ExactMatrix, determinant
from .graded_algebra import (
    GradedModule,
    fixed_by_all_characters,
    invariant_part,
    is_sigma_trivial,
)
from .monomial_extension import (
    BlockStructure,
    MonomialExtension,
    adjoint_relations,
    validate,
)
from .monomialization import coset_system, replay, strong_monomialize
from .ordered_groups import (
    Block,
    GroupStructure,
    ValueGroup,
    coset_label,
    subgroup_index,
)
from .ramification import ExtensionRecord, unramified_criterion
from .serialize import (
    dec_element,
    dec_extension,
    dec_frac,
    dec_int,
    dec_structure,
    enc_element,
    enc_frac,
    enc_int,
    enc_matrix,
)
from .value_semigroups import ValueSemigroup, semigroup_difference


def compatible_values(blocks, A, t_values):
    """Value assignment whose relation lattice lies inside A^t Z^n.

    T-variables take the supplied rationally independent values.  A non-T
    variable m in block b takes sum_{j in T} (A[t_b][j] - A[m][j]) * nu(y_j)
    with t_b the block's first T-row: the relation it satisfies is
    A^t(e_{t_b} - e_m), so the quotient of value groups stays isomorphic to
    Z^n / A^t Z^n and the coset-system hypotheses hold.
    """
    tlist = blocks.t_indices()
    values = {}
    for j, v in zip(tlist, t_values):
        values[j] = v
    structure = t_values[0].structure
    for m in range(blocks.n):
        if m in values:
            continue
        tb = blocks.offset(blocks.block_of(m))
        v = structure.zero()
        for j in tlist:
            c = A[tb, j] - A[m, j]
            if c:
                v = v + values[j].scale(c)
        values[m] = v
    return tuple(values[j] for j in range(blocks.n))


def random_theorem48_extension(rng, r_max=3, t_max=2, h_max=3, g_max=3):
    """Random valid extension in the supported row shape, rank-1 blocks."""
    r = rng.randint(1, r_max)
    t = tuple(rng.randint(1, t_max) for _ in range(r))
    blocks = BlockStructure(r=r, t=t, s=(1,) * r)
    structure = GroupStructure(tuple(Block() for _ in range(r)))
    t_values = tuple(
        structure.element(tuple((1,) if k == b else (0,) for k in range(r)))
        for b in range(r))
    tlist = blocks.t_indices()
    rows = [[0] * blocks.n for _ in range(blocks.n)]
    for i in range(blocks.n):
        bi = blocks.block_of(i)
        if blocks.is_t_index(i):
            rows[i][i] = rng.randint(1, g_max)
            for j in tlist:
                if blocks.block_of(j) > bi:
                    rows[i][j] = rng.randint(0, h_max)
        else:
            rows[i][i] = 1
            for j in tlist:
                if blocks.block_of(j) > bi:
                    rows[i][j] = rng.randint(0, h_max)
    A = ExactMatrix.from_rows(rows)
    return MonomialExtension(
        blocks=blocks,
        A=A,
        unit_markers=("1",) * blocks.n,
        y_values=compatible_values(blocks, A, t_values),
    )


def random_extension_bounded(rng, e_max=24, **kwargs):
    """Random extension whose exponent determinant stays within e_max."""
    while True:
        me = random_theorem48_extension(rng, **kwargs)
        if 1 <= abs(determinant(me.A)) <= e_max:
            return me


@dataclass(frozen=True)
class Scenario:
    name: str
    extensions: tuple          # (label, MonomialExtension) pairs
    residue_degree: int
    semigroup: dict | None
    records: tuple
    expect: dict


def load_scenario(data) -> Scenario:
    if not isinstance(data, dict) or "name" not in data:
        raise ParseError("scenario must be an object with a name")
    name = str(data["name"])
    f = dec_int(data.get("residue_degree", "1"))
    extensions = []
    if "extension" in data:
        extensions.append((name, dec_extension(data["extension"])))
    if "random" in data:
        spec = data["random"]
        seed = dec_int(spec.get("seed", "0"))
        count = dec_int(spec.get("count", "5"))
        e_max = dec_int(spec.get("e_max", "24"))
        rng = random.Random(seed)
        for k in range(count):
            extensions.append(
                (f"{name}[{k}]", random_extension_bounded(rng, e_max=e_max)))
    semigroup = None
    if "semigroups" in data:
        sg = data["semigroups"]
        structure = dec_structure(sg["structure"])
        semigroup = {
            "structure": structure,
            "small": tuple(dec_element(structure, v) for v in sg["small"]),
            "big": tuple(dec_element(structure, v) for v in sg["big"]),
            "bound": dec_frac(sg.get("bound", "4")),
            "expect_growth": bool(sg.get("expect_growth", False)),
        }
    records = tuple(data.get("extension_records", []))
    expect = data.get("expect", {})
    return Scenario(name=name, extensions=tuple(extensions),
                    residue_degree=f, semigroup=semigroup,
                    records=records, expect=expect)


def _run_extension_case(label, me, f, invariant_limit=24):
    report = {"case": label}
    checks = []
    problems = validate(me)
    report["validation"] = [
        {"kind": v.kind, "location": [enc_int(x) for x in v.location],
         "message": v.message} for v in problems]
    checks.append(("valid_input", not problems))
    if problems:
        report["ok"] = False
        report["checks"] = [{"name": n, "passed": p} for n, p in checks]
        return report
    e0 = adjoint_relations(me).e
    trace = strong_monomialize(me)
    final = trace.final.extension
    redone = replay(trace.initial, trace.steps)
    checks.append(("replay_matches", redone == final))
    checks.append(("values_positive",
                   all(v.sign() > 0 for v in final.y_values)))
    checks.append(("t_determinant_preserved",
                   adjoint_relations(final).e == e0))
    report["steps"] = enc_int(len(trace.steps))
    cs = coset_system(trace.final)
    mod = GradedModule(system=cs, residue_degree=f)
    labels = mod.basis_labels()
    checks.append(("rank_is_e_times_f", len(labels) == cs.e * f))
    counts = {}
    for lbl in labels:
        rep = coset_label(mod.value_map(lbl.sigma), cs.big_group,
                          cs.small_group)
        counts[rep.flat()] = counts.get(rep.flat(), 0) + 1
    checks.append(("cosets_exhausted",
                   len(counts) == cs.e
                   and all(c == f for c in counts.values())))
    inv = invariant_part(mod)
    checks.append(("invariant_rank_f", len(inv) == f))
    if cs.e <= invariant_limit:
        fixed = [lbl for lbl in labels
                 if fixed_by_all_characters(mod, lbl.sigma)]
        checks.append(("invariant_is_fixed_set", fixed == list(inv)))
    report.update({
        "e": enc_int(cs.e),
        "f": enc_int(f),
        "rank": enc_int(cs.e * f),
        "invariant_factors": [enc_int(d) for d in cs.invariant_factors],
        "lattice_points": [[enc_int(x) for x in p]
                           for p in cs.lattice_points],
        "coset_labels": [enc_element(l) for l in cs.labels],
        "sigma_trivial": [
            [enc_int(x) for x in p] for p in cs.lattice_points
            if is_sigma_trivial(cs, p)],
        "final_A": enc_matrix(final.A),
    })
    report["checks"] = [{"name": n, "passed": p} for n, p in checks]
    report["ok"] = all(p for _, p in checks)
    return report


def _run_semigroup_section(sg):
    structure = sg["structure"]
    small = ValueSemigroup(ambient=ValueGroup(structure, sg["small"]),
                           generators=sg["small"])
    big = ValueSemigroup(ambient=ValueGroup(structure, sg["big"]),
                         generators=sg["big"])
    witnesses = semigroup_difference(small, big, sg["bound"])
    groups_equal = (subgroup_index(big.ambient, small.ambient) == 1
                    and subgroup_index(small.ambient, big.ambient) == 1)
    grew = bool(witnesses)
    ok = grew == sg["expect_growth"]
    return {
        "witnesses": [enc_element(w) for w in witnesses],
        "groups_equal": groups_equal,
        "expected_growth": sg["expect_growth"],
        "ok": ok and groups_equal,
    }


def _run_ledger_section(records):
    out = []
    ok = True
    for data in records:
        entry = {}
        try:
            rec = ExtensionRecord(
                N=dec_int(data["N"]),
                e=dec_int(data["e"]),
                f=dec_int(data["f"]),
                p=dec_int(data.get("p", "0")),
                delta=(dec_int(data["delta"]) if "delta" in data else None),
                d=(dec_frac(data["d"]) if "d" in data else None),
                g=(dec_frac(data["g"]) if "g" in data else None),
            )
        except GradedValError as exc:
            expected = bool(data.get("expect_error", False))
            entry.update({"error": str(exc), "ok": expected})
            ok = ok and expected
            out.append(entry)
            continue
        entry["delta"] = enc_int(rec.delta)
        entry["ok"] = not data.get("expect_error", False)
        if rec.d is not None:
            entry["r"] = enc_int(rec.r)
            entry["unramified"] = unramified_criterion(rec)
            if "unramified" in data:
                entry["ok"] = entry["ok"] and (
                    entry["unramified"] == bool(data["unramified"]))
        ok = ok and entry["ok"]
        out.append(entry)
    return {"records": out, "ok": ok}


def run_pipeline(scenario: Scenario, input_sha256=None):
    """Full report for one scenario; report["ok"] is the overall verdict."""
    report = {"scenario": scenario.name}
    if input_sha256 is not None:
        report["input_sha256"] = input_sha256
    ok = True
    cases = []
    for label, me in scenario.extensions:
        case = _run_extension_case(label, me, scenario.residue_degree)
        ok = ok and case["ok"]
        cases.append(case)
    report["cases"] = cases
    if "e" in scenario.expect and cases:
        matches = all(c.get("e") == str(dec_int(scenario.expect["e"]))
                      for c in cases)
        report["expected_e_matches"] = matches
        ok = ok and matches
    if scenario.semigroup is not None:
        section = _run_semigroup_section(scenario.semigroup)
        ok = ok and section["ok"]
        report["semigroup"] = section
    if scenario.records:
        section = _run_ledger_section(scenario.records)
        ok = ok and section["ok"]
        report["ledger"] = section
    report["ok"] = ok
    return report
