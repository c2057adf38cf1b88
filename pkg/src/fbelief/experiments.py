"""Reproducible experiments emitting CSV/JSON artifacts plus a summary.

Each experiment writes deterministic delimited data, renders figures next
to it unless asked not to, and records its built-in checks in
summary.json as {"experiment": name, "assertions": [{name, pass, detail}]}.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, field
from math import fsum, log2
from pathlib import Path
from typing import Callable, Sequence

from . import plots
from .combine import dempster_combine, disjunctive_combine, joint_fbbpa, joint_product
from .core import Frame, MassAssignment
from .errors import InvalidParam, UnknownExperiment
from .fb import decompose, fb_entropy, max_fb_entropy
from .measures import measure, nonspecificity
from .transforms import (
    iterate_split,
    negation_step,
    pnpl,
    ptm_fusion_process,
    write_trace_csv,
)

EXPERIMENT_NAMES = (
    "negation",
    "combination-sweep",
    "sensitivity",
    "split-trace",
    "ptm-trace",
    "max-curves",
    "table4",
    "champions",
    "example-eee",
)

# Published reference columns for the two-element negation sequence, printed
# to four decimals; rows are (m(x1), m(x2), m(x1 x2)) for times 1..10.
NEGATION_REFERENCE = (
    (0.6000, 0.1000, 0.3000),
    (0.0500, 0.3000, 0.6500),
    (0.1500, 0.0250, 0.8250),
    (0.0125, 0.0750, 0.9125),
    (0.0375, 0.0063, 0.9562),
    (0.0031, 0.0187, 0.9781),
    (0.0094, 0.0016, 0.9891),
    (0.0008, 0.0047, 0.9945),
    (0.0023, 0.0004, 0.9973),
    (0.0002, 0.0012, 0.9986),
)

# Independently derived value for the four-cycle pair assignment; the
# published table prints 2.8554, which direct evaluation does not reproduce.
TABLE4_B1_FB_ORACLE = 2.918295834054489


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    params: dict[str, object] = field(default_factory=dict)
    out_dir: Path = Path(".")


def _coerce(name: str, value: object, kind: type) -> object:
    try:
        if kind is int:
            out = int(str(value))
        elif kind is float:
            out = float(str(value))
        else:
            out = str(value)
    except ValueError as exc:
        raise InvalidParam(f"parameter {name!r}: cannot read {value!r} as {kind.__name__}") from exc
    return out


def _read_params(params: dict[str, object], schema: dict[str, tuple[type, object]]) -> dict:
    unknown = set(params) - set(schema)
    if unknown:
        raise InvalidParam(f"unknown parameters: {sorted(unknown)}")
    out = {}
    for name, (kind, default) in schema.items():
        out[name] = _coerce(name, params[name], kind) if name in params else default
    return out


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence[object]]) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])


def _write_json(path: Path, payload: object) -> None:
    with path.open("w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _assertion(name: str, ok: bool, detail: str) -> dict:
    return {"name": name, "pass": bool(ok), "detail": detail}


def _strictly_increasing(values: Sequence[float]) -> bool:
    return all(b > a for a, b in zip(values, values[1:]))


def _negation(params: dict, out_dir: Path, render: bool) -> tuple[list[Path], list[dict]]:
    opts = _read_params(params, {"steps": (int, 10)})
    if opts["steps"] < 1:
        raise InvalidParam("steps must be at least 1")
    frame = Frame(("x1", "x2"))
    bpa = MassAssignment.from_labels(frame, {"x1": 0.6, "x2": 0.1, "x1|x2": 0.3})

    sequence = [bpa]
    while len(sequence) < opts["steps"]:
        sequence.append(negation_step(sequence[-1]))
    sets = [frame.parse_set(s) for s in ("x1", "x2", "x1|x2")]
    trends = {mid: [measure(mid, b) for b in sequence] for mid in ("fb", "js", "su", "deng")}

    rows = []
    for t, b in enumerate(sequence, start=1):
        rows.append(
            [t, *(b.mass(s) for s in sets), *(trends[mid][t - 1] for mid in ("fb", "js", "su", "deng"))]
        )
    csv_path = out_dir / "negation.csv"
    _write_csv(csv_path, ["step", "x1", "x2", "x1|x2", "fb", "js", "su", "deng"], rows)

    assertions = []
    compare = min(len(sequence), len(NEGATION_REFERENCE))
    worst = max(
        abs(sequence[t].mass(s) - ref)
        for t in range(compare)
        for s, ref in zip(sets, NEGATION_REFERENCE[t])
    )
    assertions.append(
        _assertion(
            "masses_match_reference",
            worst <= 5e-5,
            f"max deviation from the 4-decimal reference over {compare} steps: {worst:.2e}",
        )
    )
    for mid in ("fb", "js", "su"):
        assertions.append(
            _assertion(
                f"{mid}_strictly_increasing",
                _strictly_increasing(trends[mid]),
                f"{mid} from {trends[mid][0]:.4f} to {trends[mid][-1]:.4f}",
            )
        )
    deng = trends["deng"]
    has_drop = any(b < a for a, b in zip(deng, deng[1:]))
    assertions.append(
        _assertion("deng_has_a_decrease", has_drop, f"deng path {[round(v, 4) for v in deng]}")
    )

    files = [csv_path]
    if render:
        files.append(plots.render_negation(out_dir / "negation.png", trends))
    return files, assertions


def _combination_sweep(params: dict, out_dir: Path, render: bool) -> tuple[list[Path], list[dict]]:
    opts = _read_params(params, {"steps": (int, 1000)})
    if opts["steps"] < 1:
        raise InvalidParam("steps must be at least 1")
    steps = opts["steps"]
    frame = Frame(("a", "b"))
    fixed = MassAssignment.from_labels(frame, {"a": 0.1, "b": 0.7, "a|b": 0.2})
    fb_fixed = fb_entropy(fixed)

    rows = []
    ok = True
    worst = 0.0
    for i in range(steps + 1):
        t = i / steps
        masses = {"a|b": t} if t == 1.0 else {"a": (1 - t) / 2, "b": (1 - t) / 2, "a|b": t}
        swept = MassAssignment.from_labels(frame, {k: v for k, v in masses.items() if v > 0})
        fb_swept = fb_entropy(swept)
        joined, _ = dempster_combine(swept, fixed)
        fb_meet = fb_entropy(joined)
        fb_join = fb_entropy(disjunctive_combine(swept, fixed))
        rows.append([i, fb_swept, fb_fixed, fb_meet, fb_join])
        low, high = min(fb_swept, fb_fixed), max(fb_swept, fb_fixed)
        worst = max(worst, fb_meet - low, high - fb_join)
        if fb_meet > low + 1e-9 or fb_join < high - 1e-9:
            ok = False
    csv_path = out_dir / "combination_sweep.csv"
    _write_csv(csv_path, ["i", "fb_b1", "fb_b2", "fb_dempster", "fb_disjunctive"], rows)

    assertions = [
        _assertion(
            "interval_consistency",
            ok,
            f"fb(meet) <= min and fb(join) >= max for all {steps + 1} grid points; "
            f"worst margin {worst:.2e}",
        )
    ]
    files = [csv_path]
    if render:
        files.append(plots.render_sweep(out_dir / "combination_sweep.png", rows))
    return files, assertions


def _sensitivity(params: dict, out_dir: Path, render: bool) -> tuple[list[Path], list[dict]]:
    opts = _read_params(params, {"grid_steps": (int, 100)})
    steps = opts["grid_steps"]
    if steps < 1:
        raise InvalidParam("grid_steps must be at least 1")
    frame = Frame(("x1", "x2"))
    surfaces: dict[str, list[list[object]]] = {"total": [], "discord": [], "nonspecificity": []}
    for i in range(steps + 1):
        for j in range(steps + 1 - i):
            a, b = i / steps, j / steps
            rest = max(1.0 - a - b, 0.0)
            masses = {k: v for k, v in {"x1": a, "x2": b, "x1|x2": rest}.items() if v > 0}
            report = decompose(MassAssignment.from_labels(frame, masses))
            surfaces["total"].append([a, b, report.total])
            surfaces["discord"].append([a, b, report.discord])
            surfaces["nonspecificity"].append([a, b, report.nonspecificity])

    files = []
    for name, rows in surfaces.items():
        path = out_dir / f"sensitivity_{name}.csv"
        _write_csv(path, ["m_x1", "m_x2", name], rows)
        files.append(path)
    if render:
        for name, rows in surfaces.items():
            files.append(plots.render_surface(out_dir / f"sensitivity_{name}.png", rows, name, steps))
    return files, []


def _split_trace(params: dict, out_dir: Path, render: bool) -> tuple[list[Path], list[dict]]:
    opts = _read_params(
        params,
        {"kernel": (str, "uniform"), "p": (float, 5.0), "steps": (int, 60), "tol": (float, 1e-9)},
    )
    if opts["kernel"] not in ("uniform", "param3"):
        raise InvalidParam(f"unknown kernel {opts['kernel']!r}")
    frame = Frame(("a", "b", "c"))
    bpa = MassAssignment.vacuous(frame)
    trace = iterate_split(
        bpa, opts["kernel"], p=opts["p"], max_steps=opts["steps"], tol=opts["tol"]
    )

    csv_path = out_dir / "split_trace.csv"
    with csv_path.open("w", newline="") as fh:
        write_trace_csv(trace, fh)

    hartley = [s.metrics["hartley"] for s in trace.steps]
    singles = [trace.final.mass(s) for s in frame.singletons()]
    assertions = [
        _assertion(
            "converged",
            trace.converged,
            f"kernel {opts['kernel']}: {len(trace.steps) - 1} steps at tol {opts['tol']:g}",
        ),
        _assertion(
            "singletons_reach_one_third",
            max(abs(v - 1 / 3) for v in singles) <= 1e-6,
            f"final singleton masses {singles}",
        ),
        _assertion(
            "hartley_non_increasing",
            all(b <= a + 1e-15 for a, b in zip(hartley, hartley[1:])),
            f"hartley from {hartley[0]:.4f} to {hartley[-1]:.2e}",
        ),
        _assertion("hartley_vanishes", hartley[-1] < 1e-8, f"final hartley {hartley[-1]:.2e}"),
    ]
    files = [csv_path]
    if render:
        files.append(plots.render_trace(out_dir / "split_trace.png", trace, "splitting step"))
    return files, assertions


def _ptm_trace(params: dict, out_dir: Path, render: bool) -> tuple[list[Path], list[dict]]:
    opts = _read_params(params, {"steps": (int, 100), "tol": (float, 1e-9)})
    frame = Frame(("a", "b"))
    bpa = MassAssignment.from_labels(frame, {"a": 0.2, "b": 0.4, "a|b": 0.4})
    trace = ptm_fusion_process(bpa, max_steps=opts["steps"], tol=opts["tol"])

    csv_path = out_dir / "ptm_trace.csv"
    with csv_path.open("w", newline="") as fh:
        write_trace_csv(trace, fh)

    target = pnpl(bpa).probs
    exact = (3 / 7, 4 / 7)
    direct_err = max(abs(p - e) for p, e in zip(target, exact))
    final = [trace.final.mass(s) for s in frame.singletons()]
    fused_err = max(abs(p - e) for p, e in zip(final, exact))
    assertions = [
        _assertion("direct_transform_exact", direct_err <= 1e-12, f"|pnpl - (3/7, 4/7)| = {direct_err:.2e}"),
        _assertion(
            "fusion_converges_to_transform",
            trace.converged and fused_err <= 1e-6 and len(trace.steps) - 1 <= 100,
            f"{len(trace.steps) - 1} fusions, final error {fused_err:.2e}",
        ),
    ]
    files = [csv_path]
    if render:
        files.append(plots.render_trace(out_dir / "ptm_trace.png", trace, "fusion step", marks=exact))
    return files, assertions


def _max_curves(params: dict, out_dir: Path, render: bool) -> tuple[list[Path], list[dict]]:
    opts = _read_params(params, {"max_n": (int, 10)})
    if opts["max_n"] < 1:
        raise InvalidParam("max_n must be at least 1")
    rows = []
    for n in range(1, opts["max_n"] + 1):
        rows.append(
            [
                n,
                log2(n),
                2 * log2(n),
                max_fb_entropy(n),
                log2(3**n - 2**n),
                log2(n * 2 ** (n - 1)),
            ]
        )
    csv_path = out_dir / "max_curves.csv"
    _write_csv(csv_path, ["n", "shannon", "js", "fb", "deng", "pal"], rows)
    files = [csv_path]
    if render:
        files.append(plots.render_max_curves(out_dir / "max_curves.png", rows))
    return files, []


def _table4(params: dict, out_dir: Path, render: bool) -> tuple[list[Path], list[dict]]:
    _read_params(params, {})
    frame = Frame(("a", "b", "c", "d"))
    cycle = MassAssignment.from_labels(
        frame, {"a|b": 0.25, "b|c": 0.25, "c|d": 0.25, "a|d": 0.25}
    )
    all_pairs = MassAssignment.from_labels(
        frame, {key: 1 / 6 for key in ("a|b", "a|c", "a|d", "b|c", "b|d", "c|d")}
    )

    rows = []
    values: dict[tuple[str, str], float] = {}
    for mid in ("js", "pal", "su", "deng"):
        v1, v2 = nonspecificity(mid, cycle), nonspecificity(mid, all_pairs)
        values[(mid, "b1")], values[(mid, "b2")] = v1, v2
        rows.append([f"{mid}_nonspecificity", v1, v2])
    fb1, fb2 = fb_entropy(cycle), fb_entropy(all_pairs)
    values[("fb", "b1")], values[("fb", "b2")] = fb1, fb2
    rows.append(["fb_total", fb1, fb2])
    csv_path = out_dir / "table4.csv"
    _write_csv(csv_path, ["measure", "b1", "b2"], rows)

    assertions = [
        _assertion("b2_fb_total", abs(fb2 - 3.1133) <= 1e-4, f"fb(b2) = {fb2!r} vs published 3.1133"),
        _assertion(
            "deng_nonspecificity",
            abs(values[("deng", "b1")] - 1.5850) <= 1e-4
            and abs(values[("deng", "b2")] - 1.5850) <= 1e-4,
            f"deng column ({values[('deng', 'b1')]!r}, {values[('deng', 'b2')]!r}) vs 1.5850",
        ),
        _assertion(
            "su_nonspecificity_exact",
            values[("su", "b1")] == 2.0 and values[("su", "b2")] == 2.0,
            f"su column ({values[('su', 'b1')]!r}, {values[('su', 'b2')]!r})",
        ),
        _assertion(
            "hartley_nonspecificity_exact",
            values[("js", "b1")] == 1.0 and values[("js", "b2")] == 1.0,
            f"js/pal column ({values[('js', 'b1')]!r}, {values[('js', 'b2')]!r})",
        ),
        _assertion(
            "b1_fb_matches_independent_oracle",
            abs(fb1 - TABLE4_B1_FB_ORACLE) <= 1e-9,
            f"fb(b1) = {fb1!r}; the published 2.8554 is not reproduced by direct "
            f"evaluation (oracle {TABLE4_B1_FB_ORACLE!r})",
        ),
    ]
    files = [csv_path]
    if render:
        files.append(plots.render_table4(out_dir / "table4.png", rows))
    return files, assertions


def _champion_cases() -> dict[str, MassAssignment]:
    teams = Frame(tuple(f"t{i:02d}" for i in range(1, 65)))
    half = (1 << 32) - 1
    quarter = (1 << 16) - 1
    cases = {
        "case2": MassAssignment(teams, {half: 0.5, half << 32: 0.5}),
        "case3": MassAssignment(
            teams, {quarter: 0.25, quarter << 16: 0.25, quarter << 32: 0.25, quarter << 48: 0.25}
        ),
        "case4": MassAssignment(teams, {1 << i: 1 / 64 for i in range(64)}),
    }
    return cases


def _champions(params: dict, out_dir: Path, render: bool) -> tuple[list[Path], list[dict]]:
    _read_params(params, {})
    cases = _champion_cases()
    values: dict[str, float] = {}
    timings: dict[str, float] = {}

    start = time.perf_counter()
    values["case1"] = max_fb_entropy(64)
    timings["case1"] = time.perf_counter() - start
    for name, bpa in cases.items():
        start = time.perf_counter()
        values[name] = fb_entropy(bpa)
        timings[name] = time.perf_counter() - start

    json_path = out_dir / "champions.json"
    _write_json(json_path, values)

    expected = {"case1": 64.0, "case2": 33.0, "case3": 18.0, "case4": 6.0}
    assertions = []
    for name, want in expected.items():
        assertions.append(
            _assertion(
                f"{name}_value",
                abs(values[name] - want) <= 1e-3,
                f"{values[name]!r} vs {want} in {timings[name] * 1e3:.3f} ms",
            )
        )
    slowest = max(timings.values())
    assertions.append(
        _assertion("runtime_under_10ms", slowest < 0.010, f"slowest case {slowest * 1e3:.3f} ms")
    )
    files = [json_path]
    if render:
        files.append(plots.render_bars(out_dir / "champions.png", values, "inquiry counts (bits)"))
    return files, assertions


def _example_eee(params: dict, out_dir: Path, render: bool) -> tuple[list[Path], list[dict]]:
    _read_params(params, {})
    fx = Frame(("x1", "x2"))
    fy = Frame(("y1", "y2"))
    bx = MassAssignment.from_labels(fx, {"x1": 0.2, "x2": 0.2, "x1|x2": 0.6})
    by = MassAssignment.from_labels(fy, {"y1": 0.1, "y2": 0.6, "y1|y2": 0.3})

    start = time.perf_counter()
    ex = fb_entropy(bx)
    ey = fb_entropy(by)
    _, structure, joint = joint_product(bx, by)
    split = joint_fbbpa(structure)
    ez = split.entropy()
    elapsed = time.perf_counter() - start

    gap = abs(ez - ex - ey)
    payload = {
        "x": {"masses": bx.by_label(), "entropy": ex},
        "y": {"masses": by.by_label(), "entropy": ey},
        "joint": {
            "masses": joint.by_label(),
            "split": {joint.frame.format_set(f): v for f, v in split.values.items()},
            "entropy": ez,
        },
        "additivity_gap": gap,
    }
    json_path = out_dir / "example_eee.json"
    _write_json(json_path, payload)

    published = {"x": (ex, 1.5219), "y": (ey, 1.1568), "joint": (ez, 2.6787)}
    assertions = [
        _assertion(
            f"{name}_entropy",
            abs(got - want) <= 1e-4,
            f"{got!r} vs published {want}",
        )
        for name, (got, want) in published.items()
    ]
    assertions.append(_assertion("additivity_gap", gap <= 1e-9, f"|joint - x - y| = {gap:.2e}"))
    assertions.append(_assertion("runtime_under_1ms", elapsed < 0.001, f"{elapsed * 1e3:.3f} ms"))
    files = [json_path]
    if render:
        files.append(
            plots.render_bars(
                out_dir / "example_eee.png",
                {joint.frame.format_set(f): v for f, v in split.values.items()},
                "joint split values",
            )
        )
    return files, assertions


_EXPERIMENTS: dict[str, Callable[[dict, Path, bool], tuple[list[Path], list[dict]]]] = {
    "negation": _negation,
    "combination-sweep": _combination_sweep,
    "sensitivity": _sensitivity,
    "split-trace": _split_trace,
    "ptm-trace": _ptm_trace,
    "max-curves": _max_curves,
    "table4": _table4,
    "champions": _champions,
    "example-eee": _example_eee,
}


def run_experiment(spec: ExperimentSpec, render: bool = True) -> list[Path]:
    """Run one experiment; returns the emitted file paths (summary last)."""
    try:
        fn = _EXPERIMENTS[spec.name]
    except KeyError:
        raise UnknownExperiment(
            f"unknown experiment {spec.name!r}; known: {', '.join(EXPERIMENT_NAMES)}"
        ) from None
    out_dir = Path(spec.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files, assertions = fn(dict(spec.params), out_dir, render)
    summary_path = out_dir / "summary.json"
    _write_json(summary_path, {"experiment": spec.name, "assertions": assertions})
    return [*files, summary_path]
