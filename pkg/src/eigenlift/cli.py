"""Command-line front end.

    eigenlift VERB [--config FILE] [--out DIR] [--seed N] [--csv]

Verbs: decompose, lift, monodromy, compare, verify, sweep, presets.  Each run
prints a JSON report and, with ``--out``, also writes it to
``DIR/<verb>.json``.  Exit codes: 0 ok, 2 configuration, 3 model/domain,
4 degeneracy on a path, 5 theorem check failed.
"""

import argparse
import csv
import json
import logging
import os
import sys

import numpy as np

from . import __version__
from . import config as C
from .adiabatic import convergence_scan
from .errors import (
    ConfigError,
    DomainError,
    LiftError,
    NotClosed,
    PunctureOnPath,
    TheoremViolation,
)
from .frames import Permutation, frame_at
from .paths import (
    circle,
    compare_paths,
    concat,
    lift_path,
    predict_monodromy,
    random_loop,
    reverse,
    winding_number,
)
from .spin import (
    PRESET_GEOMETRY,
    analytic_bloch,
    analytic_delta,
    analytic_eigenphases,
    bloch_projector,
    preset_paths,
    projector_to_bloch,
)

EXIT_OK, EXIT_CONFIG, EXIT_MODEL, EXIT_DEGENERACY, EXIT_THEOREM = 0, 2, 3, 4, 5


class Run:
    """Parsed configuration plus the objects every command needs."""

    def __init__(self, cfg, seed=None, out=None, write_csv=False):
        self.cfg = cfg
        self.seed = seed if seed is not None else cfg.get("seed", 0)
        self.out = out
        self.write_csv = write_csv
        self.gap_min = cfg.get("gap_min", 1e-6)
        self.family, self.punctures, self.generators = C.build_model(cfg)
        self.path = C.build_paths(cfg)
        self.is_spin = cfg.get("model", {"type": "spin"})["type"] == "spin"
        self.theorem_failures = []

    def section(self, name):
        return self.cfg.get(name, {})

    def csv_path(self, stem):
        directory = self.out or "."
        os.makedirs(directory, exist_ok=True)
        return os.path.join(directory, f"{stem}.csv")

    def windings(self, loop, punctures):
        return [winding_number(loop, p) for p in punctures]


def perm_json(p):
    return list(p.images)


def _circular(a, b):
    d = np.angle(np.exp(1j * (np.asarray(a) - np.asarray(b))))
    return np.abs(d)


def cmd_decompose(run):
    points = run.section("decompose").get("points", [[np.pi, 0.0]])
    rows = []
    for pt in points:
        if run.is_spin:
            # analytic guard first, so a near-degenerate request names its gap
            analytic_bloch(pt)
        frame = frame_at(run.family, pt, gap_min=run.gap_min)
        residual = float(np.max(np.abs(frame.operator() - run.family(frame.point))))
        row = {
            "point": [float(x) for x in pt],
            "eigenvalues": frame.eigenvalues.tolist(),
            "gap": frame.gap(),
            "reconstruction_residual": residual,
        }
        if frame.size == 2:
            row["bloch"] = [projector_to_bloch(p).tolist() for p in frame.projectors]
        if run.is_spin:
            a = analytic_bloch(pt)
            phases = analytic_eigenphases(pt)
            # numeric slot 0 is P(a) or P(-a); compare as sets
            pa = bloch_projector(a)
            k = 0 if np.real(np.trace(pa @ frame.projectors[0])) > 0.5 else 1
            expect_p = [pa, np.eye(2) - pa]
            order = [k, 1 - k]
            row.update(
                delta=analytic_delta(pt),
                analytic_bloch=a.tolist(),
                analytic_eigenphases=phases.tolist(),
                eigenphase_residual=float(np.max(_circular(frame.eigenvalues, phases[order]))),
                projector_residual=float(max(
                    np.max(np.abs(frame.projectors[n] - expect_p[order[n]])) for n in range(2)
                )),
            )
        rows.append(row)
    return {"points": rows}


def _trajectory_rows(lift):
    rows, running = [], np.inf
    for step in lift.trajectory:
        running = min(running, step.frame.gap())
        if step.frame.size == 2:
            extra = projector_to_bloch(step.frame.projectors[0]).tolist()
        else:
            extra = step.frame.eigenvalues.tolist()
        rows.append([step.arclength, *step.point.tolist(), *extra, running])
    return rows


def _write_rows(filename, header, rows):
    with open(filename, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(x)) for x in row])


def cmd_lift(run):
    sec = run.section("lift")
    path = run.path(sec.get("path", "C_a"))
    order = Permutation(tuple(sec["order"])) if "order" in sec else None
    initial = frame_at(run.family, path.start, order=order, gap_min=run.gap_min)
    lift = lift_path(run.family, path, initial, gap_min=run.gap_min, record=True)
    result = {
        "path": path.name,
        "permutation": perm_json(lift.permutation),
        "steps_used": lift.steps_used,
        "min_gap_seen": lift.min_gap_seen,
        "min_overlap_seen": lift.min_overlap_seen,
        "final_eigenvalues": lift.final_frame.eigenvalues.tolist(),
    }
    if lift.final_frame.size == 2:
        result["initial_bloch"] = [projector_to_bloch(p).tolist() for p in initial.projectors]
        result["final_bloch"] = [projector_to_bloch(p).tolist() for p in lift.final_frame.projectors]
    if run.write_csv:
        coords = ["Bx", "By"] if run.family.dim == 2 else [f"x{k}" for k in range(run.family.dim)]
        extra = ["a_x", "a_y", "a_z"] if initial.size == 2 else [f"e{k}" for k in range(initial.size)]
        filename = run.csv_path(f"lift_{_slug(path.name)}")
        _write_rows(filename, ["s", *coords, *extra, "min_gap"], _trajectory_rows(lift))
        result["csv"] = filename
    return result


def _slug(name):
    return "".join(c if c.isalnum() or c in "_-" else "p" for c in (name or "path"))


def _check_prediction(run, loop, section, observed, label):
    punctures = [tuple(p) for p in section.get("punctures", run.punctures)]
    generators = C.generators_from(section, run.generators)
    if len(generators) != len(punctures):
        raise ConfigError("need exactly one generator per puncture")
    if not punctures or loop.dim != 2:
        return {}
    windings = run.windings(loop, punctures)
    predicted = predict_monodromy(windings, generators)
    if predicted != observed:
        run.theorem_failures.append(
            f"{label}: observed {observed} but winding prediction {predicted}"
        )
    return {"windings": windings, "predicted": perm_json(predicted)}


def cmd_monodromy(run):
    sec = run.section("monodromy")
    loop = run.path(sec["path"]) if "path" in sec else circle(np.pi, name="circle")
    if not loop.is_closed:
        raise NotClosed(f"path {loop.name!r} is not closed")
    initial = frame_at(run.family, loop.start, gap_min=run.gap_min)
    lift = lift_path(run.family, loop, initial, gap_min=run.gap_min)
    result = {
        "path": loop.name,
        "monodromy": perm_json(lift.permutation),
        "steps_used": lift.steps_used,
        "min_gap_seen": lift.min_gap_seen,
    }
    result.update(_check_prediction(run, loop, sec, lift.permutation, "monodromy"))
    return result


def cmd_compare(run):
    sec = run.section("compare")
    c1 = run.path(sec.get("c1", "C_a"))
    c2 = run.path(sec.get("c2", "C_c"))
    initial = frame_at(run.family, c1.start, gap_min=run.gap_min)
    cmp = compare_paths(run.family, c1, c2, initial, gap_min=run.gap_min)
    if not cmp.agrees:
        run.theorem_failures.append(
            f"composition law: discrepancy {cmp.discrepancy} != loop monodromy {cmp.composite_monodromy}"
        )
    result = {
        "c1": c1.name,
        "c2": c2.name,
        "permutation_c1": perm_json(cmp.lift1.permutation),
        "permutation_c2": perm_json(cmp.lift2.permutation),
        "discrepancy": perm_json(cmp.discrepancy),
        "composite_monodromy": perm_json(cmp.composite_monodromy),
    }
    loop = concat(c1, reverse(c2))
    result.update(_check_prediction(run, loop, sec, cmp.discrepancy, "compare"))
    return result


def cmd_verify(run):
    sec = run.section("verify")
    path = run.path(sec.get("path", "C_a"))
    periods = sec.get("periods", [64, 256, 1024, 4096])
    slot = sec.get("slot", 0)
    threshold = sec.get("max_infidelity", 1e-2)
    initial = frame_at(run.family, path.start, gap_min=run.gap_min)
    scan = convergence_scan(run.family, path, periods, slot=slot, initial=initial)
    last = scan.reports[-1]
    if last.evolved_slot != last.target_slot:
        run.theorem_failures.append(
            f"adiabatic slot mismatch at M={periods[-1]}: evolved {last.evolved_slot}, lift {last.target_slot}"
        )
    if scan.infidelities[-1] >= threshold:
        run.theorem_failures.append(
            f"infidelity {scan.infidelities[-1]:.3e} at M={periods[-1]} is not below {threshold}"
        )
    return {
        "path": path.name,
        "slot": slot,
        "rows": [
            {"periods": m, "infidelity": inf, "evolved_slot": r.evolved_slot, "target_slot": r.target_slot}
            for (m, inf), r in zip(scan.rows(), scan.reports)
        ],
        "strictly_decreasing": scan.strictly_decreasing(),
        "slope": None if np.isnan(scan.slope) else scan.slope,
    }


def sweep(family, generators, seed, loops, max_winding=3, samples=200, r_min=0.6, r_max=5.5,
          gap_min=1e-6):
    """Random-loop campaign: monodromy against the winding prediction."""
    rng = np.random.default_rng(seed)
    rows = []
    for _ in range(loops):
        w = int(rng.integers(-max_winding, max_winding + 1))
        loop = random_loop(rng, w, r_min=r_min, r_max=r_max, n=samples)
        initial = frame_at(family, loop.start, gap_min=gap_min)
        observed = lift_path(family, loop, initial, gap_min=gap_min).permutation
        measured = winding_number(loop)
        predicted = predict_monodromy([measured], generators[:1])
        rows.append({
            "winding": measured,
            "monodromy": perm_json(observed),
            "predicted": perm_json(predicted),
            "match": observed == predicted,
        })
    return rows


def cmd_sweep(run):
    sec = run.section("sweep")
    if run.family.dim != 2 or not run.punctures:
        raise ConfigError("sweep needs a planar model with a puncture at the origin")
    rows = sweep(
        run.family, run.generators, run.seed, sec.get("loops", 100), sec.get("max_winding", 3),
        sec.get("samples", 200), sec.get("r_min", 0.6), sec.get("r_max", 5.5), run.gap_min,
    )
    passed = sum(r["match"] for r in rows)
    if passed != len(rows):
        run.theorem_failures.append(f"sweep: {len(rows) - passed} of {len(rows)} loops mismatch")
    return {"seed": run.seed, "loops": len(rows), "passed": passed, "failed": len(rows) - passed, "rows": rows}


def cmd_presets(run):
    n = 256
    out = {}
    for name, path in preset_paths(n).items():
        out[name] = {"geometry": PRESET_GEOMETRY[name], "samples": path.samples.tolist()}
        if run.write_csv:
            filename = run.csv_path(f"preset_{_slug(name)}")
            _write_rows(filename, ["Bx", "By"], path.samples.tolist())
            out[name]["csv"] = filename
    return out


COMMANDS = {
    "decompose": cmd_decompose,
    "lift": cmd_lift,
    "monodromy": cmd_monodromy,
    "compare": cmd_compare,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "presets": cmd_presets,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="eigenlift", description=__doc__.splitlines()[0])
    parser.add_argument("verb", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="JSON job configuration")
    parser.add_argument("--out", help="directory for the JSON report and CSV files")
    parser.add_argument("--seed", type=int, help="RNG seed (overrides the config)")
    parser.add_argument("--csv", action="store_true", help="write trajectory/preset CSV files")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def run_command(verb, cfg, seed=None, out=None, write_csv=False):
    """Run one verb and return ``(exit_code, report)``."""
    run = Run(cfg, seed=seed, out=out, write_csv=write_csv)
    results = COMMANDS[verb](run)
    report = {
        "schema_version": C.SCHEMA_VERSION,
        "command": verb,
        "status": "THEOREM-VIOLATION" if run.theorem_failures else "ok",
        "results": results,
        "failures": run.theorem_failures,
        "metadata": {
            "config_hash": C.config_hash(cfg),
            "version": __version__,
            "seed": run.seed,
            "preset_geometry": PRESET_GEOMETRY,
        },
    }
    return (EXIT_THEOREM if run.theorem_failures else EXIT_OK), report


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = C.load_config(args.config) if args.config else dict(C.DEFAULT_CONFIG)
        code, report = run_command(args.verb, cfg, args.seed, args.out, args.csv)
    except ConfigError as exc:
        return _fail(EXIT_CONFIG, "config", exc)
    except LiftError as exc:
        return _fail(EXIT_DEGENERACY, "degeneracy", exc)
    except (DomainError, PunctureOnPath, NotClosed) as exc:
        return _fail(EXIT_MODEL, "model", exc)
    except TheoremViolation as exc:
        return _fail(EXIT_THEOREM, "theorem", exc)
    text = json.dumps(report, indent=2)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, f"{args.verb}.json"), "w") as fh:
            fh.write(text + "\n")
    print(text)
    for failure in report["failures"]:
        print(f"THEOREM-VIOLATION: {failure}", file=sys.stderr)
    return code


def _fail(code, kind, exc):
    print(f"error ({kind}): {type(exc).__name__}: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
