"""Command-line front end: mesh export, curvature tables, reports.

Subcommands: mesh | classify | verify | list-gallery.  All take a JSON
config (see RunConfig) and write their artifacts under --out.  Exit codes:
0 pass, 1 fail, 2 inconclusive or bad input.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import pathlib
import sys
from dataclasses import dataclass, field

import numpy as np

from .asympt import verify_family
from .classify import INFINITE, order_at, singular_point_report, umbilic_scan
from .edge import EdgeError, EdgeSpec, build_edge, curvature_bundle, \
    fund_forms, lightlike_cutoff
from .gallery import gallery_entry, list_gallery

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    """Parsed run configuration; `raw` keeps the original JSON value so a
    parse -> serialize -> parse round trip is the identity."""
    edge: dict
    domain: dict = field(default_factory=dict)
    grid: tuple = (64, 32)
    outputs: tuple = ("mesh",)
    tolerances: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict, repr=False)

    @staticmethod
    def from_dict(d: dict) -> "RunConfig":
        if "edge" not in d:
            raise ConfigError("config needs an 'edge' section")
        grid = tuple(int(n) for n in d.get("grid", (64, 32)))
        if len(grid) != 2 or min(grid) < 2:
            raise ConfigError(f"grid must be at least 2x2, got {grid}")
        return RunConfig(edge=d["edge"],
                         domain=dict(d.get("domain", {})),
                         grid=grid,
                         outputs=tuple(d.get("outputs", ("mesh",))),
                         tolerances=dict(d.get("tolerances", {})),
                         raw=d)

    def to_dict(self) -> dict:
        return self.raw if self.raw else {
            "edge": self.edge, "domain": self.domain,
            "grid": list(self.grid), "outputs": list(self.outputs),
            "tolerances": self.tolerances}


def load_config(path) -> RunConfig:
    with open(path) as fh:
        return RunConfig.from_dict(json.load(fh))


def build_from_config(cfg: RunConfig):
    """Edge (and gallery entry, when named) from the config's edge section."""
    ed = cfg.edge
    if "gallery" in ed:
        entry = gallery_entry(ed["gallery"], **ed.get("params", {}))
        return entry.edge, entry
    if "spec" in ed:
        spec = EdgeSpec.from_dict(ed["spec"])
        span = tuple(ed.get("s_span", (-1.0, 1.0)))
        return build_edge(spec, s_span=span,
                          validate=bool(ed.get("validate", True))), None
    raise ConfigError("edge section needs either 'gallery' or 'spec'")


def _ranges(cfg: RunConfig, edge):
    s_lo, s_hi = cfg.domain.get("s", (-1.0, 1.0))
    t_lo, t_hi = cfg.domain.get("t", (-0.5, 0.5))
    return (float(s_lo), float(s_hi)), (float(t_lo), float(t_hi))


# ---------------------------------------------------------------- mesh

def write_obj(edge, s_range, t_range, grid, path):
    """ASCII OBJ over the parameter box; vertices row-major in s then t,
    quad faces.  Output depends only on the inputs, so identical configs
    produce identical bytes."""
    n_s, n_t = grid
    ss = np.linspace(s_range[0], s_range[1], n_s)
    ts = np.linspace(t_range[0], t_range[1], n_t)
    lines = [f"# cuspedge mesh {n_s}x{n_t}"]
    for s in ss:
        for t in ts:
            x, y, z = edge.point(float(s), float(t))
            lines.append(f"v {x:.17g} {y:.17g} {z:.17g}")
    for i in range(n_s - 1):
        for j in range(n_t - 1):
            a = i * n_t + j + 1
            b = a + 1
            c = a + n_t + 1
            d = a + n_t
            lines.append(f"f {a} {b} {c} {d}")
    pathlib.Path(path).write_text("\n".join(lines) + "\n")
    return n_s * n_t


def write_curvature_csv(edge, s_range, t_range, grid, path):
    """Curvature table; the singular row t = 0 is skipped and near-lightlike
    points keep their (s, t) row with empty curvature cells."""
    n_s, n_t = grid
    ss = np.linspace(s_range[0], s_range[1], n_s)
    ts = [t for t in np.linspace(t_range[0], t_range[1], n_t) if t != 0.0]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["s", "t", "E", "F", "G", "Delta", "K", "H_abs",
                    "Re lambda1", "Im lambda1", "Re lambda2", "Im lambda2",
                    "causal"])
        for s in ss:
            for t in ts:
                ff = fund_forms(edge, float(s), float(t))
                row = [f"{s:.17g}", f"{t:.17g}", f"{ff.E:.17g}",
                       f"{ff.F:.17g}", f"{ff.G:.17g}", f"{ff.delta:.17g}"]
                if abs(ff.delta) <= lightlike_cutoff(ff):
                    row += [""] * 6 + ["lightlike"]
                else:
                    cb = curvature_bundle(edge, float(s), float(t))
                    causal = "euclidean" if edge.metric.name == "euclidean" \
                        else ("spacelike" if ff.delta > 0 else "timelike")
                    row += [f"{cb.K:.17g}", f"{cb.h_abs:.17g}",
                            f"{cb.lambda1.real:.17g}", f"{cb.lambda1.imag:.17g}",
                            f"{cb.lambda2.real:.17g}", f"{cb.lambda2.imag:.17g}",
                            causal]
                w.writerow(row)


def cmd_mesh(cfg: RunConfig, out_dir, jet_order=None):
    edge, entry = build_from_config(cfg)
    s_range, t_range = _ranges(cfg, edge)
    spec = getattr(edge, "spec", None)
    label = entry.name if entry else (spec.label if spec and spec.label else "edge")
    written = []
    wants = set(cfg.outputs) or {"mesh"}
    if "mesh" in wants:
        p = out_dir / f"{label}.obj"
        n = write_obj(edge, s_range, t_range, cfg.grid, p)
        written.append((str(p), f"{n} vertices"))
    if "curvature_csv" in wants:
        p = out_dir / f"{label}_curvature.csv"
        write_curvature_csv(edge, s_range, t_range, cfg.grid, p)
        written.append((str(p), "curvature table"))
    for path, note in written:
        print(f"wrote {path} ({note})")
    return EXIT_PASS


# ------------------------------------------------------------ classify

def cmd_classify(cfg: RunConfig, out_dir, jet_order=None):
    edge, entry = build_from_config(cfg)
    s_range, t_range = _ranges(cfg, edge)
    n_s = cfg.grid[0]
    allow = bool(cfg.edge.get("allow_estimates",
                              getattr(edge, "spec", None) is not None))
    reports = []
    for s in np.linspace(s_range[0], s_range[1], n_s):
        kw = {} if jet_order is None else {"max_order": int(jet_order)}
        rep = singular_point_report(edge, float(s), allow_estimates=allow)
        if jet_order is not None:
            rep.order = order_at(edge, float(s), **kw)
        reports.append(rep.to_dict())
    doc = {"label": entry.name if entry else "edge",
           "points": reports}
    if cfg.edge.get("umbilic_scan"):
        pts = umbilic_scan(edge, s_range, t_range, grid=(24, 24))
        doc["umbilics"] = [{"s": p.s, "t": p.t, "kind": p.kind.value}
                           for p in pts]
    path = out_dir / f"{doc['label']}_classify.json"
    path.write_text(json.dumps(doc, indent=2) + "\n")
    orders = {r["order"] for r in reports}
    print(f"wrote {path} ({len(reports)} points, orders {sorted(map(str, orders))})")
    return EXIT_PASS


# -------------------------------------------------------------- verify

_FORM_FIELDS = {"E", "F", "G", "delta", "L", "M", "N"}
_BUNDLE_FIELDS = {"K": "K", "H_abs": "h_abs"}


def _verify_gallery(entry, tol_scale, corrupt=None):
    """Check an example's closed-form table on a sample grid.

    `corrupt` names a quantity whose expectation is deliberately spoiled;
    the run must then fail on exactly that name (negative control).
    """
    ss = np.linspace(-0.8, 0.8, 5)
    ts = [0.32, 0.17, -0.21, 0.05, -0.04]
    results = []
    for name, exp in entry.expected.items():
        if not callable(exp.value) or name not in (_FORM_FIELDS | set(_BUNDLE_FIELDS)):
            if name == "order" and exp.kind == "discrete":
                got = order_at(entry.edge, 0.3)
                want = INFINITE if exp.value == "infinite" else exp.value
                if corrupt == name:
                    want = -1
                results.append((name, got == want,
                                f"order {got} vs {want}"))
            continue
        worst = 0.0
        for s in ss:
            for t in ts:
                if name in _FORM_FIELDS:
                    got = getattr(fund_forms(entry.edge, s, t), name)
                else:
                    got = getattr(curvature_bundle(entry.edge, s, t),
                                  _BUNDLE_FIELDS[name])
                want = exp.value(s, t)
                if corrupt == name:
                    want = want * 1.5 + 1.0
                worst = max(worst, abs(got - want) / max(abs(want), 1.0))
        results.append((name, bool(worst <= exp.tol * tol_scale),
                        f"worst rel {worst:.2e} tol {exp.tol * tol_scale:.1e}"))
    return results


def cmd_verify(cfg: RunConfig, out_dir, jet_order=None, tol_scale=1.0,
               corrupt=None):
    edge, entry = build_from_config(cfg)
    doc = {"passed": None, "entries": []}
    inconclusive = False
    if entry is not None:
        results = _verify_gallery(entry, tol_scale, corrupt=corrupt)
        if not results:
            inconclusive = True
        for name, ok, detail in results:
            doc["entries"].append({"quantity": name, "passed": bool(ok),
                                   "detail": detail})
            print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        doc["label"] = entry.name
    else:
        s0 = float(cfg.edge.get("s0", 0.0))
        rep = verify_family(edge, s0, tol=1e-3 * tol_scale)
        for e in rep.entries:
            ok = e.passed and corrupt != e.quantity
            doc["entries"].append({
                "quantity": e.quantity, "predicted": e.predicted,
                "fitted": e.fitted, "rel_error": e.rel_error, "passed": bool(ok)})
            print(("PASS" if ok else "FAIL") + " " + e.line()[5:])
            if not math.isfinite(e.fitted):
                inconclusive = True
        for name, ok in rep.checks.items():
            if corrupt == name:
                ok = False
            doc["entries"].append({"quantity": name, "passed": bool(ok)})
            print(f"{'PASS' if ok else 'FAIL'} {name}")
        doc["label"] = rep.family
    doc["passed"] = all(e["passed"] for e in doc["entries"]) and not inconclusive
    path = out_dir / f"{doc['label']}_verify.json"
    path.write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {path}")
    if inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS if doc["passed"] else EXIT_FAIL


# ----------------------------------------------------------------- main

def make_parser():
    p = argparse.ArgumentParser(
        prog="cuspedge",
        description="generalized cuspidal edges: meshes, curvature tables, "
                    "classification and asymptotic verification")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("mesh", "classify", "verify"):
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True)
        sp.add_argument("--out", default=".")
        sp.add_argument("--tol-scale", type=float, default=1.0)
        sp.add_argument("--jet-order", type=int, default=None)
        if name == "verify":
            sp.add_argument("--corrupt", default=None, metavar="QUANTITY",
                            help="self-test: spoil the named prediction and "
                                 "require the run to fail on it")
    sub.add_parser("list-gallery")
    return p


def main(argv=None):
    args = make_parser().parse_args(argv)
    if args.command == "list-gallery":
        for name in list_gallery():
            print(name)
        return EXIT_PASS
    try:
        cfg = load_config(args.config)
        out_dir = pathlib.Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "mesh":
            return cmd_mesh(cfg, out_dir, jet_order=args.jet_order)
        if args.command == "classify":
            return cmd_classify(cfg, out_dir, jet_order=args.jet_order)
        return cmd_verify(cfg, out_dir, jet_order=args.jet_order,
                          tol_scale=args.tol_scale, corrupt=args.corrupt)
    except (ConfigError, EdgeError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error ({args.command}): {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
