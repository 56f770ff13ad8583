"""Command-line entry point binding algebra, state, optics and field.

Commands
--------
  algebra verify   invariant table with max residuals, exit 1 on failure
  algebra export   basis / structure-constant / adjoint files
  state eval       one state as JSON on stdout
  bench run        parse a bench file and emit the camera-plane state
  bench sweep      trajectory CSV over a bench sweep block
  field render     Stokes CSV and PGM images, optional topological charge

Global flags (after the subcommand): --out, --grid, --extent, --waist,
--seed, --tolerance.  Exit codes: 0 success, 1 verification failure,
2 usage or input error.  Every emitted file gets a JSON sidecar naming
the command (without the --out value), the resolved configuration and
the generator-ordering version.  Floats are printed with 17 significant
digits; each command ends with exactly one JSON document on stdout.
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import algebra, field, optics, serialize
from . import state as st

__all__ = ["main"]


class _UsageError(Exception):
    pass


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
    return value


def _grid_size(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"grid size must be >= 2, got {text!r}")
    return value


def _bins(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("bins must be THETA,PHI, e.g. 32,64")
    n_theta, n_phi = (int(p) for p in parts)
    if n_theta < 1 or n_phi < 1:
        raise argparse.ArgumentTypeError("bin counts must be positive")
    return n_theta, n_phi


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--grid", type=_grid_size, default=256,
                        help="pixels per side (default 256)")
    common.add_argument("--extent", type=_positive_float, default=3.0,
                        help="half-width of the grid in waist units")
    common.add_argument("--waist", type=_positive_float, default=1.0,
                        help="mode waist")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized checks")
    common.add_argument("--tolerance", type=_positive_float, default=None,
                        help="override the command's comparison tolerance")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="su6lab",
        description="numerical laboratory for six-mode coherent light",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_common()]

    p_algebra = sub.add_parser("algebra", help="generator basis tools")
    alg = p_algebra.add_subparsers(dest="subcommand", required=True)
    p_verify = alg.add_parser("verify", parents=common,
                              help="run the invariant suite")
    p_verify.add_argument("--inject-non-hermitian", action="store_true",
                          help=argparse.SUPPRESS)
    p_verify.set_defaults(func=cmd_algebra_verify)
    p_export = alg.add_parser("export", parents=common,
                              help="write basis, structure constants, adjoint")
    p_export.set_defaults(func=cmd_algebra_export)

    p_state = sub.add_parser("state", help="state evaluation")
    ste = p_state.add_subparsers(dest="subcommand", required=True)
    p_eval = ste.add_parser("eval", parents=common,
                            help="print one state as JSON")
    p_eval.add_argument("--state", required=True,
                        help="named state or JSON state file")
    p_eval.add_argument("--spheres", action="store_true",
                        help="include the named sphere coordinates")
    p_eval.add_argument("--torus", action="store_true",
                        help="include torus coordinates when applicable")
    p_eval.set_defaults(func=cmd_state_eval)

    p_bench = sub.add_parser("bench", help="optical bench files")
    ben = p_bench.add_subparsers(dest="subcommand", required=True)
    p_run = ben.add_parser("run", parents=common,
                           help="run a bench to the camera plane")
    p_run.add_argument("--bench", required=True,
                       help="bench file path or shipped bench name")
    p_run.set_defaults(func=cmd_bench_run)
    p_sweep = ben.add_parser("sweep", parents=common,
                             help="run a sweep block and write the trajectory")
    p_sweep.add_argument("--bench", required=True,
                         help="bench file path or shipped bench name")
    p_sweep.add_argument("--element", default=None,
                         help="swept element id (default: first sweep block)")
    p_sweep.add_argument("--fields", action="store_true",
                         help="also write a Stokes CSV per frame")
    p_sweep.set_defaults(func=cmd_bench_sweep)

    p_field = sub.add_parser("field", help="transverse field rendering")
    fld = p_field.add_subparsers(dest="subcommand", required=True)
    p_render = fld.add_parser("render", parents=common,
                              help="write Stokes CSV and PGM images")
    p_render.add_argument("--state", required=True,
                          help="named state or JSON state file")
    p_render.add_argument("--skyrmion-number", action="store_true",
                          help="print the topological charge of the texture")
    p_render.add_argument("--bubble", type=_bins, default=None,
                          metavar="THETA,PHI",
                          help="also write a sphere-binned spin map CSV")
    p_render.add_argument("--profile", choices=("linear", "area"),
                          default="linear", help="radial map of the spin bins")
    p_render.set_defaults(func=cmd_field_render)

    return parser


def _emit(obj: dict) -> None:
    sys.stdout.write(serialize.json_text(obj))


def _config(args) -> dict:
    return {
        "grid": args.grid,
        "extent": args.extent,
        "waist": args.waist,
        "seed": args.seed,
        "tolerance": args.tolerance,
    }


def _resolve_state(token: str) -> st.CoherentState:
    if token in st.state_names():
        return st.named_state(token)
    if os.path.exists(token):
        return serialize.load_state(token)
    catalog = ", ".join(st.state_names())
    raise _UsageError(f"unknown state {token!r}; named states: {catalog}")


def _outfile(args, name: str) -> str:
    os.makedirs(args.out, exist_ok=True)
    return os.path.join(args.out, name)


def _sphere_obj(point) -> dict:
    return {
        "coords": [float(c) for c in point.coords],
        "theta": point.theta,
        "phi": point.phi,
    }


# ----------------------------------------------------------------- algebra


def _verify_rows(mats: np.ndarray, labels, seed: int) -> list:
    rows = []
    herm = float(np.max(np.abs(mats - mats.conj().transpose(0, 2, 1))))
    rows.append(("hermiticity", herm, 1e-12))
    rows.append(("tracelessness", float(np.max(np.abs(np.trace(mats, axis1=1, axis2=2)))), 1e-12))
    gram = np.einsum("aij,bji->ab", mats, mats)
    rows.append(("trace_orthonormality",
                 float(np.max(np.abs(gram - 2.0 * np.eye(len(mats))))), 1e-12))
    sizes = (
        sum(1 for l in labels if l.startswith("s") and "o" not in l),
        sum(1 for l in labels if l.startswith("o")),
        sum(1 for l in labels if l.startswith("s") and "o" in l),
    )
    rows.append(("family_sizes_3_8_24", float(sizes != (3, 8, 24)), 0.5))

    comm = np.einsum("lik,mkj->lmij", mats, mats)
    comm = comm - comm.transpose(1, 0, 2, 3)
    g_full = -0.25j * np.einsum("lmij,nji->lmn", comm, mats)
    recon = 2j * np.einsum("lmn,nij->lmij", g_full, mats)
    rows.append(("commutator_closure", float(np.max(np.abs(comm - recon))), 1e-10))
    g = g_full.real
    rows.append(("antisymmetry", float(np.max(np.abs(g + g.transpose(1, 0, 2)))), 1e-12))

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(100):
        l, m, n = rng.integers(0, len(mats), size=3)
        t1 = np.einsum("k,ko->o", g[l, m], g[:, n, :])
        t2 = np.einsum("k,ko->o", g[m, n], g[:, l, :])
        t3 = np.einsum("k,ko->o", g[n, l], g[:, m, :])
        worst = max(worst, float(np.max(np.abs(t1 + t2 + t3))))
    rows.append(("jacobi_identity", worst, 1e-9))

    adj = -g
    lhs = np.einsum("lab,mbc->lmac", adj, adj)
    lhs = lhs - lhs.transpose(1, 0, 2, 3)
    rhs = np.einsum("lmn,nac->lmac", g, adj)
    denom = float(np.sum(rhs * rhs))
    c = float(np.sum(lhs * rhs) / denom) if denom > 0 else float("nan")
    rows.append(("adjoint_closure_constant", abs(c - 1.0), 1e-10))
    rows.append(("adjoint_closure", float(np.max(np.abs(lhs - rhs))), 1e-10))
    return rows


def cmd_algebra_verify(args) -> int:
    basis = algebra.su6_basis()
    mats = np.array(basis.matrices)
    if args.inject_non_hermitian:
        mats[0, 0, 1] += 1e-3
    rows = _verify_rows(mats, basis.labels, args.seed)
    failed = []
    residuals = {}
    for name, resid, tol in rows:
        if args.tolerance is not None:
            tol = args.tolerance
        ok = resid <= tol
        if not ok:
            failed.append(name)
        residuals[name] = resid
        print(f"{'PASS' if ok else 'FAIL'}  {name:26s} "
              f"max residual {resid:.3e}  tolerance {tol:.1e}")
    if failed:
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
    _emit({
        "command": "algebra verify",
        "pass": not failed,
        "failed": failed,
        "residuals": residuals,
        "basis_version": basis.version,
    })
    return 1 if failed else 0


def cmd_algebra_export(args) -> int:
    basis = algebra.su6_basis()
    g = algebra.structure_constants(basis)
    adj = algebra.adjoint_matrices(g)
    config = _config(args)
    files = []

    path = _outfile(args, "basis.json")
    serialize.write_text(path, serialize.json_text({
        "version": basis.version,
        "labels": list(basis.labels),
        "matrices": basis.matrices,
    }))
    serialize.write_sidecar(path, args._argv, config)
    files.append(path)

    entries = serialize.g_tensor_entries(g)
    path = _outfile(args, "g_tensor.json")
    serialize.write_text(path, serialize.json_text({
        "version": basis.version,
        "noise_cutoff": 1e-14,
        "entries": [list(e) for e in entries],
    }))
    serialize.write_sidecar(path, args._argv, config, noise_cutoff=1e-14)
    files.append(path)

    path = _outfile(args, "g_tensor.csv")
    serialize.write_text(path, serialize.g_tensor_csv(g))
    serialize.write_sidecar(path, args._argv, config,
                            columns=["l", "m", "n", "value"],
                            noise_cutoff=1e-14)
    files.append(path)

    path = _outfile(args, "adjoint.json")
    serialize.write_text(path, serialize.json_text({
        "version": adj.version,
        "closure_constant": adj.closure_constant,
        "matrices": adj.matrices,
    }))
    serialize.write_sidecar(path, args._argv, config)
    files.append(path)

    _emit({
        "command": "algebra export",
        "files": [os.path.basename(f) for f in files],
        "nonzero_g_entries": len(entries),
        "closure_constant": adj.closure_constant,
    })
    return 0


# ------------------------------------------------------------------- state


def cmd_state_eval(args) -> int:
    state = _resolve_state(args.state)
    vec = st.all_expectations(state)
    obj = {
        "command": "state eval",
        "state": args.state,
        "alpha": [[a.real, a.imag] for a in state.alpha],
        "n0": state.n0,
        "hypersphere_norm": float(np.linalg.norm(vec)),
    }
    if args.spheres:
        obj["spheres"] = {
            "skyrmion": _sphere_obj(st.skyrmion_sphere(state)),
            "antiskyrmion": _sphere_obj(st.antiskyrmion_sphere(state)),
            "oam": _sphere_obj(st.oam_sphere(state)),
            "polarization": _sphere_obj(st.polarization_sphere(state)),
        }
    if args.torus:
        try:
            torus = st.state_to_torus(state, tol=args.tolerance or 1e-8)
            obj["torus"] = {
                "theta_p": torus.theta_p,
                "phi_t": torus.phi_t,
                "poloidal_radius": torus.poloidal_radius,
            }
        except ValueError:
            obj["torus"] = None
    _emit(obj)
    return 0


# ------------------------------------------------------------------- bench


def _load_bench(token: str) -> optics.BenchDescription:
    if os.path.exists(token):
        path = token
    else:
        path = optics.shipped_bench_path(token)
    with open(path, encoding="utf-8") as fh:
        return optics.parse_bench(fh.read(), source=token)


def _bench_input(bench: optics.BenchDescription):
    if bench.input_state in st.state_names():
        return None
    if os.path.exists(bench.input_state):
        return serialize.load_state(bench.input_state)
    catalog = ", ".join(st.state_names())
    raise _UsageError(
        f"bench input {bench.input_state!r} is neither a named state nor a "
        f"file; named states: {catalog}"
    )


def cmd_bench_run(args) -> int:
    bench = _load_bench(args.bench)
    out_state = optics.run_bench(bench, input_state=_bench_input(bench))
    label = field.classify_texture(out_state, tol_deg=args.tolerance or 1.0)
    obj = {
        "command": "bench run",
        "bench": bench.name,
        "camera_state": serialize.state_to_obj(out_state),
        "classification": label,
        "spheres": {
            "skyrmion": _sphere_obj(st.skyrmion_sphere(out_state)),
            "antiskyrmion": _sphere_obj(st.antiskyrmion_sphere(out_state)),
        },
    }
    path = _outfile(args, "camera_state.json")
    serialize.save_state(path, out_state)
    serialize.write_sidecar(path, args._argv, _config(args),
                            bench=bench.name, classification=label)
    obj["files"] = [os.path.basename(path)]
    _emit(obj)
    return 0


def cmd_bench_sweep(args) -> int:
    bench = _load_bench(args.bench)
    result = optics.run_sweep(bench, sweep=args.element,
                              input_state=_bench_input(bench))
    tol_deg = args.tolerance or 1.0
    labels = [field.classify_texture(f, tol_deg=tol_deg) for f in result.frames]
    config = _config(args)
    files = []

    path = _outfile(args, "trajectory.csv")
    serialize.write_text(path, serialize.trajectory_csv(result.parameters, result.frames))
    serialize.write_sidecar(
        path, args._argv, config,
        bench=bench.name,
        element=result.sweep.element_id,
        record=list(result.sweep.record),
        columns=list(serialize.TRAJECTORY_COLUMNS),
        sphere_units="hbar*N0",
        angle_units={"parameter": "degrees", "theta_p": "radians",
                     "phi_t": "radians"},
    )
    files.append(path)

    if args.fields:
        grid = field.TransverseGrid(size=args.grid, extent=args.extent)
        for k, frame in enumerate(result.frames):
            e_left, e_right = field.synthesize(frame, grid, waist=args.waist)
            sf = field.stokes_fields(e_left, e_right, grid)
            path = _outfile(args, f"stokes_{k:03d}.csv")
            serialize.write_text(path, serialize.field_csv(sf))
            serialize.write_sidecar(
                path, args._argv, config,
                bench=bench.name, frame=k,
                parameter=float(result.parameters[k]),
                columns=list(serialize.FIELD_COLUMNS),
            )
            files.append(path)

    _emit({
        "command": "bench sweep",
        "bench": bench.name,
        "element": result.sweep.element_id,
        "frames": len(result.frames),
        "parameters": [float(p) for p in result.parameters],
        "classifications": labels,
        "files": [os.path.basename(f) for f in files],
    })
    return 0


# ------------------------------------------------------------------- field


def cmd_field_render(args) -> int:
    state = _resolve_state(args.state)
    grid = field.TransverseGrid(size=args.grid, extent=args.extent)
    e_left, e_right = field.synthesize(state, grid, waist=args.waist)
    sf = field.stokes_fields(e_left, e_right, grid)
    config = _config(args)
    files = []

    path = _outfile(args, "stokes.csv")
    serialize.write_text(path, serialize.field_csv(sf))
    serialize.write_sidecar(path, args._argv, config,
                            state=args.state,
                            columns=list(serialize.FIELD_COLUMNS))
    files.append(path)

    for name, channel in (("s0", sf.s0), ("s1", sf.s1),
                          ("s2", sf.s2), ("s3", sf.s3)):
        path = _outfile(args, f"{name}.pgm")
        payload, lo, hi = serialize.pgm_bytes(channel)
        with open(path, "wb") as fh:
            fh.write(payload)
        serialize.write_sidecar(
            path, args._argv, config,
            state=args.state, channel=name,
            scaling={"pixel_0": lo, "pixel_255": hi,
                     "map": "value = pixel_0 + pixel/255*(pixel_255 - pixel_0)"},
            orientation="top row at largest y",
        )
        files.append(path)

    obj = {
        "command": "field render",
        "state": args.state,
        "grid": {"size": grid.size, "extent": grid.extent, "waist": args.waist},
    }

    if args.bubble is not None:
        tm = field.soup_bubble(sf, bins=args.bubble, profile=args.profile)
        path = _outfile(args, "bubble.csv")
        serialize.write_text(path, serialize.texture_map_csv(tm))
        serialize.write_sidecar(
            path, args._argv, config,
            state=args.state,
            mapping={"profile": tm.profile, "disk_radius": tm.disk_radius,
                     "bins": list(tm.bins)},
        )
        files.append(path)
        obj["bubble"] = {"bins": list(tm.bins), "profile": tm.profile,
                         "empty_bins": int((tm.counts == 0).sum())}

    if args.skyrmion_number:
        obj["skyrmion_number"] = {
            "finite_difference": field.skyrmion_number(sf),
            "solid_angle": field.skyrmion_number_solid_angle(sf),
            "disk_radius": grid.extent,
        }

    obj["files"] = [os.path.basename(f) for f in files]
    _emit(obj)
    return 0


# -------------------------------------------------------------------- main


def main(argv: list | None = None) -> int:
    tokens = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(tokens)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._argv = tokens
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except optics.BenchParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
