"""Command-line entry point.

Subcommands: encode, map, order, vqe, permvqe, ising-bench, diag. Every run
writes its results under --output together with a manifest.json; result files
are byte-identical across reruns with the same flags and seed (wall-clock
metadata lives only in the manifest).

Exit codes: 0 success; 1 input, validation, or cap errors; 2 usage errors
(from argument parsing).
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import fermion
from .ansatz import AnsatzSpec
from .entanglement import (
    ENTANGLED_THRESHOLD,
    ConnectivityDistance,
    EntanglementMap,
    mutual_information_map,
    tomography_measurement_count,
)
from .ordering import OrderingResult
from .pauli import PauliSum, ground_state, parse_pauli_file, write_pauli_file
from .simulator import NoiseModel, StateVector
from .vqe import (
    HARTREE_TO_KCAL,
    VqeConfig,
    curve_rows_to_csv,
    delta_e_curve,
    ising_depth_table,
    minimize,
    permvqe,
    prepare_state,
    solve_ordering,
)

_EPILOG = """\
exit codes:
  0  success
  1  input, validation, or size-cap error
  2  usage error
"""


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _finish(outdir: Path, command: str, config: dict, files: dict[str, Path]) -> None:
    manifest = {
        "command": command,
        "config": config,
        "files": sorted(str(p.relative_to(outdir)) for p in files.values()),
        "meta": {"written_at": datetime.now(timezone.utc).isoformat()},
    }
    _write_json(outdir / "manifest.json", manifest)


def _outdir(args) -> Path:
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _is_pauli_file(path: Path) -> bool:
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                return line.startswith("qubits")
    return False


def _load_problem(args) -> tuple[PauliSum, fermion.IntegralSet | None]:
    """Read either a Pauli text file or an integral file (encoded on the fly)."""
    path = Path(args.input)
    if not path.exists():
        raise ValueError(f"input file not found: {path}")
    if _is_pauli_file(path):
        return parse_pauli_file(path), None
    ints = fermion.load_fcidump(path)
    h = fermion.encode(ints, ordering=args.ordering_mode, encoding=args.encoding)
    return h, ints


def _hf_bits(ints: fermion.IntegralSet, ordering_mode: str) -> tuple[int, ...]:
    return fermion.hartree_fock_bitstring(ints.n_electrons, ints.n_spatial, ordering_mode)


def _noise_from_args(args) -> NoiseModel | None:
    if args.noise_p1 is None and args.noise_p2 is None:
        return None
    return NoiseModel(
        p1=args.noise_p1 or 0.0,
        p2=args.noise_p2 or 0.0,
        shots=args.shots,
        seed=args.seed,
    )


def _ansatz_spec(args, n_qubits: int, ints: fermion.IntegralSet | None) -> AnsatzSpec:
    hf_bits = None
    if args.family == "particle_preserving":
        if ints is None:
            raise ValueError(
                "particle_preserving needs electron metadata; supply an integral file"
            )
        hf_bits = _hf_bits(ints, args.ordering_mode)
    return AnsatzSpec(args.family, n_qubits, args.depth, hf_bits=hf_bits, prune=args.prune)


def _echo_config(args, extra: dict | None = None) -> dict:
    config = {
        k: v for k, v in vars(args).items() if k not in ("func", "config") and v is not None
    }
    if extra:
        config.update(extra)
    return config


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_encode(args) -> int:
    outdir = _outdir(args)
    ints = fermion.load_fcidump(args.input)
    h = fermion.encode(ints, ordering=args.ordering_mode, encoding=args.encoding)
    enc = fermion.canonical_encoding(args.encoding)
    pauli_path = outdir / f"{Path(args.input).stem}.{enc}.pauli"
    write_pauli_file(h, pauli_path)
    summary = {
        "config": _echo_config(args),
        "n_qubits": h.n_qubits,
        "n_terms": len(h),
        "constant": h.constant,
        "pauli_file": pauli_path.name,
    }
    result_path = outdir / "encode.json"
    _write_json(result_path, summary)
    _finish(outdir, "encode", summary["config"], {"pauli": pauli_path, "result": result_path})
    print(f"{h.n_qubits} qubits, {len(h)} terms, constant {h.constant:.12f}")
    print(f"wrote {pauli_path}")
    return 0


def _state_for_map(args, h: PauliSum, ints) -> StateVector:
    if args.state == "exact":
        if h.n_qubits > args.dense_cap:
            raise ValueError(
                f"exact mode needs dense diagonalization (n={h.n_qubits} > cap "
                f"{args.dense_cap}); rerun with --state vqe"
            )
        gs = ground_state(h, cap=args.dense_cap)
        return StateVector(h.n_qubits, gs.amplitudes)
    spec = _ansatz_spec(args, h.n_qubits, ints)
    cfg = VqeConfig(ansatz=spec, max_evals=args.max_evals, trials=args.trials, seed=args.seed)
    result = minimize(h, cfg, workers=args.threads)
    return prepare_state(spec, result.params)


def cmd_map(args) -> int:
    outdir = _outdir(args)
    h, ints = _load_problem(args)
    state = _state_for_map(args, h, ints)
    emap = mutual_information_map(state)
    entangled = emap.entangled_qubits(args.threshold)
    payload = {
        "config": _echo_config(args),
        "map": emap.to_json_dict(),
        "entangled_qubits": list(entangled),
        "entangled_count": len(entangled),
        "threshold": args.threshold,
        "tomography_measurements": tomography_measurement_count(emap.n),
    }
    json_path = outdir / "map.json"
    csv_path = outdir / "map.csv"
    _write_json(json_path, payload)
    csv_path.write_text(emap.to_csv_text())
    _finish(outdir, "map", payload["config"], {"json": json_path, "csv": csv_path})
    print(f"{len(entangled)} entangled qubits at threshold {args.threshold}")
    return 0


def cmd_order(args) -> int:
    outdir = _outdir(args)
    data = json.loads(Path(args.input).read_text())
    emap = EntanglementMap.from_json_dict(data.get("map", data))
    conn = ConnectivityDistance(beta=args.beta)
    result: OrderingResult = solve_ordering(emap, conn, args.method)
    payload = {"config": _echo_config(args), "ordering": result.to_json_dict()}
    json_path = outdir / "ordering.json"
    _write_json(json_path, payload)
    _finish(outdir, "order", payload["config"], {"json": json_path})
    print(
        f"method {result.method}: cost {result.cost_before:.6g} -> {result.cost_after:.6g}, "
        f"permutation {list(result.permutation.map)}"
    )
    return 0


def cmd_vqe(args) -> int:
    outdir = _outdir(args)
    h, ints = _load_problem(args)
    spec = _ansatz_spec(args, h.n_qubits, ints)
    cfg = VqeConfig(
        ansatz=spec, max_evals=args.max_evals, trials=args.trials,
        seed=args.seed, optimizer=args.optimizer,
    )
    noise = _noise_from_args(args) if args.noisy_optimization else None
    result = minimize(h, cfg, noise=noise, workers=args.threads)
    payload = {"config": _echo_config(args), "result": result.to_json_dict()}
    if h.n_qubits <= args.dense_cap:
        e_exact = ground_state(h, cap=args.dense_cap).energy
        payload["e_exact"] = e_exact
        payload["delta_e"] = result.energy - e_exact
        payload["delta_e_kcal_mol"] = (result.energy - e_exact) * HARTREE_TO_KCAL
    json_path = outdir / "vqe.json"
    _write_json(json_path, payload)
    _finish(outdir, "vqe", payload["config"], {"json": json_path})
    print(f"energy {result.energy:.10f} (trial {result.trial_index}, {result.evals_used} evals)")
    return 0


def cmd_permvqe(args) -> int:
    outdir = _outdir(args)
    h, ints = _load_problem(args)
    spec = _ansatz_spec(args, h.n_qubits, ints)
    conn = ConnectivityDistance(beta=args.beta)
    cfg = VqeConfig(
        ansatz=spec, max_evals=args.max_evals, trials=args.trials,
        seed=args.seed, optimizer=args.optimizer,
    )
    noise = _noise_from_args(args)
    loop = permvqe(
        h, cfg, conn, args.max_outer,
        noise=noise, noisy_optimization=args.noisy_optimization, workers=args.threads,
    )
    payload = {"config": _echo_config(args), "permvqe": loop.to_json_dict()}

    e_hf = ints.e_hf if ints is not None else None
    rows = []
    if h.n_qubits <= args.dense_cap:
        rows = delta_e_curve(
            h, args.family, [args.depth], "permvqe",
            e_hf=e_hf,
            hf_bits=spec.hf_bits, prune=args.prune,
            trials=args.trials, max_evals=args.max_evals, seed=args.seed, conn=conn,
            max_outer=args.max_outer, noise=noise,
            noisy_optimization=args.noisy_optimization, workers=args.threads,
        )
        payload["curve"] = [r.to_json_dict() for r in rows]
    json_path = outdir / "permvqe.json"
    _write_json(json_path, payload)
    files = {"json": json_path}
    if rows:
        csv_path = outdir / "curve.csv"
        csv_path.write_text(curve_rows_to_csv(rows))
        files["csv"] = csv_path
    _finish(outdir, "permvqe", payload["config"], files)
    print(
        f"final energy {loop.final.energy:.10f} after {len(loop.iterations)} outer iteration(s)"
    )
    return 0


def cmd_ising_bench(args) -> int:
    outdir = _outdir(args)
    if not args.table1:
        raise ValueError("ising-bench currently only supports --table1")
    table = ising_depth_table(
        trials=args.trials, max_evals=args.max_evals, l_max=args.l_max,
        tol=args.tol, seed=args.seed, workers=args.threads,
    )
    payload = {
        "config": _echo_config(args),
        "table": {name: {"unpermuted": u, "permuted": p} for name, (u, p) in table.items()},
    }
    json_path = outdir / "ising_bench.json"
    _write_json(json_path, payload)
    _finish(outdir, "ising-bench", payload["config"], {"json": json_path})
    print(f"{'Hamiltonian':<12}{'unpermuted':>12}{'permuted':>10}")
    for name, (unperm, perm) in table.items():
        print(f"{name:<12}{str(unperm):>12}{str(perm):>10}")
    return 0


def cmd_diag(args) -> int:
    outdir = _outdir(args)
    h, ints = _load_problem(args)
    if h.n_qubits > args.dense_cap:
        raise ValueError(f"n={h.n_qubits} exceeds dense cap {args.dense_cap}")
    gs = ground_state(h, cap=args.dense_cap)
    payload = {
        "config": _echo_config(args),
        "n_qubits": h.n_qubits,
        "n_terms": len(h),
        "energy": gs.energy,
        "degenerate": gs.degenerate,
    }
    if ints is not None:
        payload["e_hf_header"] = ints.e_hf
        payload["e_fci_header"] = ints.e_fci
        payload["e_hf_recomputed"] = fermion.hartree_fock_energy(ints)
    json_path = outdir / "diag.json"
    _write_json(json_path, payload)
    _finish(outdir, "diag", payload["config"], {"json": json_path})
    print(f"ground energy {gs.energy:.12f}" + (" (degenerate)" if gs.degenerate else ""))
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="base RNG seed")
    parser.add_argument("--threads", type=int, default=1, help="worker cap for parallel trials")
    parser.add_argument("--output", default="out", help="output directory")
    parser.add_argument("--format", choices=("json", "csv"), default="json",
                        help="primary output format (JSON is always written)")
    parser.add_argument("--config", default=None,
                        help="JSON file with defaults; explicit flags override it")
    parser.add_argument("--dense-cap", type=int, default=14,
                        help="max qubits for dense diagonalization")


def _add_problem_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", help="Pauli text file or integral file")
    parser.add_argument("--encoding", default="jordan_wigner",
                        help="fermion encoding for integral inputs (jw, bk, parity)")
    parser.add_argument("--ordering-mode", choices=fermion.ORDERINGS, default="blocked",
                        help="spin-orbital ordering for integral inputs")


def _add_ansatz(parser: argparse.ArgumentParser, default_depth: int = 1) -> None:
    parser.add_argument("--family", choices=("ryrz", "ry", "particle_preserving"),
                        default="ryrz")
    parser.add_argument("--depth", type=int, default=default_depth)
    parser.add_argument("--prune", action="store_true",
                        help="drop entanglers pinned to equal occupations")
    parser.add_argument("--trials", type=int, default=5)
    parser.add_argument("--max-evals", type=int, default=10000)
    parser.add_argument("--optimizer", choices=("cobyla", "nelder-mead"), default="cobyla")


def _add_noise(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--noise-p1", type=float, default=None,
                        help="single-qubit gate error probability")
    parser.add_argument("--noise-p2", type=float, default=None,
                        help="two-qubit gate per-qubit error probability")
    parser.add_argument("--shots", type=int, default=10000,
                        help="shots per Pauli-word evaluation")
    parser.add_argument("--noisy-optimization", action="store_true",
                        help="run the optimizer itself on noisy means")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permvqe",
        description="Correlation-informed qubit permutation pipeline",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="encode an integral file into a Pauli file")
    p.add_argument("input", help="integral file")
    p.add_argument("--encoding", default="jordan_wigner")
    p.add_argument("--ordering-mode", choices=fermion.ORDERINGS, default="blocked")
    _add_common(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("map", help="compute the mutual-information entanglement map")
    _add_problem_input(p)
    p.add_argument("--state", choices=("exact", "vqe"), default="exact")
    p.add_argument("--threshold", type=float, default=ENTANGLED_THRESHOLD,
                   help="entangled-qubit counting threshold")
    _add_ansatz(p)
    _add_common(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("order", help="solve the qubit ordering for a map JSON")
    p.add_argument("input", help="map JSON file")
    p.add_argument("--method", choices=("auto", "brute_force", "fiedler"), default="auto")
    p.add_argument("--beta", type=float, default=2.0)
    _add_common(p)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("vqe", help="variational optimization at fixed depth")
    _add_problem_input(p)
    _add_ansatz(p)
    _add_noise(p)
    _add_common(p)
    p.set_defaults(func=cmd_vqe)

    p = sub.add_parser("permvqe", help="full iterative permutation pipeline")
    _add_problem_input(p)
    _add_ansatz(p)
    _add_noise(p)
    p.add_argument("--max-outer", type=int, default=3)
    p.add_argument("--beta", type=float, default=2.0)
    _add_common(p)
    p.set_defaults(func=cmd_permvqe)

    p = sub.add_parser("ising-bench", help="depth benchmark on the 6-qubit models")
    p.add_argument("--table1", action="store_true",
                   help="reproduce the 5x2 unpermuted/permuted depth table")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--max-evals", type=int, default=10000)
    p.add_argument("--l-max", type=int, default=10)
    p.add_argument("--tol", type=float, default=1e-6)
    _add_common(p)
    p.set_defaults(func=cmd_ising_bench)

    p = sub.add_parser("diag", help="dense ground-state diagonalization")
    _add_problem_input(p)
    _add_common(p)
    p.set_defaults(func=cmd_diag)

    return parser


def _apply_config_file(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Config file values become defaults; explicit flags keep priority."""
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config", default=None)
    known, _ = probe.parse_known_args(argv)
    if known.config:
        overrides = json.loads(Path(known.config).read_text())
        if not isinstance(overrides, dict):
            raise ValueError("config file must hold a JSON object")
        for action in parser._subparsers._group_actions:  # noqa: SLF001
            for sub in action.choices.values():
                sub.set_defaults(**{k.replace("-", "_"): v for k, v in overrides.items()})
    return argv


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config_file(parser, argv)
        args = parser.parse_args(argv)
        np.random.seed(args.seed)  # belt and braces; all hot paths use Generator seeds
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
