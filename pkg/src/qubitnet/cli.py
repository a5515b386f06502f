"""Command line client for the simulator.

Every subcommand reads a flat key=value config file, runs the matching
operation and prints a short report. By default the operation runs in
process; --server http://host:port sends the identical request to a
running service instance instead. Files only ever move on the client
side: snapshots are read here and shipped as text, and returned snapshot
text is written here, atomically.

Exit codes: 0 success, 1 bad configuration or domain error, 2 I/O
failure, 3 snapshot version mismatch.
"""
from __future__ import annotations

import argparse
import os
import sys

import httpx

from .config import ConfigError, RunConfig, parse_config
from .service import handlers
from .service.models import (
    AnalyzeRequest,
    AnalyzeResponse,
    ComplexModel,
    DetectRequest,
    DetectResponse,
    DominanceEntryModel,
    EvolveRequest,
    EvolveResponse,
    PrepareRequest,
    PrepareResponse,
    StateSpecModel,
)
from .snapshots import SnapshotError, SnapshotVersionError, write_text_atomic

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_VERSION = 3

_HANDLERS = {
    "evolve": (handlers.handle_evolve, EvolveResponse),
    "analyze": (handlers.handle_analyze, AnalyzeResponse),
    "prepare": (handlers.handle_prepare, PrepareResponse),
    "detect": (handlers.handle_detect, DetectResponse),
}


class _RemoteError(Exception):
    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


def _call(server: str | None, operation: str, request) -> object:
    handler, response_model = _HANDLERS[operation]
    if server is None:
        return handler(request)
    with httpx.Client(base_url=server, timeout=300.0) as client:
        response = client.post(f"/v1/{operation}", json=request.model_dump())
    if response.status_code == 400:
        detail = response.json().get("detail", {})
        if isinstance(detail, dict):
            raise _RemoteError(
                detail.get("code", "config"), detail.get("message", "bad request")
            )
        raise _RemoteError("config", str(detail))
    response.raise_for_status()
    return response_model.model_validate(response.json())


def _read_text(path: str) -> str:
    with open(path, "r") as handle:
        return handle.read()


def _load_config(path: str) -> RunConfig:
    return parse_config(_read_text(path))


def _format_head(head: list[DominanceEntryModel]) -> str:
    lines = ["top components:"]
    for entry in head:
        lines.append(
            f"  {entry.index:>8d}  |a| {entry.magnitude:.12f}  "
            f"re {entry.re:+.12f}  im {entry.im:+.12f}"
        )
    return "\n".join(lines)


def _snapshot_path(base: str, sweep: int, multiple: bool) -> str:
    if not multiple:
        return base
    stem, extension = os.path.splitext(base)
    return f"{stem}-{sweep:05d}{extension}"


def _cmd_evolve(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    out = args.out or config.out
    request = EvolveRequest(
        n=config.side,
        gate=config.gate_kind.value,
        theta=config.theta,
        steps=config.steps,
        renormalize=config.renormalize,
        snapshot_every=config.snapshot_every,
        initial=StateSpecModel.from_spec(config.initial),
    )
    response = _call(args.server, "evolve", request)
    print(
        f"n {response.n}  gate {response.gate}  theta {response.theta:g}  "
        f"sweeps {response.steps}"
    )
    print(f"final norm {response.final_norm:.15f}")
    print(_format_head(response.head))
    if out:
        multiple = config.snapshot_every > 0
        for snapshot in response.snapshots:
            path = _snapshot_path(out, snapshot.sweep, multiple)
            write_text_atomic(path, snapshot.text)
            print(f"wrote {path}")
    return EXIT_OK


def _cmd_analyze(args: argparse.Namespace) -> int:
    texts = [_read_text(path) for path in args.snapshots]
    request = AnalyzeRequest(
        kind=args.kind, snapshots=texts, k=args.k, ratio=args.ratio, delta=args.delta
    )
    response = _call(args.server, "analyze", request)
    if response.kind == "dominance":
        print(_format_head(response.head))
    elif response.kind == "backproject":
        print(_format_head(response.head))
        print("dominant indices:", " ".join(str(i) for i in response.dominant_indices))
        print(f"back-projection: {response.back_projected}")
    elif response.kind == "uniformity":
        print(f"uniformity deviation: {response.uniformity_deviation:.6e}")
    else:
        if response.period is None:
            print(f"period: none (best overlap {response.recurrence_fidelity:.9f})")
        else:
            print(f"period: {response.period}")
            print(f"recurrence fidelity: {response.recurrence_fidelity:.12f}")
    return EXIT_OK


def _cmd_prepare(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    if config.x is None or config.x_prime is None:
        raise ConfigError("prepare needs both x and x_prime", key="x")
    out = args.out or config.out
    if not out:
        raise ConfigError("prepare needs an output path (key 'out' or --out)", key="out")
    request = PrepareRequest(
        n=config.side,
        a=ComplexModel(re=config.a.real, im=config.a.imag),
        b=ComplexModel(re=config.b.real, im=config.b.imag),
        x=StateSpecModel.from_spec(config.x),
        x_prime=StateSpecModel.from_spec(config.x_prime),
    )
    response = _call(args.server, "prepare", request)
    write_text_atomic(out, response.snapshot.text)
    print(f"prepared state norm {response.norm:.15f}")
    print(_format_head(response.head))
    print(f"wrote {out}")
    return EXIT_OK


def _cmd_detect(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    if config.target is None and config.target_snapshot is None:
        raise ConfigError("detect needs target or target_snapshot", key="target")
    seed = args.seed if args.seed is not None else config.seed
    request = DetectRequest(
        n=config.side,
        target=(
            StateSpecModel.from_spec(config.target)
            if config.target is not None
            else None
        ),
        target_snapshot=(
            _read_text(config.target_snapshot)
            if config.target_snapshot is not None
            else None
        ),
        iterations=config.iterations,
        trials=config.trials,
        seed=seed,
    )
    response = _call(args.server, "detect", request)
    print(f"dim {response.dim}  iterations {response.iterations}")
    print(f"expected probability {response.expected_probability:.9f}  (closed form)")
    print(f"reached probability  {response.target_probability:.9f}")
    print(
        f"hit frequency        {response.frequency:.9f}  "
        f"({response.trials} trials, seed {response.seed})"
    )
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qubitnet", description="entangled qubit lattice simulator"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add_common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--server", help="service URL; default runs in process")

    evolve = commands.add_parser("evolve", help="run sweeps from a config file")
    evolve.add_argument("--config", required=True, help="key=value config path")
    evolve.add_argument("--out", help="snapshot output path (overrides config)")
    add_common(evolve)
    evolve.set_defaults(run=_cmd_evolve)

    analyze = commands.add_parser("analyze", help="inspect written snapshots")
    analyze.add_argument(
        "kind", choices=("dominance", "backproject", "period", "uniformity")
    )
    analyze.add_argument("snapshots", nargs="+", help="snapshot file paths")
    analyze.add_argument("--k", type=int, default=8, help="dominance head size")
    analyze.add_argument(
        "--ratio", type=float, default=0.8, help="dominant set magnitude ratio"
    )
    analyze.add_argument(
        "--delta", type=float, default=1e-6, help="recurrence tolerance"
    )
    add_common(analyze)
    analyze.set_defaults(run=_cmd_analyze)

    prepare = commands.add_parser("prepare", help="superpose two states")
    prepare.add_argument("--config", required=True)
    prepare.add_argument("--out", help="snapshot output path (overrides config)")
    add_common(prepare)
    prepare.set_defaults(run=_cmd_prepare)

    detect = commands.add_parser("detect", help="search for a target state")
    detect.add_argument("--config", required=True)
    detect.add_argument("--seed", type=int, help="overrides the config seed")
    add_common(detect)
    detect.set_defaults(run=_cmd_detect)

    serve = commands.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(run=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except SnapshotVersionError as error:
        print(f"snapshot version error: {error}", file=sys.stderr)
        return EXIT_VERSION
    except ConfigError as error:
        print(f"config error: {error}", file=sys.stderr)
        return EXIT_CONFIG
    except _RemoteError as error:
        print(f"server rejected the request: {error}", file=sys.stderr)
        return EXIT_VERSION if error.code == "version" else EXIT_CONFIG
    except (SnapshotError, ValueError) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as error:
        print(f"i/o error: {error}", file=sys.stderr)
        return EXIT_IO
    except httpx.HTTPError as error:
        print(f"transport error: {error}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
