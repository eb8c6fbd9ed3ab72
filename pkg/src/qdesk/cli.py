"""Command-line surface: a thin client over the service handlers.

Each subcommand builds the same pydantic request the HTTP endpoint accepts
and dispatches it in-process (or to a remote server with --url), printing
the Report envelope as canonical JSON.  Angle flags accept "0.8pi" literals
so the usual pi-multiples stay exact.

Exit codes: 0 ok, 2 QASM parse error, 3 execution error, 4 unknown
algorithm, 5 invalid parameters.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import urllib.request

from pydantic import ValidationError

from . import __version__
from .qasm import QasmError
from .service import handlers
from .service import schemas as S

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_EXEC = 3
EXIT_UNKNOWN = 4
EXIT_PARAMS = 5


def parse_angle(text: str) -> float:
    """Parse '0.8pi', 'pi/2', '-pi', or a plain float in radians."""
    t = text.strip().lower().replace(" ", "")
    try:
        if t.endswith("pi"):
            head = t[:-2]
            if head in ("", "+"):
                return math.pi
            if head == "-":
                return -math.pi
            return float(head) * math.pi
        if "pi/" in t:
            num, den = t.split("pi/")
            sign = -1.0 if num.startswith("-") else 1.0
            return sign * math.pi / float(den)
        return float(t)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad angle {text!r}") from exc


def _emit(report, args) -> int:
    payload = report.model_dump() if hasattr(report, "model_dump") else report
    if getattr(args, "output", "json") == "text":
        print(f"{payload['name']} (qdesk {payload['version']})")
        for key, value in payload["result"].items():
            print(f"  {key}: {value}")
    else:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    return EXIT_OK


def _dispatch(name: str, request, args) -> int:
    if args.url:
        url = args.url.rstrip("/")
        path = "/run" if name == "run" else f"/algorithms/{name}"
        data = request.model_dump_json().encode()
        http_req = urllib.request.Request(
            url + path, data=data, headers={"Content-Type": "application/json"}
        )
        with urllib.request.urlopen(http_req) as resp:
            return _emit(json.loads(resp.read()), args)
    if name == "run":
        return _emit(handlers.handle_run(request), args)
    _, fn = handlers.HANDLERS[name]
    return _emit(fn(request), args)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qdesk", description=__doc__)
    p.add_argument("--version", action="version", version=f"qdesk {__version__}")
    sub = p.add_subparsers(dest="command")

    def common(sp, seed=True, shots=None):
        sp.add_argument("--output", choices=["text", "json"], default="json")
        sp.add_argument("--url", default=None, help="send to a running qdesk server")
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        if shots is not None:
            sp.add_argument("--shots", type=int, default=shots)

    sp = sub.add_parser("run", help="execute a QASM file")
    sp.add_argument("qasm_path")
    sp.add_argument("--mode", choices=["statevector", "sampled"], default="sampled")
    sp.add_argument("--noise-sigma", type=float, default=0.0)
    sp.add_argument("--noise-bitflip", type=float, default=0.0)
    sp.add_argument("--noise-idle", type=float, default=0.0)
    common(sp, shots=1000)

    sp = sub.add_parser("grover", help="search for one marked bit-string")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--target", type=int, required=True)
    sp.add_argument("--iterations", type=int, default=None)
    sp.add_argument("--ceiling-formula", action="store_true",
                    help="use the ceil(pi sqrt(N)/4) iteration count")
    common(sp)

    sp = sub.add_parser("bv", help="recover a hidden string in one query")
    sp.add_argument("--hidden", required=True)
    common(sp)

    sp = sub.add_parser("shor", help="factor an integer")
    sp.add_argument("--n", type=int, required=True)
    common(sp)

    sp = sub.add_parser("hhl", help="2x2 linear-system expectation values")
    sp.add_argument("--b", required=True, help="comma-separated 2-vector, e.g. '1,0'")
    sp.add_argument("--observable", choices=["x", "y", "z"], required=True)
    sp.add_argument("--shots", type=int, default=None)
    common(sp)

    sp = sub.add_parser("qaoa", help="MaxCut QAOA at fixed angles")
    sp.add_argument("--graph", choices=list(handlers._GRAPHS), default="triangle")
    sp.add_argument("--gamma", type=parse_angle, nargs="+", required=True)
    sp.add_argument("--beta", type=parse_angle, nargs="+", required=True)
    sp.add_argument("--shots", type=int, default=None)
    common(sp)

    sp = sub.add_parser("qaoa-grid", help="exhaustive QAOA angle search")
    sp.add_argument("--graph", choices=list(handlers._GRAPHS), default="triangle")
    sp.add_argument("--rounds", type=int, default=1)
    sp.add_argument("--resolution", type=parse_angle, required=True)
    common(sp, seed=False)

    sp = sub.add_parser("walk", help="discrete-time walk on a cycle")
    sp.add_argument("--nodes", type=int, default=4)
    sp.add_argument("--steps", type=int, default=1)
    sp.add_argument("--start", type=int, default=0)
    sp.add_argument("--shots", type=int, default=None)
    common(sp)

    sp = sub.add_parser("vqe", help="transverse-Ising variational ground state")
    sp.add_argument("--n-spins", type=int, default=4)
    sp.add_argument("--h", type=float, default=1.0)
    sp.add_argument("--ansatz", choices=["product", "entangled"], default="product")
    sp.add_argument("--open-chain", action="store_true")
    sp.add_argument("--shots", type=int, default=None)
    common(sp)

    sp = sub.add_parser("ising-exact", help="dense ground-state energy")
    sp.add_argument("--n-spins", type=int, default=4)
    sp.add_argument("--h", type=float, default=1.0)
    sp.add_argument("--open-chain", action="store_true")
    common(sp, seed=False)

    sp = sub.add_parser("schrodinger", help="split-operator wave evolution")
    sp.add_argument("--amps", required=True,
                    help="comma-separated real amplitudes, e.g. '0,1,1,0'")
    sp.add_argument("--phi", type=parse_angle, default=0.0)
    sp.add_argument("--steps", type=int, default=1)
    common(sp, seed=False)

    sp = sub.add_parser("minfind", help="Grover-accelerated minimum finding")
    sp.add_argument("--values", required=True, help="comma-separated keys")
    common(sp)

    sp = sub.add_parser("layered", help="BFS layers by Grover neighbor search")
    sp.add_argument("--edges", required=True, help="semicolon list 'a,b;b,c'")
    sp.add_argument("--n-nodes", type=int, required=True)
    sp.add_argument("--source", type=int, default=0)
    common(sp, seed=False)

    sp = sub.add_parser("rep-element", help="Hadamard-test representation element")
    sp.add_argument("--group", choices=["cyclic", "s3"], default="cyclic")
    sp.add_argument("--order", type=int, default=4)
    sp.add_argument("--element", type=int, required=True)
    sp.add_argument("--superposition", default="0", help="comma list of kets")
    sp.add_argument("--part", choices=["real", "imaginary"], default="real")
    sp.add_argument("--shots", type=int, default=None)
    common(sp)

    sp = sub.add_parser("pca", help="two-feature PCA via the purity circuit")
    sp.add_argument("--x1", required=True, help="comma-separated feature values")
    sp.add_argument("--x2", required=True)
    sp.add_argument("--shots", type=int, default=None)
    common(sp)

    sp = sub.add_parser("potts", help="Potts partition function + QFT fragment")
    sp.add_argument("--edges", required=True, help="semicolon list 'a,b,J;...'")
    sp.add_argument("--n-vertices", type=int, required=True)
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--beta", type=float, default=1.0)
    sp.add_argument("--fragment-shots", type=int, default=None)
    common(sp)

    sp = sub.add_parser("prep", help="synthesize a state-preparation circuit")
    sp.add_argument("--amps", required=True,
                    help="JSON list of [re, im] pairs (2, 4, or 16 entries)")
    common(sp, seed=False)

    sp = sub.add_parser("synth", help="3-CNOT synthesis of a 4x4 unitary")
    sp.add_argument("--matrix", required=True, help="JSON 4x4 of [re, im] pairs")
    common(sp, seed=False)

    sp = sub.add_parser("tomography", help="maximum-likelihood state estimation")
    sp.add_argument("--state", choices=["plus", "bell"], default="plus")
    sp.add_argument("--qasm-path", default=None,
                    help="estimate the output state of a QASM circuit")
    sp.add_argument("--record-path", default=None,
                    help="JSON record {basis: {label: count}} to estimate from")
    sp.add_argument("--shots", type=int, default=None)
    common(sp)

    sp = sub.add_parser("qec", help="repetition-code noise comparison")
    sp.add_argument("--noise-kind", choices=["bitflip", "rotation", "both"],
                    default="bitflip")
    sp.add_argument("--p", type=float, default=0.1)
    sp.add_argument("--sigma", type=float, default=0.1)
    sp.add_argument("--idle-gates", type=int, default=16)
    common(sp, shots=100000)

    sp = sub.add_parser("serve", help="start the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)

    return p


def _csv_floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip() != ""]


def _build_request(args) -> tuple[str, object]:
    cmd = args.command
    if cmd == "run":
        with open(args.qasm_path, "r", encoding="utf-8") as fh:
            text = fh.read()
        noise = None
        if args.noise_sigma or args.noise_bitflip or args.noise_idle:
            noise = S.NoiseSpec(over_rotation_sigma=args.noise_sigma,
                                bitflip_p=args.noise_bitflip,
                                idle_flip_p=args.noise_idle)
        return cmd, S.RunRequest(qasm=text, shots=args.shots, seed=args.seed,
                                 mode=args.mode, noise=noise)
    if cmd == "grover":
        return cmd, S.GroverRequest(n=args.n, target=args.target, seed=args.seed,
                                    iterations=args.iterations,
                                    ceiling_formula=args.ceiling_formula)
    if cmd == "bv":
        return cmd, S.BvRequest(hidden=args.hidden, seed=args.seed)
    if cmd == "shor":
        return cmd, S.ShorRequest(n=args.n, seed=args.seed)
    if cmd == "hhl":
        return cmd, S.HhlRequest(b=_csv_floats(args.b), observable=args.observable,
                                 seed=args.seed, shots=args.shots)
    if cmd == "qaoa":
        return cmd, S.QaoaRequest(graph=args.graph, gamma=args.gamma, beta=args.beta,
                                  seed=args.seed, shots=args.shots)
    if cmd == "qaoa-grid":
        return cmd, S.QaoaGridRequest(graph=args.graph, rounds=args.rounds,
                                      resolution=args.resolution)
    if cmd == "walk":
        return cmd, S.WalkRequest(nodes=args.nodes, steps=args.steps, start=args.start,
                                  seed=args.seed, shots=args.shots)
    if cmd == "vqe":
        return cmd, S.VqeRequest(n_spins=args.n_spins, h=args.h,
                                 periodic=not args.open_chain, ansatz=args.ansatz,
                                 seed=args.seed, shots=args.shots)
    if cmd == "ising-exact":
        return cmd, S.IsingExactRequest(n_spins=args.n_spins, h=args.h,
                                        periodic=not args.open_chain)
    if cmd == "schrodinger":
        amps = [(x, 0.0) for x in _csv_floats(args.amps)]
        norm = math.sqrt(sum(re * re for re, _ in amps))
        amps = [(re / norm, 0.0) for re, _ in amps]
        return cmd, S.SchrodingerRequest(amplitudes=amps, phi=args.phi, steps=args.steps)
    if cmd == "minfind":
        return cmd, S.MinFindRequest(values=_csv_floats(args.values), seed=args.seed)
    if cmd == "layered":
        n = args.n_nodes
        adj = [[0] * n for _ in range(n)]
        for part in args.edges.split(";"):
            a, b = (int(x) for x in part.split(","))
            adj[a][b] = adj[b][a] = 1
        return cmd, S.LayeredRequest(adjacency=adj, source=args.source)
    if cmd == "rep-element":
        kets = [int(x) for x in args.superposition.split(",")]
        return cmd, S.RepElementRequest(group=args.group, order=args.order,
                                        element=args.element, superposition=kets,
                                        part=args.part, seed=args.seed, shots=args.shots)
    if cmd == "pca":
        return cmd, S.PcaRequest(x1=_csv_floats(args.x1), x2=_csv_floats(args.x2),
                                 seed=args.seed, shots=args.shots)
    if cmd == "potts":
        edges = []
        for part in args.edges.split(";"):
            bits = part.split(",")
            edges.append((int(bits[0]), int(bits[1]),
                          float(bits[2]) if len(bits) > 2 else 1.0))
        return cmd, S.PottsRequest(n_vertices=args.n_vertices, edges=edges, q=args.q,
                                   beta=args.beta, fragment_shots=args.fragment_shots,
                                   seed=args.seed)
    if cmd == "prep":
        return cmd, S.PrepStateRequest(amplitudes=json.loads(args.amps))
    if cmd == "synth":
        return cmd, S.SynthGateRequest(matrix=json.loads(args.matrix))
    if cmd == "tomography":
        qasm_text = record = None
        if args.qasm_path:
            with open(args.qasm_path, "r", encoding="utf-8") as fh:
                qasm_text = fh.read()
        if args.record_path:
            with open(args.record_path, "r", encoding="utf-8") as fh:
                record = json.load(fh)
        return cmd, S.TomographyRequest(state=args.state, qasm=qasm_text,
                                        record=record, shots=args.shots,
                                        seed=args.seed)
    if cmd == "qec":
        return cmd, S.QecRequest(noise_kind=args.noise_kind, p=args.p,
                                 sigma=args.sigma, idle_gates=args.idle_gates,
                                 shots=args.shots, seed=args.seed)
    raise KeyError(cmd)


KNOWN_COMMANDS = frozenset(
    {"run", "serve"} | set(handlers.HANDLERS)
)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    head = next((a for a in argv if not a.startswith("-")), None)
    if head is not None and head not in KNOWN_COMMANDS:
        print(f"unknown algorithm {head!r}", file=sys.stderr)
        return EXIT_UNKNOWN
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_UNKNOWN
    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK
    if args.command != "run" and args.command not in handlers.HANDLERS:
        print(f"unknown algorithm {args.command!r}", file=sys.stderr)
        return EXIT_UNKNOWN
    try:
        name, request = _build_request(args)
    except (ValidationError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    try:
        return _dispatch(name, request, args)
    except QasmError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"execution error: {exc}", file=sys.stderr)
        return EXIT_EXEC


if __name__ == "__main__":
    sys.exit(main())
