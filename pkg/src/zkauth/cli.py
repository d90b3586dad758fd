"""Command-line front end.

Exit codes: 0 accept/success, 1 reject, 2 usage or key-file error,
3 protocol or transport error.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import threading

from . import keyfile
from .adversary import measure_forgery_rate
from .errors import BadParameters, InvalidKeyPair, WireError, ZKAuthError
from .graphs import default_rng
from .schemes import get_scheme, scheme_for
from .schemes import coloring, graph_iso, modexp, subgraph_iso
from .sigma import DEFAULT_ROUNDS, SchemeId, Verdict, simulate_transcript, verify_record
from .wire import SessionConfig, VerifierServer, connect, prover_endpoint, run_loopback, session_rng

EXIT_ACCEPT = 0
EXIT_REJECT = 1
EXIT_USAGE = 2
EXIT_PROTOCOL = 3

SCHEME_NAMES = [sid.cli_name for sid in SchemeId]


class UsageError(Exception):
    pass


def _rng(seed: str | None, label: str) -> random.Random:
    return default_rng(None if seed is None else f"{seed}/{label}")


def _verdict_code(verdict: Verdict) -> int:
    return EXIT_ACCEPT if verdict is Verdict.ACCEPT else EXIT_REJECT


def parse_hostport(text: str, default_host: str = "127.0.0.1") -> tuple[str, int]:
    host, sep, port = text.rpartition(":")
    if not sep:
        host = default_host
    try:
        value = int(port)
    except ValueError:
        raise UsageError(f"bad port in {text!r}") from None
    if not 0 <= value <= 65535:
        raise UsageError(f"port out of range in {text!r}")
    return host.strip("[]") or default_host, value


def cmd_keygen(args) -> int:
    rng = _rng(args.seed, "keygen")
    sid = SchemeId.from_cli_name(args.scheme)
    if sid is SchemeId.GRAPH_ISO:
        kp = graph_iso.keygen(args.n, rng, args.edge_p)
    elif sid is SchemeId.SUBGRAPH_ISO:
        kp = subgraph_iso.keygen(args.n, args.m or 2 * args.n, rng, args.edge_p)
    elif sid is SchemeId.COLORING:
        kp = coloring.keygen(args.n, args.k, rng)
    else:
        kp = modexp.keygen(args.p, rng)
    created = keyfile.timestamp(fixed=args.seed is not None)
    pub, key = keyfile.write_keypair(args.out, kp, created)
    print(f"wrote {pub} and {key}")
    return EXIT_ACCEPT


def _config(args, scheme_id=None) -> SessionConfig:
    return SessionConfig(scheme_id=scheme_id, rounds=args.rounds, timeout_ms=args.timeout)


def _scheme(sid: SchemeId, args):
    if sid is SchemeId.SUBGRAPH_ISO and getattr(args, "slack", None) is not None:
        return get_scheme(sid, slack=args.slack)
    return get_scheme(sid)


def cmd_prove(args) -> int:
    kp = keyfile.load_private(args.key)
    sid = scheme_for(kp)
    host, port = parse_hostport(args.verifier)
    stream = connect(host, port, timeout=_config(args).timeout)
    try:
        verdict = prover_endpoint(stream, _scheme(sid, args), kp, _config(args), _rng(args.seed, "prove"))
    finally:
        stream.close()
    print(verdict.value)
    return _verdict_code(verdict)


def cmd_verify(args) -> int:
    sid, statement = keyfile.load_public(args.pub)
    host, port = parse_hostport(args.listen, default_host="127.0.0.1")
    done = threading.Event()
    results: list = []

    def on_result(address, result) -> None:
        if isinstance(result, Exception):
            print(f"{address[0]}:{address[1]} error: {result}", flush=True)
        else:
            print(f"{address[0]}:{address[1]} {result.verdict.value}", flush=True)
        results.append(result)
        if args.once:
            done.set()

    server = VerifierServer((host, port), _config(args, sid), statement, args.seed, on_result)
    bound_host, bound_port = server.server_address[:2]
    print(f"listening on {bound_host}:{bound_port}", flush=True)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        if args.once:
            done.wait()
        else:
            thread.join()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()
        server.server_close()
    if not results:
        return EXIT_ACCEPT
    last = results[-1]
    if isinstance(last, Exception):
        return EXIT_PROTOCOL
    return _verdict_code(last.verdict)


def cmd_session(args) -> int:
    kp = keyfile.load_private(args.key)
    sid = scheme_for(kp)
    result = run_loopback(
        _scheme(sid, args),
        kp,
        _config(args, sid),
        _rng(args.seed, "prover"),
        session_rng(args.seed, 0),
        statement=kp.statement,
    )
    error = result.verifier_error or result.prover_error
    if error is not None:
        raise error
    verdict = result.transcript.verdict
    print(f"{sid.cli_name}: {verdict.value} after {args.rounds} round(s)")
    return _verdict_code(verdict)


def cmd_attack(args) -> int:
    sid, statement = keyfile.load_public(args.pub)
    report = measure_forgery_rate(get_scheme(sid), statement, args.rounds, args.trials, _rng(args.seed, "attack"))
    print(report.to_json() if args.json else report.summary())
    return EXIT_ACCEPT


def cmd_simulate(args) -> int:
    sid, statement = keyfile.load_public(args.pub)
    scheme = get_scheme(sid)
    record = simulate_transcript(scheme, statement, args.challenge, _rng(args.seed, "simulate"))
    ok = verify_record(scheme, statement, record)
    print(json.dumps({
        "scheme": sid.cli_name,
        "challenge": record.challenge,
        "commitment": record.commitment.hex(),
        "response": record.response.hex(),
        "verifies": ok,
    }, indent=2))
    return EXIT_ACCEPT if ok else EXIT_REJECT


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _probability(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError("must lie in [0, 1]")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zkauth", description="Zero-knowledge identification toolkit.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log session events to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def session_flags(p) -> None:
        p.add_argument("--rounds", type=_positive, default=DEFAULT_ROUNDS)
        p.add_argument("--seed", help="make the run reproducible")
        p.add_argument("--timeout", type=int, default=5000, help="per-message timeout in ms (0 disables)")

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--scheme", choices=SCHEME_NAMES, required=True)
    p.add_argument("--n", type=_positive, default=12, help="graph size (the small graph for subgraph-iso)")
    p.add_argument("--m", type=_positive, help="host graph size for subgraph-iso (default 2n)")
    p.add_argument("--k", type=_positive, default=3, help="color count for coloring")
    p.add_argument("--p", type=int, default=1009, help="prime modulus for modexp")
    p.add_argument("--edge-p", type=_probability, default=0.5, help="edge probability for random graphs")
    p.add_argument("--seed")
    p.add_argument("--out", required=True, help="writes OUT.pub and OUT.key")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("prove", help="authenticate to a remote verifier")
    p.add_argument("--key", required=True)
    p.add_argument("--verifier", required=True, metavar="HOST:PORT")
    p.add_argument("--slack", type=int, help="padding vertices per subgraph-iso commitment")
    session_flags(p)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("verify", help="serve verifier sessions for a pinned public key")
    p.add_argument("--pub", required=True)
    p.add_argument("--listen", required=True, metavar="[HOST:]PORT")
    p.add_argument("--once", action="store_true", help="exit after one session with its verdict")
    session_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("session", help="prove and verify over an in-memory loopback")
    p.add_argument("--key", required=True)
    p.add_argument("--slack", type=int)
    session_flags(p)
    p.set_defaults(func=cmd_session)

    p = sub.add_parser("attack", help="measure the challenge-guessing forger")
    p.add_argument("--pub", required=True)
    p.add_argument("--rounds", type=_positive, default=1)
    p.add_argument("--trials", type=_positive, default=10000)
    p.add_argument("--seed")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("simulate", help="print a simulated round that verifies")
    p.add_argument("--pub", required=True)
    p.add_argument("--challenge", type=int, choices=(0, 1), required=True)
    p.add_argument("--seed")
    p.set_defaults(func=cmd_simulate)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_ACCEPT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, keyfile.KeyFileError, InvalidKeyPair, BadParameters) as exc:
        print(f"zkauth: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (WireError, OSError) as exc:
        print(f"zkauth: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL
    except ZKAuthError as exc:
        print(f"zkauth: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL


def main() -> None:
    sys.exit(run())
